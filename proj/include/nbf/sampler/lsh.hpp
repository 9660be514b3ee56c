#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nbf/sampler/tfidf.hpp"

namespace nbf {

struct LshParams {
  std::size_t tables = 8;
  std::size_t bits = 16;
  // Pools up to this size are searched exhaustively.
  std::size_t exhaustive_threshold = 10000;
};

// Random-hyperplane index for cosine similarity. Each of the T tables hashes
// a vector to the B sign bits of its projections on B random unit vectors.
class LshIndex {
 public:
  LshIndex(const std::vector<TfIdfVector>& vectors, std::size_t tables, std::size_t bits,
           std::uint64_t seed);

  std::size_t dimension() const { return dimension_; }
  std::size_t tables() const { return planes_.size(); }
  std::size_t bits() const { return bits_; }
  std::size_t size() const { return vectors_.size(); }
  const TfIdfVector& vector(std::size_t i) const { return vectors_[i]; }

  std::uint64_t signature(const std::vector<double>& v, std::size_t table) const;

  // Positions of indexed vectors sharing a bucket with `v` in any table,
  // ascending and without duplicates.
  std::vector<std::size_t> candidates(const std::vector<double>& v) const;

  // Indexed position nearest to `v` among its candidates, ties by method_id;
  // -1 when no candidate exists.
  long nearest(const std::vector<double>& v) const;

 private:
  std::size_t dimension_ = 0;
  std::size_t bits_ = 0;
  std::vector<TfIdfVector> vectors_;
  // planes_[table][bit] is a unit vector of length dimension_.
  std::vector<std::vector<std::vector<double>>> planes_;
  std::vector<std::map<std::uint64_t, std::vector<std::size_t>>> buckets_;
};

// Picks one distinct non-buggy neighbour per buggy vector, greedily in the
// order given. Pools no larger than params.exhaustive_threshold are scanned
// exhaustively; larger pools use the LSH candidate union re-ranked by exact
// cosine distance, with an exhaustive scan when the candidates run out.
// Throws when there are fewer non-buggy than buggy vectors.
std::vector<std::string> ann_select(const std::vector<TfIdfVector>& buggy,
                                    const std::vector<TfIdfVector>& non_buggy,
                                    const LshIndex& index, const LshParams& params);

}  // namespace nbf
