#include "nbf/sampler/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nbf/error.hpp"
#include "nbf/rng.hpp"

namespace nbf {

LshIndex::LshIndex(const std::vector<TfIdfVector>& vectors, std::size_t tables,
                   std::size_t bits, std::uint64_t seed)
    : bits_(bits), vectors_(vectors) {
  if (tables == 0 || bits == 0 || bits > 64) {
    throw Error("LSH needs at least one table and between 1 and 64 bits");
  }
  dimension_ = vectors_.empty() ? 0 : vectors_.front().weights.size();
  for (const TfIdfVector& v : vectors_) {
    if (v.weights.size() != dimension_) {
      throw Error("LSH index: dimension mismatch for " + v.method_id);
    }
  }

  Rng rng(seed);
  planes_.resize(tables);
  for (auto& table : planes_) {
    table.resize(bits);
    for (auto& plane : table) {
      plane.resize(dimension_);
      double norm2 = 0.0;
      for (double& x : plane) {
        x = rng.normal();
        norm2 += x * x;
      }
      const double inv = norm2 > 0.0 ? 1.0 / std::sqrt(norm2) : 0.0;
      for (double& x : plane) x *= inv;
    }
  }

  buckets_.resize(tables);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t t = 0; t < tables; ++t) {
      buckets_[t][signature(vectors_[i].weights, t)].push_back(i);
    }
  }
}

std::uint64_t LshIndex::signature(const std::vector<double>& v, std::size_t table) const {
  if (v.size() != dimension_) throw Error("LSH query: dimension mismatch");
  std::uint64_t sig = 0;
  const auto& planes = planes_[table];
  for (std::size_t b = 0; b < bits_; ++b) {
    double dot = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) dot += v[j] * planes[b][j];
    if (dot > 0.0) sig |= std::uint64_t{1} << b;
  }
  return sig;
}

std::vector<std::size_t> LshIndex::candidates(const std::vector<double>& v) const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < planes_.size(); ++t) {
    const auto it = buckets_[t].find(signature(v, t));
    if (it != buckets_[t].end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long LshIndex::nearest(const std::vector<double>& v) const {
  long best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t c : candidates(v)) {
    const double d = 1.0 - cosine_similarity(v, vectors_[c].weights);
    if (best < 0 || d < best_dist ||
        (d == best_dist && vectors_[c].method_id < vectors_[static_cast<std::size_t>(best)].method_id)) {
      best = static_cast<long>(c);
      best_dist = d;
    }
  }
  return best;
}

namespace {

// Nearest unselected position among `pool_positions`; npos when all taken.
std::size_t pick_nearest(const std::vector<double>& query,
                         const std::vector<TfIdfVector>& pool,
                         const std::vector<std::size_t>& pool_positions,
                         const std::vector<bool>& taken) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t p : pool_positions) {
    if (taken[p]) continue;
    const double d = 1.0 - cosine_similarity(query, pool[p].weights);
    if (best == std::numeric_limits<std::size_t>::max() || d < best_dist ||
        (d == best_dist && pool[p].method_id < pool[best].method_id)) {
      best = p;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace

std::vector<std::string> ann_select(const std::vector<TfIdfVector>& buggy,
                                    const std::vector<TfIdfVector>& non_buggy,
                                    const LshIndex& index, const LshParams& params) {
  if (non_buggy.size() < buggy.size()) {
    throw Error("cannot balance: " + std::to_string(buggy.size()) + " buggy but only " +
                std::to_string(non_buggy.size()) + " non-buggy examples");
  }
  if (index.size() != non_buggy.size()) {
    throw Error("ann_select: index was not built over the non-buggy pool");
  }

  std::vector<std::size_t> all(non_buggy.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const bool exhaustive = non_buggy.size() <= params.exhaustive_threshold;

  std::vector<bool> taken(non_buggy.size(), false);
  std::vector<std::string> out;
  out.reserve(buggy.size());
  for (const TfIdfVector& q : buggy) {
    std::size_t pick = std::numeric_limits<std::size_t>::max();
    if (!exhaustive) pick = pick_nearest(q.weights, non_buggy, index.candidates(q.weights), taken);
    if (pick == std::numeric_limits<std::size_t>::max()) {
      pick = pick_nearest(q.weights, non_buggy, all, taken);
    }
    taken[pick] = true;
    out.push_back(non_buggy[pick].method_id);
  }
  return out;
}

}  // namespace nbf
