#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nbf/ingest/methods.hpp"

namespace nbf {

using TokenIndex = std::int32_t;

// Frequency-ranked lexeme table. Indices 0..size_base-1 are the retained
// lexemes in rank order, followed by UNK and PAD.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> entries, double coverage);

  const std::vector<std::string>& entries() const { return entries_; }
  std::size_t size_base() const { return entries_.size(); }
  std::size_t dimension() const { return entries_.size() + 2; }
  TokenIndex unk() const { return static_cast<TokenIndex>(entries_.size()); }
  TokenIndex pad() const { return static_cast<TokenIndex>(entries_.size() + 1); }
  double coverage() const { return coverage_; }

  // Rank of a retained lexeme, UNK otherwise; the PAD lexeme maps to PAD.
  TokenIndex index_of(std::string_view lexeme) const;

  // FNV-1a over the ordered entries; ties checkpoints to a vocabulary.
  std::string fingerprint() const;

  std::string to_json() const;
  static Vocabulary from_json(std::string_view text);

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, TokenIndex> rank_;
  double coverage_ = 0.0;
};

// Keeps the `size` most frequent lexemes (ties: lexicographically smaller
// first) and records the fraction of token occurrences they cover.
Vocabulary build_vocabulary(std::span<const std::vector<Token>> corpus, std::size_t size);
Vocabulary build_vocabulary(const std::vector<RawMethod>& corpus, std::size_t size);

std::vector<double> one_hot(std::string_view lexeme, const Vocabulary& vocab);

struct EncodedSequence {
  std::vector<TokenIndex> indices;
  int label = 0;
  std::string method_id;
};

EncodedSequence encode(const MethodSequence& seq, const Vocabulary& vocab, int label = 0);

}  // namespace nbf
