#include "nbf/vocab/vocabulary.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"
#include "nbf/hash.hpp"

namespace nbf {

Vocabulary::Vocabulary(std::vector<std::string> entries, double coverage)
    : entries_(std::move(entries)), coverage_(coverage) {
  rank_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] == kPadLexeme) throw Error("vocabulary may not contain the PAD lexeme");
    if (!rank_.emplace(entries_[i], static_cast<TokenIndex>(i)).second) {
      throw Error("duplicate vocabulary entry " + entries_[i]);
    }
  }
}

TokenIndex Vocabulary::index_of(std::string_view lexeme) const {
  if (lexeme == kPadLexeme) return pad();
  const auto it = rank_.find(std::string(lexeme));
  return it == rank_.end() ? unk() : it->second;
}

std::string Vocabulary::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  for (const std::string& e : entries_) {
    h = fnv1a64(e, h);
    h = fnv1a64(std::string_view("\0", 1), h);
  }
  return to_hex(h);
}

std::string Vocabulary::to_json() const {
  const nlohmann::json j{{"entries", entries_}, {"size_base", entries_.size()}, {"coverage", coverage_}};
  return j.dump(1);
}

Vocabulary Vocabulary::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  Vocabulary v(j.at("entries").get<std::vector<std::string>>(), j.at("coverage").get<double>());
  if (j.at("size_base").get<std::size_t>() != v.size_base()) {
    throw Error("vocabulary size_base does not match entries");
  }
  return v;
}

Vocabulary build_vocabulary(std::span<const std::vector<Token>> corpus, std::size_t size) {
  if (size < 1) throw Error("vocabulary size must be at least 1");
  if (corpus.empty()) throw Error("cannot build a vocabulary from an empty corpus");

  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& tokens : corpus) {
    for (const Token& t : tokens) {
      ++counts[t.lexeme];
      ++total;
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  // counts is already lexicographic, so a stable sort on frequency settles ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > size) ranked.resize(size);

  std::vector<std::string> entries;
  std::size_t covered = 0;
  for (auto& [lexeme, count] : ranked) {
    entries.push_back(std::move(lexeme));
    covered += count;
  }
  const double coverage = total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
  return Vocabulary(std::move(entries), coverage);
}

Vocabulary build_vocabulary(const std::vector<RawMethod>& corpus, std::size_t size) {
  std::vector<std::vector<Token>> lists;
  lists.reserve(corpus.size());
  for (const RawMethod& m : corpus) lists.push_back(m.tokens);
  return build_vocabulary(std::span<const std::vector<Token>>(lists), size);
}

std::vector<double> one_hot(std::string_view lexeme, const Vocabulary& vocab) {
  std::vector<double> v(vocab.dimension(), 0.0);
  v[static_cast<std::size_t>(vocab.index_of(lexeme))] = 1.0;
  return v;
}

EncodedSequence encode(const MethodSequence& seq, const Vocabulary& vocab, int label) {
  EncodedSequence out;
  out.method_id = seq.method_id();
  out.label = label;
  out.indices.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    out.indices.push_back(seq.is_pad(i) ? vocab.pad() : vocab.index_of(seq.lexeme(i)));
  }
  return out;
}

}  // namespace nbf
