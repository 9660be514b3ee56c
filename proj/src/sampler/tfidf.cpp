#include "nbf/sampler/tfidf.hpp"

#include <cmath>

#include "nbf/error.hpp"

namespace nbf {

std::vector<double> freq_vector(const MethodSequence& seq, const Vocabulary& vocab) {
  std::vector<double> counts(vocab.size_base(), 0.0);
  for (std::size_t i = 0; i < seq.real_length(); ++i) {
    const TokenIndex idx = vocab.index_of(seq.lexeme(i));
    if (idx < vocab.unk()) counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  return counts;
}

std::vector<double> freq_vector(const EncodedSequence& seq, const Vocabulary& vocab) {
  std::vector<double> counts(vocab.size_base(), 0.0);
  for (TokenIndex idx : seq.indices) {
    if (idx >= 0 && idx < vocab.unk()) counts[static_cast<std::size_t>(idx)] += 1.0;
  }
  return counts;
}

std::vector<std::vector<double>> tfidf(const std::vector<std::vector<double>>& counts) {
  if (counts.empty()) throw Error("tfidf needs at least one vector");
  const std::size_t dim = counts.front().size();
  std::vector<double> df(dim, 0.0);
  for (const auto& row : counts) {
    if (row.size() != dim) throw Error("tfidf vectors differ in dimension");
    for (std::size_t j = 0; j < dim; ++j) {
      if (row[j] > 0.0) df[j] += 1.0;
    }
  }
  const double n = static_cast<double>(counts.size());
  std::vector<double> idf(dim);
  for (std::size_t j = 0; j < dim; ++j) idf[j] = std::log((1.0 + n) / (1.0 + df[j])) + 1.0;

  std::vector<std::vector<double>> out;
  out.reserve(counts.size());
  for (const auto& row : counts) {
    std::vector<double> w(dim);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      w[j] = row[j] * idf[j];
      norm2 += w[j] * w[j];
    }
    if (norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& x : w) x *= inv;
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<TfIdfVector> tfidf(const std::vector<std::vector<double>>& counts,
                               const std::vector<std::string>& method_ids) {
  if (counts.size() != method_ids.size()) throw Error("tfidf: ids and vectors differ in length");
  auto weights = tfidf(counts);
  std::vector<TfIdfVector> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out[i].weights = std::move(weights[i]);
    out[i].method_id = method_ids[i];
  }
  return out;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    dot += a[j] * b[j];
    na += a[j] * a[j];
    nb += b[j] * b[j];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace nbf
