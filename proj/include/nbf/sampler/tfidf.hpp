#pragma once

#include <string>
#include <vector>

#include "nbf/ingest/methods.hpp"
#include "nbf/vocab/vocabulary.hpp"

namespace nbf {

struct TfIdfVector {
  std::vector<double> weights;  // one slot per retained lexeme
  std::string method_id;
};

// Per-lexeme occurrence counts of a window; UNK and PAD positions are ignored.
std::vector<double> freq_vector(const MethodSequence& seq, const Vocabulary& vocab);
std::vector<double> freq_vector(const EncodedSequence& seq, const Vocabulary& vocab);

// Smooth-idf weighting, count * (ln((1+N)/(1+df)) + 1), followed by L2
// normalisation of every non-zero row.
std::vector<std::vector<double>> tfidf(const std::vector<std::vector<double>>& counts);

std::vector<TfIdfVector> tfidf(const std::vector<std::vector<double>>& counts,
                               const std::vector<std::string>& method_ids);

// Cosine similarity; 0 when either side is the zero vector.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace nbf
