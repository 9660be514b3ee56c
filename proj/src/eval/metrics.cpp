#include "nbf/eval/metrics.hpp"

#include "nbf/error.hpp"

namespace nbf {

Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
  Metrics m{tp, fp, tn, fn};
  m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  const double sum = m.precision + m.recall;
  m.f1 = sum == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / sum;
  return m;
}

Metrics metrics(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.empty()) throw Error("metrics of an empty prediction set");
  if (predictions.size() != labels.size()) throw Error("predictions and labels differ in length");
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if ((labels[i] != 0 && labels[i] != 1) || (predictions[i] != 0 && predictions[i] != 1)) {
      throw Error("predictions and labels must be 0 or 1");
    }
    if (predictions[i] == 1) {
      (labels[i] == 1 ? tp : fp)++;
    } else {
      (labels[i] == 1 ? fn : tn)++;
    }
  }
  return from_counts(tp, fp, tn, fn);
}

}  // namespace nbf
