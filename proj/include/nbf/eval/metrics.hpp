#pragma once

#include <cstddef>
#include <span>

namespace nbf {

// Confusion counts for the buggy (1) class. Undefined ratios are 0.
struct Metrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

Metrics metrics(std::span<const int> predictions, std::span<const int> labels);

// Fills precision, recall and f1 from the counts.
Metrics from_counts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn);

}  // namespace nbf
