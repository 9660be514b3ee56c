#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nbf/eval/metrics.hpp"
#include "nbf/nn/trainer.hpp"
#include "nbf/sampler/compose.hpp"

namespace nbf {

struct MeanMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ExperimentReport {
  std::string kind;
  Setup setup = Setup::SS;
  std::size_t repetitions = 0;
  std::vector<Metrics> per_rep;
  MeanMetrics mean;
  std::size_t buggy = 0;
  std::size_t non_buggy = 0;
};

struct ExperimentConfig {
  ModelConfig model;
  std::size_t epochs = 10;
  AdamConfig adam;
  ComposeOptions compose;
  std::size_t repetitions = 5;
  std::uint64_t base_seed = 0;
};

// Encoded examples of one warning kind.
struct KindData {
  std::string kind;
  std::vector<EncodedSequence> buggy;
  std::vector<EncodedSequence> non_buggy;
};

// Hook observing each repetition's split and trained model (e.g. to persist
// them).
using RepetitionObserver =
    std::function<void(std::size_t rep, const DatasetSplit& split, const TrainResult& trained)>;

// Repetition i composes its split with seed base_seed + i, trains on it and
// scores the validation part. Errors are rethrown with the repetition index.
ExperimentReport run_experiment(const KindData& data, Setup setup, const Vocabulary& vocab,
                                const ExperimentConfig& config,
                                const RepetitionObserver& observer = {});

MeanMetrics average(const std::vector<Metrics>& reps);

}  // namespace nbf
