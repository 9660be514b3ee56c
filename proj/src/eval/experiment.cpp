#include "nbf/eval/experiment.hpp"

#include "nbf/error.hpp"

namespace nbf {

MeanMetrics average(const std::vector<Metrics>& reps) {
  MeanMetrics mean;
  if (reps.empty()) return mean;
  for (const Metrics& m : reps) {
    mean.precision += m.precision;
    mean.recall += m.recall;
    mean.f1 += m.f1;
  }
  const double n = static_cast<double>(reps.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f1 /= n;
  return mean;
}

ExperimentReport run_experiment(const KindData& data, Setup setup, const Vocabulary& vocab,
                                const ExperimentConfig& config,
                                const RepetitionObserver& observer) {
  if (config.repetitions < 1) throw Error("at least one repetition required");
  if (data.buggy.empty() || data.non_buggy.empty()) {
    throw Error("kind " + data.kind + " needs both buggy and non-buggy examples");
  }

  ExperimentReport report;
  report.kind = data.kind;
  report.setup = setup;
  report.repetitions = config.repetitions;
  report.buggy = data.buggy.size();
  report.non_buggy = data.non_buggy.size();

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t seed = config.base_seed + rep;
    try {
      const DatasetSplit split = compose(setup, data.buggy, data.non_buggy, vocab, seed, config.compose);
      TrainConfig tc;
      tc.epochs = config.epochs;
      tc.seed = seed;
      tc.adam = config.adam;
      const TrainResult trained = train(split, config.model, tc);

      std::vector<int> predicted;
      std::vector<int> labels;
      for (const Prediction& p : classify(trained.params, config.model, split.validation)) {
        predicted.push_back(p.label);
      }
      for (const auto& s : split.validation) labels.push_back(s.label);
      report.per_rep.push_back(metrics(predicted, labels));
      if (observer) observer(rep, split, trained);
    } catch (const std::exception& e) {
      throw Error(data.kind + "/" + std::string(to_string(setup)) + " repetition " +
                  std::to_string(rep) + ": " + e.what());
    }
  }
  report.mean = average(report.per_rep);
  return report;
}

}  // namespace nbf
