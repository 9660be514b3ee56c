#include "nbf/nn/trainer.hpp"

#include <algorithm>

#include "nbf/error.hpp"
#include "nbf/rng.hpp"

namespace nbf {

std::size_t batch_size_for(std::size_t train_size) {
  const std::size_t tenth = (train_size + 9) / 10;
  return std::clamp<std::size_t>(tenth, 1, 300);
}

TrainResult train(const std::vector<EncodedSequence>& train_set, const ModelConfig& model,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  model.validate();
  if (config.epochs < 1) throw Error("epochs must be at least 1");
  if (train_set.empty()) throw Error("training set is empty");
  const bool has_pos = std::any_of(train_set.begin(), train_set.end(),
                                   [](const auto& s) { return s.label == 1; });
  const bool has_neg = std::any_of(train_set.begin(), train_set.end(),
                                   [](const auto& s) { return s.label == 0; });
  if (!has_pos || !has_neg) throw Error("training set holds a single class");

  TrainResult result;
  result.params = init_params(model, mix_seed(config.seed, 0));
  AdamState adam = make_adam_state(result.params, config.adam);
  Rng rng(mix_seed(config.seed, 1));

  const std::size_t batch = batch_size_for(train_set.size());
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<EncodedSequence> minibatch;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double weighted_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(start + batch, order.size());
      minibatch.clear();
      for (std::size_t k = start; k < end; ++k) minibatch.push_back(train_set[order[k]]);
      const auto lg = loss_and_grads(result.params, model, minibatch, Mode::train, rng.next_u64());
      adam_step(result.params, lg.grads, adam);
      weighted_loss += lg.loss * static_cast<double>(end - start);
    }
    const double mean = weighted_loss / static_cast<double>(order.size());
    result.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  return result;
}

TrainResult train(const DatasetSplit& split, const ModelConfig& model, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  return train(split.train, model, config, on_epoch);
}

}  // namespace nbf
