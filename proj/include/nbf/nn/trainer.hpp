#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nbf/nn/adam.hpp"
#include "nbf/nn/model.hpp"
#include "nbf/sampler/compose.hpp"

namespace nbf {

struct TrainConfig {
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
  AdamConfig adam;
};

// ceil(10% of the training set), at least 1 and at most 300.
std::size_t batch_size_for(std::size_t train_size);

struct TrainResult {
  ModelParams params;
  std::vector<double> epoch_loss;  // mean training loss per epoch
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

// Throws when the training set is empty or holds a single class.
TrainResult train(const std::vector<EncodedSequence>& train_set, const ModelConfig& model,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});
TrainResult train(const DatasetSplit& split, const ModelConfig& model, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

}  // namespace nbf
