#pragma once

#include <cstdint>

#include "nbf/nn/model.hpp"

namespace nbf {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  ModelParams first_moment;
  ModelParams second_moment;
  std::uint64_t step = 0;
  AdamConfig config;
};

AdamState make_adam_state(const ModelParams& params, const AdamConfig& config = {});

// Bias-corrected Adam update; increments state.step.
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state);

}  // namespace nbf
