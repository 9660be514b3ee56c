#pragma once

#include <string>
#include <string_view>

#include "nbf/nn/model.hpp"

namespace nbf {

struct Checkpoint {
  ModelConfig config;
  ModelParams params;
  std::string vocab_fingerprint;
};

inline constexpr int kCheckpointVersion = 1;

std::string checkpoint_to_json(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_json(std::string_view text);

}  // namespace nbf
