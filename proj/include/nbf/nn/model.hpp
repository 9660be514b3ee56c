#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nbf/vocab/vocabulary.hpp"

namespace nbf {

struct ModelConfig {
  std::size_t vocab_dim = 1002;  // |V| + 2
  std::size_t embed_dim = 50;
  std::size_t hidden_dim = 50;  // per direction
  std::size_t seq_len = 50;
  double dropout_rate = 0.2;
  double threshold = 0.5;

  void validate() const;
};

// One LSTM direction. Gate blocks are stacked row-wise in the order
// input, forget, output, candidate: W is 4h x e, U is 4h x h, b has 4h rows.
struct LstmWeights {
  Eigen::MatrixXd W;
  Eigen::MatrixXd U;
  Eigen::VectorXd b;
};

struct ModelParams {
  Eigen::MatrixXd embedding;  // vocab_dim x e, one row per token index
  LstmWeights forward;
  LstmWeights backward;
  Eigen::VectorXd w_out;  // 2h, forward half first
  Eigen::VectorXd b_out;  // single entry

  static constexpr std::size_t kTensorCount = 9;
  static constexpr std::array<std::string_view, kTensorCount> kTensorNames = {
      "embedding", "forward.W", "forward.U", "forward.b", "backward.W",
      "backward.U", "backward.b", "w_out",   "b_out"};

  // Flat views of every trainable tensor, in kTensorNames order.
  std::array<std::span<double>, kTensorCount> tensors();
  std::array<std::span<const double>, kTensorCount> tensors() const;

  ModelParams zeros_like() const;
};

enum class Mode { train, infer };

// Uniform(-r, r) weights with r = sqrt(6 / (fan_in + fan_out)) per gate
// matrix; forget-gate biases 1, all other biases 0.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

// Concatenated final hidden states [forward; backward] before dropout,
// 2h x batch.
Eigen::MatrixXd hidden_states(const ModelParams& params, std::span<const EncodedSequence> batch);

// Per-sequence probability of the positive (buggy) class. In train mode an
// inverted dropout mask drawn from `seed` is applied to the hidden states.
std::vector<double> forward(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, Mode mode,
                            std::uint64_t seed = 0);

inline constexpr double kProbabilityClamp = 1e-7;

struct LossAndGrads {
  double loss = 0.0;
  ModelParams grads;
};

// Mean binary cross-entropy and its exact gradient (BPTT through both
// directions, the dropout mask and the embedding rows).
LossAndGrads loss_and_grads(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, std::span<const int> labels,
                            Mode mode = Mode::train, std::uint64_t seed = 0);
LossAndGrads loss_and_grads(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, Mode mode = Mode::train,
                            std::uint64_t seed = 0);

double binary_cross_entropy(std::span<const double> probabilities, std::span<const int> labels);

struct Prediction {
  int label = 0;
  double probability = 0.0;
};

// 1 iff probability >= threshold.
Prediction classify(double probability, double threshold);
Prediction classify(const ModelParams& params, const ModelConfig& config,
                    const EncodedSequence& seq);
std::vector<Prediction> classify(const ModelParams& params, const ModelConfig& config,
                                 std::span<const EncodedSequence> batch);

}  // namespace nbf
