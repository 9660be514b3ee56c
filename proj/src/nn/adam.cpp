#include "nbf/nn/adam.hpp"

#include <cmath>

#include "nbf/error.hpp"

namespace nbf {

AdamState make_adam_state(const ModelParams& params, const AdamConfig& config) {
  AdamState state;
  state.first_moment = params.zeros_like();
  state.second_moment = params.zeros_like();
  state.config = config;
  return state;
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state) {
  auto p = params.tensors();
  const auto g = grads.tensors();
  auto m = state.first_moment.tensors();
  auto v = state.second_moment.tensors();

  const AdamConfig& c = state.config;
  const double t = static_cast<double>(state.step + 1);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  for (std::size_t k = 0; k < ModelParams::kTensorCount; ++k) {
    if (p[k].size() != g[k].size() || p[k].size() != m[k].size()) {
      throw Error("adam_step: gradient shape differs from parameter shape");
    }
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      const double gi = g[k][i];
      m[k][i] = c.beta1 * m[k][i] + (1.0 - c.beta1) * gi;
      v[k][i] = c.beta2 * v[k][i] + (1.0 - c.beta2) * gi * gi;
      const double m_hat = m[k][i] / correction1;
      const double v_hat = v[k][i] / correction2;
      p[k][i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
  ++state.step;
}

}  // namespace nbf
