#include "nbf/nn/model.hpp"

#include <algorithm>
#include <cmath>

#include "nbf/error.hpp"
#include "nbf/rng.hpp"

namespace nbf {

namespace {

using Mat = Eigen::MatrixXd;
using Arr = Eigen::ArrayXXd;

Arr sigmoid(const Arr& z) { return (1.0 + (-z).exp()).inverse(); }

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::size_t hidden_of(const ModelParams& p) { return static_cast<std::size_t>(p.forward.U.cols()); }

// Embeds every position of every sequence. Column t*B + j holds position t
// of sequence j, so each time step is a contiguous block of B columns.
Mat embed(const ModelParams& params, std::span<const EncodedSequence> batch, std::size_t n) {
  const std::size_t batch_size = batch.size();
  const auto vocab_dim = static_cast<TokenIndex>(params.embedding.rows());
  Mat x(params.embedding.cols(), static_cast<Eigen::Index>(n * batch_size));
  for (std::size_t j = 0; j < batch_size; ++j) {
    const auto& idx = batch[j].indices;
    if (idx.size() != n) throw Error("sequences in a batch must share one length");
    for (std::size_t t = 0; t < n; ++t) {
      if (idx[t] < 0 || idx[t] >= vocab_dim) {
        throw Error("token index " + std::to_string(idx[t]) + " out of range in " +
                    batch[j].method_id);
      }
      x.col(static_cast<Eigen::Index>(t * batch_size + j)) = params.embedding.row(idx[t]).transpose();
    }
  }
  return x;
}

// Activations of one direction, stored by sequence position (not by step).
struct DirectionPass {
  Mat gates;   // 4h x nB: i, f, o (sigmoid) and g (tanh)
  Mat c_prev;  // h x nB: cell state entering the step
  Mat h_prev;  // h x nB: hidden state entering the step
  Mat tanh_c;  // h x nB
  Mat h_final;
};

DirectionPass run_direction(const LstmWeights& w, const Mat& x, std::size_t n, std::size_t batch,
                            bool reverse) {
  const Eigen::Index h = w.U.cols();
  const Eigen::Index b = static_cast<Eigen::Index>(batch);
  const Eigen::Index cols = x.cols();
  const Mat wx = w.W * x;

  DirectionPass pass;
  pass.gates.resize(4 * h, cols);
  pass.c_prev.resize(h, cols);
  pass.h_prev.resize(h, cols);
  pass.tanh_c.resize(h, cols);

  Mat hid = Mat::Zero(h, b);
  Arr cell = Arr::Zero(h, b);
  Mat z(4 * h, b);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t pos = reverse ? n - 1 - s : s;
    const Eigen::Index col = static_cast<Eigen::Index>(pos) * b;
    pass.h_prev.middleCols(col, b) = hid;
    pass.c_prev.middleCols(col, b) = cell.matrix();

    z.noalias() = w.U * hid;
    z += wx.middleCols(col, b);
    z.colwise() += w.b;

    const Arr i = sigmoid(z.topRows(h).array());
    const Arr f = sigmoid(z.middleRows(h, h).array());
    const Arr o = sigmoid(z.middleRows(2 * h, h).array());
    const Arr g = z.bottomRows(h).array().tanh();
    cell = f * cell + i * g;
    const Arr tc = cell.tanh();
    hid = (o * tc).matrix();

    auto gates = pass.gates.middleCols(col, b);
    gates.topRows(h) = i.matrix();
    gates.middleRows(h, h) = f.matrix();
    gates.middleRows(2 * h, h) = o.matrix();
    gates.bottomRows(h) = g.matrix();
    pass.tanh_c.middleCols(col, b) = tc.matrix();
  }
  pass.h_final = hid;
  return pass;
}

// Accumulates weight gradients into `grad` and input gradients into `dx`.
void backprop_direction(const LstmWeights& w, const DirectionPass& pass, const Mat& x,
                        const Mat& dh_final, std::size_t n, std::size_t batch, bool reverse,
                        LstmWeights& grad, Mat& dx) {
  const Eigen::Index h = w.U.cols();
  const Eigen::Index b = static_cast<Eigen::Index>(batch);
  Mat dz_all(4 * h, x.cols());
  Mat dh = dh_final;
  Arr dc = Arr::Zero(h, b);

  for (std::size_t s = n; s-- > 0;) {
    const std::size_t pos = reverse ? n - 1 - s : s;
    const Eigen::Index col = static_cast<Eigen::Index>(pos) * b;
    const auto gates = pass.gates.middleCols(col, b);
    const Arr i = gates.topRows(h).array();
    const Arr f = gates.middleRows(h, h).array();
    const Arr o = gates.middleRows(2 * h, h).array();
    const Arr g = gates.bottomRows(h).array();
    const Arr tc = pass.tanh_c.middleCols(col, b).array();
    const Arr dha = dh.array();

    dc += dha * o * (1.0 - tc * tc);
    auto dz = dz_all.middleCols(col, b);
    dz.topRows(h) = (dc * g * i * (1.0 - i)).matrix();
    dz.middleRows(h, h) = (dc * pass.c_prev.middleCols(col, b).array() * f * (1.0 - f)).matrix();
    dz.middleRows(2 * h, h) = (dha * tc * o * (1.0 - o)).matrix();
    dz.bottomRows(h) = (dc * i * (1.0 - g * g)).matrix();

    dh.noalias() = w.U.transpose() * dz;
    dc *= f;
  }

  grad.W.noalias() += dz_all * x.transpose();
  grad.U.noalias() += dz_all * pass.h_prev.transpose();
  grad.b += dz_all.rowwise().sum();
  dx.noalias() += w.W.transpose() * dz_all;
}

struct ForwardPass {
  std::size_t n = 0;
  Mat x;
  DirectionPass fwd;
  DirectionPass bwd;
  Mat states;   // 2h x B, before dropout
  Mat mask;     // 2h x B
  Mat dropped;  // states .* mask
  std::vector<double> probabilities;
};

ForwardPass run_forward(const ModelParams& params, const ModelConfig* config,
                        std::span<const EncodedSequence> batch, Mode mode, std::uint64_t seed) {
  if (batch.empty()) throw Error("empty batch");
  ForwardPass fp;
  fp.n = batch.front().indices.size();
  if (fp.n == 0) throw Error("sequences must hold at least one position");
  const std::size_t bsz = batch.size();
  const auto h = static_cast<Eigen::Index>(hidden_of(params));

  fp.x = embed(params, batch, fp.n);
  fp.fwd = run_direction(params.forward, fp.x, fp.n, bsz, false);
  fp.bwd = run_direction(params.backward, fp.x, fp.n, bsz, true);
  fp.states.resize(2 * h, static_cast<Eigen::Index>(bsz));
  fp.states.topRows(h) = fp.fwd.h_final;
  fp.states.bottomRows(h) = fp.bwd.h_final;

  fp.mask = Mat::Ones(2 * h, static_cast<Eigen::Index>(bsz));
  if (mode == Mode::train && config != nullptr && config->dropout_rate > 0.0) {
    const double keep = 1.0 - config->dropout_rate;
    Rng rng(seed);
    for (Eigen::Index j = 0; j < fp.mask.cols(); ++j) {
      for (Eigen::Index r = 0; r < fp.mask.rows(); ++r) {
        fp.mask(r, j) = rng.uniform() < keep ? 1.0 / keep : 0.0;
      }
    }
  }
  fp.dropped = fp.states.cwiseProduct(fp.mask);

  const Eigen::RowVectorXd logits =
      (params.w_out.transpose() * fp.dropped).array() + params.b_out(0);
  fp.probabilities.resize(bsz);
  for (std::size_t j = 0; j < bsz; ++j) {
    fp.probabilities[j] = sigmoid(logits(static_cast<Eigen::Index>(j)));
  }
  return fp;
}

double clamp_probability(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

}  // namespace

void ModelConfig::validate() const {
  if (vocab_dim < 1 || embed_dim < 1 || hidden_dim < 1 || seq_len < 1) {
    throw Error("model dimensions must be positive");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw Error("dropout rate must lie in [0, 1)");
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("threshold must lie in (0, 1)");
}

std::array<std::span<double>, ModelParams::kTensorCount> ModelParams::tensors() {
  auto view = [](auto& m) { return std::span<double>(m.data(), static_cast<std::size_t>(m.size())); };
  return {view(embedding), view(forward.W), view(forward.U), view(forward.b), view(backward.W),
          view(backward.U), view(backward.b), view(w_out),   view(b_out)};
}

std::array<std::span<const double>, ModelParams::kTensorCount> ModelParams::tensors() const {
  auto view = [](const auto& m) {
    return std::span<const double>(m.data(), static_cast<std::size_t>(m.size()));
  };
  return {view(embedding), view(forward.W), view(forward.U), view(forward.b), view(backward.W),
          view(backward.U), view(backward.b), view(w_out),   view(b_out)};
}

ModelParams ModelParams::zeros_like() const {
  auto zero_dir = [](const LstmWeights& w) {
    return LstmWeights{Mat::Zero(w.W.rows(), w.W.cols()), Mat::Zero(w.U.rows(), w.U.cols()),
                       Eigen::VectorXd::Zero(w.b.size())};
  };
  ModelParams z;
  z.embedding = Mat::Zero(embedding.rows(), embedding.cols());
  z.forward = zero_dir(forward);
  z.backward = zero_dir(backward);
  z.w_out = Eigen::VectorXd::Zero(w_out.size());
  z.b_out = Eigen::VectorXd::Zero(b_out.size());
  return z;
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  const auto v = static_cast<Eigen::Index>(config.vocab_dim);
  const auto e = static_cast<Eigen::Index>(config.embed_dim);
  const auto h = static_cast<Eigen::Index>(config.hidden_dim);
  Rng rng(seed);

  auto fill = [&](auto block, double fan_in, double fan_out) {
    const double r = std::sqrt(6.0 / (fan_in + fan_out));
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      for (Eigen::Index j = 0; j < block.cols(); ++j) block(i, j) = (2.0 * rng.uniform_open() - 1.0) * r;
    }
  };

  ModelParams p;
  p.embedding.resize(v, e);
  fill(p.embedding.block(0, 0, v, e), static_cast<double>(v), static_cast<double>(e));
  for (LstmWeights* dir : {&p.forward, &p.backward}) {
    dir->W.resize(4 * h, e);
    dir->U.resize(4 * h, h);
    for (Eigen::Index gate = 0; gate < 4; ++gate) {
      fill(dir->W.block(gate * h, 0, h, e), static_cast<double>(e), static_cast<double>(h));
      fill(dir->U.block(gate * h, 0, h, h), static_cast<double>(h), static_cast<double>(h));
    }
    dir->b = Eigen::VectorXd::Zero(4 * h);
    dir->b.segment(h, h).setOnes();
  }
  p.w_out.resize(2 * h);
  fill(p.w_out.block(0, 0, 2 * h, 1), static_cast<double>(2 * h), 1.0);
  p.b_out = Eigen::VectorXd::Zero(1);
  return p;
}

Eigen::MatrixXd hidden_states(const ModelParams& params, std::span<const EncodedSequence> batch) {
  return run_forward(params, nullptr, batch, Mode::infer, 0).states;
}

std::vector<double> forward(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, Mode mode, std::uint64_t seed) {
  return run_forward(params, &config, batch, mode, seed).probabilities;
}

double binary_cross_entropy(std::span<const double> probabilities, std::span<const int> labels) {
  if (probabilities.size() != labels.size() || labels.empty()) {
    throw Error("binary_cross_entropy: size mismatch or empty input");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const double p = clamp_probability(probabilities[j]);
    total += labels[j] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return -total / static_cast<double>(labels.size());
}

LossAndGrads loss_and_grads(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, std::span<const int> labels,
                            Mode mode, std::uint64_t seed) {
  if (labels.size() != batch.size()) throw Error("one label per sequence required");
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error("labels must be 0 or 1");
  }
  const ForwardPass fp = run_forward(params, &config, batch, mode, seed);
  const std::size_t bsz = batch.size();
  const auto h = static_cast<Eigen::Index>(hidden_of(params));

  LossAndGrads out;
  out.loss = binary_cross_entropy(fp.probabilities, labels);
  out.grads = params.zeros_like();
  ModelParams& g = out.grads;

  // d(loss)/d(logit); zero where the clamp is active.
  Eigen::RowVectorXd dlogit(static_cast<Eigen::Index>(bsz));
  for (std::size_t j = 0; j < bsz; ++j) {
    const double p = fp.probabilities[j];
    const bool inside = p > kProbabilityClamp && p < 1.0 - kProbabilityClamp;
    dlogit(static_cast<Eigen::Index>(j)) =
        inside ? (p - static_cast<double>(labels[j])) / static_cast<double>(bsz) : 0.0;
  }
  g.w_out = fp.dropped * dlogit.transpose();
  g.b_out(0) = dlogit.sum();

  const Mat dstates = (params.w_out * dlogit).cwiseProduct(fp.mask);
  Mat dx = Mat::Zero(fp.x.rows(), fp.x.cols());
  backprop_direction(params.forward, fp.fwd, fp.x, dstates.topRows(h), fp.n, bsz, false,
                     g.forward, dx);
  backprop_direction(params.backward, fp.bwd, fp.x, dstates.bottomRows(h), fp.n, bsz, true,
                     g.backward, dx);

  for (std::size_t j = 0; j < bsz; ++j) {
    const auto& idx = batch[j].indices;
    for (std::size_t t = 0; t < fp.n; ++t) {
      g.embedding.row(idx[t]) += dx.col(static_cast<Eigen::Index>(t * bsz + j)).transpose();
    }
  }
  return out;
}

LossAndGrads loss_and_grads(const ModelParams& params, const ModelConfig& config,
                            std::span<const EncodedSequence> batch, Mode mode, std::uint64_t seed) {
  std::vector<int> labels;
  labels.reserve(batch.size());
  for (const auto& s : batch) labels.push_back(s.label);
  return loss_and_grads(params, config, batch, labels, mode, seed);
}

Prediction classify(double probability, double threshold) {
  return Prediction{probability >= threshold ? 1 : 0, probability};
}

Prediction classify(const ModelParams& params, const ModelConfig& config, const EncodedSequence& seq) {
  return classify(params, config, std::span<const EncodedSequence>(&seq, 1)).front();
}

std::vector<Prediction> classify(const ModelParams& params, const ModelConfig& config,
                                 std::span<const EncodedSequence> batch) {
  std::vector<Prediction> out;
  out.reserve(batch.size());
  constexpr std::size_t kChunk = 256;
  for (std::size_t start = 0; start < batch.size(); start += kChunk) {
    const auto chunk = batch.subspan(start, std::min(kChunk, batch.size() - start));
    for (double p : forward(params, config, chunk, Mode::infer)) {
      out.push_back(classify(p, config.threshold));
    }
  }
  return out;
}

}  // namespace nbf
