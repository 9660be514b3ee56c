#include "nbf/nn/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"

namespace nbf {

using nlohmann::json;

namespace {

json shape_of(const Eigen::MatrixXd& m) { return json::array({m.rows(), m.cols()}); }

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ck) {
  const ModelConfig& c = ck.config;
  json j;
  j["format"] = "nbf-model";
  j["version"] = kCheckpointVersion;
  j["config"] = {{"vocab_dim", c.vocab_dim},       {"embed_dim", c.embed_dim},
                 {"hidden_dim", c.hidden_dim},     {"seq_len", c.seq_len},
                 {"dropout_rate", c.dropout_rate}, {"threshold", c.threshold}};
  j["vocab_hash"] = ck.vocab_fingerprint;
  const auto tensors = ck.params.tensors();
  json params = json::object();
  for (std::size_t k = 0; k < ModelParams::kTensorCount; ++k) {
    params[std::string(ModelParams::kTensorNames[k])] =
        std::vector<double>(tensors[k].begin(), tensors[k].end());
  }
  j["params"] = std::move(params);
  j["embedding_shape"] = shape_of(ck.params.embedding);
  return j.dump();
}

Checkpoint checkpoint_from_json(std::string_view text) {
  const json j = json::parse(text);
  if (j.at("format") != "nbf-model") throw Error("not a model checkpoint");
  if (j.at("version").get<int>() != kCheckpointVersion) {
    throw Error("unsupported checkpoint version " + j.at("version").dump());
  }
  Checkpoint ck;
  const json& c = j.at("config");
  ck.config.vocab_dim = c.at("vocab_dim").get<std::size_t>();
  ck.config.embed_dim = c.at("embed_dim").get<std::size_t>();
  ck.config.hidden_dim = c.at("hidden_dim").get<std::size_t>();
  ck.config.seq_len = c.at("seq_len").get<std::size_t>();
  ck.config.dropout_rate = c.at("dropout_rate").get<double>();
  ck.config.threshold = c.at("threshold").get<double>();
  ck.config.validate();
  ck.vocab_fingerprint = j.at("vocab_hash").get<std::string>();

  // Shapes follow from the config; the values are then copied in.
  ck.params = init_params(ck.config, 0).zeros_like();
  auto tensors = ck.params.tensors();
  const json& params = j.at("params");
  for (std::size_t k = 0; k < ModelParams::kTensorCount; ++k) {
    const auto values = params.at(std::string(ModelParams::kTensorNames[k])).get<std::vector<double>>();
    if (values.size() != tensors[k].size()) {
      throw Error("checkpoint tensor " + std::string(ModelParams::kTensorNames[k]) +
                  " has the wrong size");
    }
    std::copy(values.begin(), values.end(), tensors[k].begin());
  }
  return ck;
}

}  // namespace nbf
