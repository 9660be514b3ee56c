#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbf/eval/experiment.hpp"
#include "nbf/sampler/compose.hpp"

namespace nbf {

// Everything a pipeline command needs. Persisted as a flat key = value
// document (config.toml) next to the outputs it produced.
struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path warnings;
  std::filesystem::path workdir;
  std::vector<std::string> kinds;  // empty: every kind found in the warnings
  std::vector<Setup> setups{std::begin(kAllSetups), std::end(kAllSetups)};

  std::size_t n = 50;
  std::size_t vocab_size = 1000;
  LshParams lsh;
  double ratio = 0.8;
  std::optional<std::uint64_t> seed;

  std::size_t epochs = 10;
  std::size_t reps = 5;
  std::size_t embed_dim = 50;
  std::size_t hidden_dim = 50;
  double dropout = 0.2;
  double threshold = 0.5;

  void validate() const;
  ExperimentConfig experiment(std::size_t vocab_dim) const;
};

// Sets one key from its textual value (quotes optional for strings, lists as
// ["a", "b"] or a,b). Throws on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Parses a config document; `#` starts a comment. Errors name the line.
RunConfig parse_config(std::string_view text, const RunConfig& base = {});
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = {});

std::string render_config(const RunConfig& config);

}  // namespace nbf
