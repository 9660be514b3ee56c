#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbf/sampler/lsh.hpp"
#include "nbf/vocab/vocabulary.hpp"

namespace nbf {

// Training/validation compositions: balanced/stratified (BS), balanced with
// nearest-neighbour non-buggy selection (BANNS), stratified/stratified (SS)
// and balanced/balanced (BB).
enum class Setup { BS, BANNS, SS, BB };

inline constexpr Setup kAllSetups[] = {Setup::BS, Setup::BANNS, Setup::SS, Setup::BB};

std::string_view to_string(Setup setup);
std::optional<Setup> parse_setup(std::string_view name);

struct SplitCounts {
  std::size_t train_buggy = 0;
  std::size_t train_non_buggy = 0;
  std::size_t validation_buggy = 0;
  std::size_t validation_non_buggy = 0;
};

struct DatasetSplit {
  Setup setup = Setup::SS;
  std::uint64_t seed = 0;
  std::vector<EncodedSequence> train;
  std::vector<EncodedSequence> validation;

  SplitCounts counts() const;
};

struct ComposeOptions {
  double ratio = 0.8;
  LshParams lsh;
};

// Stratified shuffle-split of both pools, then the setup's composition rule.
// `buggy` and `non_buggy` must carry labels 1 and 0. Needs the vocabulary
// only for BANNS (frequency vectors).
DatasetSplit compose(Setup setup, const std::vector<EncodedSequence>& buggy,
                     const std::vector<EncodedSequence>& non_buggy, const Vocabulary& vocab,
                     std::uint64_t seed, const ComposeOptions& options = {});

// JSONL: a header {setup, seed, counts} then one {part, method_id, label,
// indices} row per example.
void write_split_jsonl(std::ostream& out, const DatasetSplit& split);
DatasetSplit read_split_jsonl(std::istream& in);

}  // namespace nbf
