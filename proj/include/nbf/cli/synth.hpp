#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nbf/ingest/labeling.hpp"
#include "nbf/ingest/methods.hpp"

namespace nbf {

// Recipe for a planted-pattern corpus. Patterns are space-separated lexemes;
// `$` stands for a fresh identifier drawn from the corpus name pool.
struct SynthSpec {
  std::size_t methods = 2000;
  double bug_rate = 0.1;
  double confounder_rate = 0.3;
  std::string kind = "BoxedPrimitiveConstructor";
  std::string trigger = "new Integer ( $ )";
  // Near misses sharing the trigger's class token, planted in non-buggy
  // methods. One is picked per confounded method.
  std::vector<std::string> confounders = {"Integer . valueOf ( $ )", "Integer . parseInt ( $ )",
                                          "new Integer [ $ ]"};
  std::size_t names = 120;  // identifier pool size, at most 1140
  std::size_t window = 50;  // patterns are planted inside the first `window` tokens
  std::size_t methods_per_file = 20;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthCorpus {
  std::map<std::string, std::string> sources;  // relative path -> Java text
  std::vector<RawMethod> methods;
  std::vector<Warning> warnings;
  std::vector<std::string> buggy_ids;       // ground truth
  std::vector<std::string> confounded_ids;  // non-buggy methods carrying a near miss
};

SynthCorpus synthesize(const SynthSpec& spec);

// Writes corpus.jsonl and warnings.jsonl under `out_dir`, plus the Java
// sources under `source_dir` when that is non-empty.
void write_synth(const SynthCorpus& corpus, const std::filesystem::path& out_dir,
                 const std::filesystem::path& source_dir = {});

}  // namespace nbf
