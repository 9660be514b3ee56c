#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbf/cli/config.hpp"
#include "nbf/eval/experiment.hpp"

namespace nbf {

// Pipeline stages. Each reads its inputs from config.workdir (except ingest,
// which reads config.corpus and config.warnings), writes stable file names
// there and records the effective config as config.toml. Progress goes to
// `log`.
//
//   ingest  manifest.json, methods.jsonl, labeled-<kind>.jsonl
//   vocab   vocab.json
//   sample  kinds/<kind>/split-<setup>-<rep>.jsonl
//   train   kinds/<kind>/model-<setup>-<rep>.json, train-log-<setup>-<rep>.csv
//   eval    report.csv, report.txt, report.json, reps.csv, scatter.csv
//   run     vocab + sample + train + eval in one pass (ingests first when
//           corpus and warnings are configured)
void cmd_ingest(const RunConfig& config, std::ostream& log);
void cmd_vocab(const RunConfig& config, std::ostream& log);
void cmd_sample(const RunConfig& config, std::ostream& log);
void cmd_train(const RunConfig& config, std::ostream& log);
std::vector<ExperimentReport> cmd_eval(const RunConfig& config, std::ostream& log);
std::vector<ExperimentReport> cmd_run(const RunConfig& config, std::ostream& log);

// Kinds recorded in the workdir manifest, in manifest order.
std::vector<std::string> manifest_kinds(const std::filesystem::path& workdir);

// File-name safe form of a kind.
std::string kind_slug(const std::string& kind);

}  // namespace nbf
