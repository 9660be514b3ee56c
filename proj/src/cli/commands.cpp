#include "nbf/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"
#include "nbf/eval/report.hpp"
#include "nbf/ingest/corpus_io.hpp"
#include "nbf/nn/checkpoint.hpp"

namespace nbf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void require_workdir(const RunConfig& config) {
  if (config.workdir.empty()) throw Error("no workdir configured");
}

void require_file(const fs::path& path, const char* what) {
  if (path.empty()) throw Error(std::string("no ") + what + " configured");
  if (!fs::exists(path)) throw InputError(path.string(), std::string(what) + " does not exist");
}

std::uint64_t require_seed(const RunConfig& config) {
  if (!config.seed) throw Error("a seed is required (--seed or seed = ... in the config)");
  return *config.seed;
}

fs::path labeled_path(const fs::path& workdir, const std::string& kind) {
  return workdir / ("labeled-" + kind_slug(kind) + ".jsonl");
}

fs::path kind_dir(const fs::path& workdir, const std::string& kind) {
  return workdir / "kinds" / kind_slug(kind);
}

std::string stem(Setup setup, std::size_t rep) {
  return std::string(to_string(setup)) + "-" + std::to_string(rep);
}

std::vector<std::string> selected_kinds(const RunConfig& config) {
  const std::vector<std::string> known = manifest_kinds(config.workdir);
  if (config.kinds.empty()) return known;
  for (const auto& k : config.kinds) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw Error("kind " + k + " was not ingested into " + config.workdir.string());
    }
  }
  return config.kinds;
}

Vocabulary load_vocab(const fs::path& workdir) {
  const fs::path path = workdir / "vocab.json";
  try {
    return Vocabulary::from_json(read_file(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(path.string(), e.what());
  }
}

KindData load_kind(const fs::path& workdir, const std::string& kind, const Vocabulary& vocab) {
  const LabeledCorpus corpus = read_labeled_jsonl(labeled_path(workdir, kind), kind);
  KindData data;
  data.kind = kind;
  for (const auto& s : corpus.buggy) data.buggy.push_back(encode(s, vocab, 1));
  for (const auto& s : corpus.non_buggy) data.non_buggy.push_back(encode(s, vocab, 0));
  return data;
}

std::string split_text(const DatasetSplit& split) {
  std::ostringstream out;
  write_split_jsonl(out, split);
  return out.str();
}

DatasetSplit load_split(const fs::path& path) {
  std::istringstream in(read_file(path));
  try {
    return read_split_jsonl(in);
  } catch (const std::exception& e) {
    throw InputError(path.string(), e.what());
  }
}

std::string train_log_text(const std::vector<double>& epoch_loss) {
  std::string out = "epoch,mean_loss\n";
  char buf[64];
  for (std::size_t e = 0; e < epoch_loss.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%zu,%.10f\n", e + 1, epoch_loss[e]);
    out += buf;
  }
  return out;
}

Metrics score(const ModelParams& params, const ModelConfig& model,
              const std::vector<EncodedSequence>& validation) {
  std::vector<int> predicted;
  std::vector<int> labels;
  for (const Prediction& p : classify(params, model, validation)) predicted.push_back(p.label);
  for (const auto& s : validation) labels.push_back(s.label);
  return metrics(predicted, labels);
}

void write_reports(const fs::path& workdir, const std::vector<ExperimentReport>& reports) {
  const Summary summary = summarize(reports);
  std::ostringstream text, csv, reps, scatter;
  write_summary_text(text, summary);
  write_report_csv(csv, summary);
  write_repetitions_csv(reps, reports);
  write_scatter_csv(scatter, reports);
  write_file(workdir / "report.txt", text.str());
  write_file(workdir / "report.csv", csv.str());
  write_file(workdir / "reps.csv", reps.str());
  write_file(workdir / "scatter.csv", scatter.str());
  write_file(workdir / "report.json", reports_to_json(reports, summary) + "\n");
}

void record_config(const RunConfig& config) {
  write_file(config.workdir / "config.toml", render_config(config));
}

}  // namespace

std::string kind_slug(const std::string& kind) {
  std::string out;
  for (char c : kind) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

std::vector<std::string> manifest_kinds(const fs::path& workdir) {
  const fs::path path = workdir / "manifest.json";
  json manifest;
  try {
    manifest = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InputError(path.string(), e.what());
  }
  std::vector<std::string> kinds;
  for (const auto& k : manifest.at("kinds")) kinds.push_back(k.at("kind").get<std::string>());
  return kinds;
}

void cmd_ingest(const RunConfig& in_config, std::ostream& log) {
  RunConfig config = in_config;
  config.validate();
  require_workdir(config);
  require_file(config.corpus, "corpus");
  require_file(config.warnings, "warnings file");

  const std::vector<RawMethod> methods = load_corpus(config.corpus);
  const std::vector<Warning> warnings = read_warnings_jsonl(config.warnings);

  if (config.kinds.empty()) {
    std::set<std::string> seen;
    for (const auto& w : warnings) seen.insert(w.kind);
    config.kinds.assign(seen.begin(), seen.end());
  }
  std::set<std::string> slugs;
  for (const auto& k : config.kinds) {
    if (!slugs.insert(kind_slug(k)).second) throw Error("kind names collide on disk: " + k);
  }

  std::vector<MethodSequence> sequences;
  sequences.reserve(methods.size());
  for (const auto& m : methods) sequences.push_back(truncate(m, config.n));

  fs::create_directories(config.workdir);
  {
    std::ostringstream out;
    write_methods_jsonl(out, methods);
    write_file(config.workdir / "methods.jsonl", out.str());
  }

  const std::set<std::string> declared(config.kinds.begin(), config.kinds.end());
  std::size_t undeclared = 0;
  for (const auto& w : warnings) undeclared += declared.count(w.kind) ? 0 : 1;

  json kinds = json::array();
  for (const auto& kind : config.kinds) {
    const LabeledCorpus corpus = label(sequences, warnings, kind);
    std::ostringstream out;
    write_labeled_jsonl(out, corpus);
    write_file(labeled_path(config.workdir, kind), out.str());
    kinds.push_back({{"kind", kind},
                     {"buggy", corpus.buggy.size()},
                     {"non_buggy", corpus.non_buggy.size()},
                     {"beyond_window", corpus.beyond_window},
                     {"unknown_method_warnings", corpus.unknown_method_warnings}});
    log << "ingest: " << kind << ": " << corpus.buggy.size() << " buggy, "
        << corpus.non_buggy.size() << " non-buggy";
    if (corpus.unknown_method_warnings) {
      log << ", " << corpus.unknown_method_warnings << " warnings on unknown methods skipped";
    }
    log << '\n';
  }
  const json manifest{{"format", "nbf-manifest"},
                      {"version", 1},
                      {"n", config.n},
                      {"methods", methods.size()},
                      {"warnings", warnings.size()},
                      {"undeclared_kind_warnings", undeclared},
                      {"kinds", kinds}};
  write_file(config.workdir / "manifest.json", manifest.dump(2) + "\n");
  record_config(config);
  log << "ingest: " << methods.size() << " methods, " << warnings.size() << " warnings\n";
}

void cmd_vocab(const RunConfig& config, std::ostream& log) {
  config.validate();
  require_workdir(config);
  const std::vector<RawMethod> methods = read_methods_jsonl(config.workdir / "methods.jsonl");
  if (methods.empty()) throw Error("corpus holds no methods");
  const Vocabulary vocab = build_vocabulary(methods, config.vocab_size);
  write_file(config.workdir / "vocab.json", vocab.to_json() + "\n");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", vocab.coverage() * 100.0);
  log << "vocab: " << vocab.size_base() << " entries, coverage " << buf << '\n';
}

void cmd_sample(const RunConfig& config, std::ostream& log) {
  config.validate();
  require_workdir(config);
  const std::uint64_t seed = require_seed(config);
  const Vocabulary vocab = load_vocab(config.workdir);
  ComposeOptions options;
  options.ratio = config.ratio;
  options.lsh = config.lsh;
  for (const auto& kind : selected_kinds(config)) {
    const KindData data = load_kind(config.workdir, kind, vocab);
    for (Setup setup : config.setups) {
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        try {
          const DatasetSplit split = compose(setup, data.buggy, data.non_buggy, vocab, seed + rep, options);
          write_file(kind_dir(config.workdir, kind) / ("split-" + stem(setup, rep) + ".jsonl"),
                     split_text(split));
        } catch (const std::exception& e) {
          throw Error(kind + "/" + std::string(to_string(setup)) + " repetition " +
                      std::to_string(rep) + ": " + e.what());
        }
      }
      log << "sample: " << kind << " " << to_string(setup) << ": " << config.reps << " splits\n";
    }
  }
  record_config(config);
}

void cmd_train(const RunConfig& config, std::ostream& log) {
  config.validate();
  require_workdir(config);
  const Vocabulary vocab = load_vocab(config.workdir);
  const ExperimentConfig ec = config.experiment(vocab.dimension());
  for (const auto& kind : selected_kinds(config)) {
    const fs::path dir = kind_dir(config.workdir, kind);
    for (Setup setup : config.setups) {
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const DatasetSplit split = load_split(dir / ("split-" + stem(setup, rep) + ".jsonl"));
        TrainConfig tc;
        tc.epochs = ec.epochs;
        tc.seed = split.seed;
        tc.adam = ec.adam;
        TrainResult trained;
        try {
          trained = train(split, ec.model, tc);
        } catch (const std::exception& e) {
          throw Error(kind + "/" + std::string(to_string(setup)) + " repetition " +
                      std::to_string(rep) + ": " + e.what());
        }
        write_file(dir / ("model-" + stem(setup, rep) + ".json"),
                   checkpoint_to_json({ec.model, trained.params, vocab.fingerprint()}));
        write_file(dir / ("train-log-" + stem(setup, rep) + ".csv"), train_log_text(trained.epoch_loss));
      }
      log << "train: " << kind << " " << to_string(setup) << ": " << config.reps << " models\n";
    }
  }
  record_config(config);
}

std::vector<ExperimentReport> cmd_eval(const RunConfig& config, std::ostream& log) {
  config.validate();
  require_workdir(config);
  const Vocabulary vocab = load_vocab(config.workdir);
  std::vector<ExperimentReport> reports;
  for (const auto& kind : selected_kinds(config)) {
    const fs::path dir = kind_dir(config.workdir, kind);
    const LabeledCorpus corpus = read_labeled_jsonl(labeled_path(config.workdir, kind), kind);
    for (Setup setup : config.setups) {
      ExperimentReport report;
      report.kind = kind;
      report.setup = setup;
      report.repetitions = config.reps;
      report.buggy = corpus.buggy.size();
      report.non_buggy = corpus.non_buggy.size();
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const DatasetSplit split = load_split(dir / ("split-" + stem(setup, rep) + ".jsonl"));
        const fs::path model_path = dir / ("model-" + stem(setup, rep) + ".json");
        Checkpoint ck;
        try {
          ck = checkpoint_from_json(read_file(model_path));
        } catch (const InputError&) {
          throw;
        } catch (const std::exception& e) {
          throw InputError(model_path.string(), e.what());
        }
        if (ck.vocab_fingerprint != vocab.fingerprint()) {
          throw InputError(model_path.string(), "model was trained with a different vocabulary");
        }
        ck.config.threshold = config.threshold;
        report.per_rep.push_back(score(ck.params, ck.config, split.validation));
      }
      report.mean = average(report.per_rep);
      log << "eval: " << kind << " " << to_string(setup) << ": " << format_cell(report.mean) << '\n';
      reports.push_back(std::move(report));
    }
  }
  if (reports.empty()) throw Error("nothing to evaluate");
  write_reports(config.workdir, reports);
  record_config(config);
  return reports;
}

std::vector<ExperimentReport> cmd_run(const RunConfig& in_config, std::ostream& log) {
  RunConfig config = in_config;
  config.validate();
  require_workdir(config);
  require_seed(config);
  if (!config.corpus.empty() || !config.warnings.empty()) {
    cmd_ingest(config, log);
    if (config.kinds.empty()) config.kinds = manifest_kinds(config.workdir);
  }
  cmd_vocab(config, log);
  const Vocabulary vocab = load_vocab(config.workdir);
  const ExperimentConfig ec = config.experiment(vocab.dimension());

  std::vector<ExperimentReport> reports;
  for (const auto& kind : selected_kinds(config)) {
    const KindData data = load_kind(config.workdir, kind, vocab);
    const fs::path dir = kind_dir(config.workdir, kind);
    for (Setup setup : config.setups) {
      auto persist = [&](std::size_t rep, const DatasetSplit& split, const TrainResult& trained) {
        write_file(dir / ("split-" + stem(setup, rep) + ".jsonl"), split_text(split));
        write_file(dir / ("model-" + stem(setup, rep) + ".json"),
                   checkpoint_to_json({ec.model, trained.params, vocab.fingerprint()}));
        write_file(dir / ("train-log-" + stem(setup, rep) + ".csv"), train_log_text(trained.epoch_loss));
      };
      reports.push_back(run_experiment(data, setup, vocab, ec, persist));
      log << "run: " << kind << " " << to_string(setup) << ": " << format_cell(reports.back().mean)
          << '\n';
    }
  }
  if (reports.empty()) throw Error("nothing to evaluate");
  write_reports(config.workdir, reports);
  record_config(config);
  return reports;
}

}  // namespace nbf
