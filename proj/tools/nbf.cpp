// nbf: per-kind bug classifiers over method token windows.
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nbf/cli/commands.hpp"
#include "nbf/cli/config.hpp"
#include "nbf/cli/synth.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kRunFlags[] = {
    {"--corpus", "corpus", "source directory or methods JSONL"},
    {"--warnings", "warnings", "warnings JSONL"},
    {"--workdir", "workdir", "output directory"},
    {"--kinds", "kinds", "comma-separated warning kinds (default: all in warnings)"},
    {"--setups", "setups", "comma-separated subset of BS,BANNS,SS,BB"},
    {"--n", "n", "token window length (50)"},
    {"--vocab-size", "vocab_size", "retained lexemes (1000)"},
    {"--tables", "tables", "LSH tables (8)"},
    {"--bits", "bits", "LSH bits per table (16)"},
    {"--exhaustive-threshold", "exhaustive_threshold", "exact search up to this pool size (10000)"},
    {"--ratio", "ratio", "training share of each class (0.8)"},
    {"--seed", "seed", "base seed; repetition i uses seed + i"},
    {"--epochs", "epochs", "training epochs (10)"},
    {"--reps", "reps", "repetitions per kind and setup (5)"},
    {"--embed-dim", "embed_dim", "embedding size (50)"},
    {"--hidden-dim", "hidden_dim", "LSTM size per direction (50)"},
    {"--dropout", "dropout", "dropout rate on the final states (0.2)"},
    {"--threshold", "threshold", "decision threshold (0.5)"},
};

struct RunArgs {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_run_flags(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config_path, "config file (key = value)");
  for (const FlagSpec& f : kRunFlags) {
    cmd->add_option(f.flag, args.values[f.key], f.help);
  }
}

nbf::RunConfig resolve(const RunArgs& args) {
  nbf::RunConfig config;
  if (!args.config_path.empty()) config = nbf::load_config(args.config_path);
  for (const auto& [key, value] : args.values) {
    if (!value.empty()) nbf::apply_setting(config, key, value);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural bug finding: per-kind bi-LSTM classifiers over method token windows"};
  app.require_subcommand(1);

  RunArgs ingest_args, vocab_args, sample_args, train_args, eval_args, run_args;
  auto* ingest = app.add_subcommand("ingest", "lex the corpus, label methods per warning kind");
  auto* vocab = app.add_subcommand("vocab", "build the vocabulary from ingested methods");
  auto* sample = app.add_subcommand("sample", "compose train/validation splits per setup");
  auto* train = app.add_subcommand("train", "train one model per split");
  auto* eval = app.add_subcommand("eval", "score trained models and write reports");
  auto* run = app.add_subcommand("run", "vocab, sample, train and eval in one pass");
  add_run_flags(ingest, ingest_args);
  add_run_flags(vocab, vocab_args);
  add_run_flags(sample, sample_args);
  add_run_flags(train, train_args);
  add_run_flags(eval, eval_args);
  add_run_flags(run, run_args);

  nbf::SynthSpec spec;
  std::string synth_out, synth_source;
  std::vector<std::string> confounders;
  auto* synth = app.add_subcommand("synth", "generate a planted-pattern corpus with warnings");
  synth->add_option("--out", synth_out, "output directory for corpus.jsonl and warnings.jsonl")
      ->required();
  synth->add_option("--source", synth_source, "also write the Java sources here");
  synth->add_option("--methods", spec.methods, "method count")->capture_default_str();
  synth->add_option("--bug-rate", spec.bug_rate, "share of buggy methods")->capture_default_str();
  synth->add_option("--confounder-rate", spec.confounder_rate,
                    "share of non-buggy methods carrying a near miss")
      ->capture_default_str();
  synth->add_option("--kind", spec.kind, "warning kind")->capture_default_str();
  synth->add_option("--trigger", spec.trigger, "buggy pattern, $ = identifier")
      ->capture_default_str();
  synth->add_option("--confounder", confounders, "near-miss pattern (repeatable)");
  synth->add_option("--names", spec.names, "identifier pool size")->capture_default_str();
  synth->add_option("--window", spec.window, "plant patterns within this many tokens")
      ->capture_default_str();
  synth->add_option("--methods-per-file", spec.methods_per_file, "methods per class file")
      ->capture_default_str();
  synth->add_option("--seed", spec.seed, "generator seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      nbf::cmd_ingest(resolve(ingest_args), std::cerr);
    } else if (vocab->parsed()) {
      nbf::cmd_vocab(resolve(vocab_args), std::cerr);
    } else if (sample->parsed()) {
      nbf::cmd_sample(resolve(sample_args), std::cerr);
    } else if (train->parsed()) {
      nbf::cmd_train(resolve(train_args), std::cerr);
    } else if (eval->parsed()) {
      nbf::cmd_eval(resolve(eval_args), std::cerr);
    } else if (run->parsed()) {
      nbf::cmd_run(resolve(run_args), std::cerr);
    } else if (synth->parsed()) {
      if (!confounders.empty()) spec.confounders = confounders;
      const nbf::SynthCorpus corpus = nbf::synthesize(spec);
      nbf::write_synth(corpus, synth_out, synth_source);
      std::cerr << "synth: " << corpus.methods.size() << " methods, " << corpus.buggy_ids.size()
                << " buggy, " << corpus.confounded_ids.size() << " confounded\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "nbf: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
