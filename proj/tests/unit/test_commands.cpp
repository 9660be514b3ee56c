#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "nbf/cli/commands.hpp"
#include "nbf/cli/synth.hpp"
#include "nbf/error.hpp"

using namespace nbf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nbf-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Small corpus plus a fast config.
RunConfig small_setup(const fs::path& root) {
  SynthSpec spec;
  spec.methods = 200;
  spec.seed = 2;
  write_synth(synthesize(spec), root / "data", root / "data" / "src");
  RunConfig c;
  c.corpus = root / "data" / "corpus.jsonl";
  c.warnings = root / "data" / "warnings.jsonl";
  c.workdir = root / "work";
  c.setups = {Setup::SS, Setup::BB};
  c.reps = 2;
  c.epochs = 2;
  c.embed_dim = 6;
  c.hidden_dim = 5;
  c.vocab_size = 60;
  c.seed = 11;
  return c;
}

}  // namespace

TEST_CASE("ingest writes a manifest with per-kind counts") {
  const fs::path root = scratch("cmd-ingest");
  const RunConfig c = small_setup(root);
  std::ostringstream log;
  cmd_ingest(c, log);
  const auto m = nlohmann::json::parse(slurp(c.workdir / "manifest.json"));
  CHECK(m.at("methods") == 200);
  CHECK(m.at("warnings") == 20);
  REQUIRE(m.at("kinds").size() == 1);
  CHECK(m.at("kinds")[0].at("buggy") == 20);
  CHECK(m.at("kinds")[0].at("non_buggy") == 180);
  CHECK(manifest_kinds(c.workdir) == std::vector<std::string>{"BoxedPrimitiveConstructor"});
  CHECK(fs::exists(c.workdir / "methods.jsonl"));
  CHECK(fs::exists(c.workdir / "config.toml"));

  // Sources and JSONL give the same manifest.
  RunConfig from_src = c;
  from_src.corpus = root / "data" / "src";
  from_src.workdir = root / "work-src";
  cmd_ingest(from_src, log);
  CHECK(slurp(from_src.workdir / "manifest.json") == slurp(c.workdir / "manifest.json"));
}

TEST_CASE("explicit kinds absent from the warnings are all non-buggy") {
  const fs::path root = scratch("cmd-kinds");
  RunConfig c = small_setup(root);
  c.kinds = {"NeverSeen"};
  std::ostringstream log;
  cmd_ingest(c, log);
  const auto m = nlohmann::json::parse(slurp(c.workdir / "manifest.json"));
  CHECK(m.at("kinds")[0].at("buggy") == 0);
  CHECK(m.at("undeclared_kind_warnings") == 20);
}

TEST_CASE("staged pipeline equals run, and run is deterministic") {
  const fs::path root = scratch("cmd-run");
  RunConfig c = small_setup(root);
  std::ostringstream log;
  cmd_ingest(c, log);
  cmd_vocab(c, log);
  cmd_sample(c, log);
  cmd_train(c, log);
  const auto staged = cmd_eval(c, log);
  const std::string staged_csv = slurp(c.workdir / "report.csv");
  CHECK(fs::exists(c.workdir / "kinds" / kind_slug("BoxedPrimitiveConstructor") / "model-SS-1.json"));

  RunConfig r1 = c;
  r1.workdir = root / "run1";
  RunConfig r2 = c;
  r2.workdir = root / "run2";
  const auto a = cmd_run(r1, log);
  cmd_run(r2, log);
  for (const char* f : {"report.csv", "reps.csv", "report.txt", "scatter.csv", "report.json"}) {
    INFO(f);
    CHECK(slurp(r1.workdir / f) == slurp(r2.workdir / f));
  }
  CHECK(slurp(r1.workdir / "report.csv") == staged_csv);
  REQUIRE(a.size() == 2);
  CHECK(a[0].per_rep.size() == 2);
  CHECK(a[0].per_rep[0].total() == staged[0].per_rep[0].total());
}

TEST_CASE("command errors") {
  const fs::path root = scratch("cmd-err");
  RunConfig c = small_setup(root);
  std::ostringstream log;
  c.seed.reset();
  CHECK_THROWS_AS(cmd_run(c, log), Error);
  RunConfig missing = small_setup(root);
  missing.corpus = root / "nope";
  CHECK_THROWS_AS(cmd_ingest(missing, log), InputError);
  RunConfig nowork;
  CHECK_THROWS_AS(cmd_vocab(nowork, log), Error);

  RunConfig bare = small_setup(root);
  bare.workdir = root / "empty";
  fs::create_directories(bare.workdir);
  CHECK_THROWS_AS(cmd_vocab(bare, log), Error);
  CHECK(kind_slug("a/b c") != "a/b c");
}
