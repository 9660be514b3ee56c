#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nbf/error.hpp"
#include "nbf/ingest/corpus_io.hpp"

using namespace nbf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nbf-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void put(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("source directories are walked in path order with relative names") {
  const fs::path root = scratch("srcdir");
  put(root / "b" / "B.java", "class B { void g() { } }");
  put(root / "a" / "A.java", "class A { void f() { }\n int h() { return 1; } }");
  put(root / "notes.txt", "class X { void nope() { } }");
  const auto ms = load_corpus(root);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0].file == "a/A.java");
  CHECK(ms[1].file == "a/A.java");
  CHECK(ms[2].file == "b/B.java");
  CHECK(ms[1].method_id.rfind("a/A.java:2:", 0) == 0);
}

TEST_CASE("source and JSONL paths agree") {
  const fs::path root = scratch("dual");
  put(root / "src" / "P.java", "class P {\n  @Deprecated\n  String s(int x) { return \"a\" + x; }\n}\n");
  const auto from_source = load_corpus(root / "src");
  std::ostringstream out;
  write_methods_jsonl(out, from_source);
  put(root / "methods.jsonl", out.str());
  const auto from_jsonl = load_corpus(root / "methods.jsonl");
  REQUIRE(from_jsonl.size() == from_source.size());
  for (std::size_t i = 0; i < from_source.size(); ++i) {
    CHECK(from_jsonl[i].method_id == from_source[i].method_id);
    CHECK(from_jsonl[i].file == from_source[i].file);
    CHECK(from_jsonl[i].tokens == from_source[i].tokens);
  }
}

TEST_CASE("lexing problems in a source file name file and line") {
  const fs::path root = scratch("badsrc");
  put(root / "Bad.java", "class Bad {\n  String s = \"open;\n}\n");
  try {
    load_corpus(root);
    FAIL("expected an error");
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK(what.find("Bad.java:2") != std::string::npos);
  }
}

TEST_CASE("malformed JSONL names file and line") {
  const fs::path root = scratch("badjson");
  put(root / "w.jsonl", "{\"kind\":\"K\",\"line\":3,\"method_id\":\"m\"}\n\n{\"kind\":\"K\",\"line\":\n");
  try {
    read_warnings_jsonl(root / "w.jsonl");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("w.jsonl:3") != std::string::npos);
  }
  put(root / "w2.jsonl", "{\"kind\":\"K\",\"line\":0,\"method_id\":\"m\"}\n");
  CHECK_THROWS_AS(read_warnings_jsonl(root / "w2.jsonl"), InputError);
  put(root / "m.jsonl", R"({"method_id":"x","file":"f","tokens":[{"lexeme":"a","class":"bogus","line":1}]})");
  CHECK_THROWS_AS(read_methods_jsonl(root / "m.jsonl"), InputError);
  CHECK_THROWS_AS(read_methods_jsonl(root / "missing.jsonl"), InputError);
}

TEST_CASE("empty warnings file parses to nothing") {
  const fs::path root = scratch("empty");
  put(root / "w.jsonl", "");
  CHECK(read_warnings_jsonl(root / "w.jsonl").empty());
}

TEST_CASE("warnings and labeled corpora round trip") {
  const fs::path root = scratch("roundtrip");
  const std::vector<Warning> ws{{"K", 4, "f:1:a"}, {"J", 9, "f:2:b"}};
  std::ostringstream w;
  write_warnings_jsonl(w, ws);
  put(root / "w.jsonl", w.str());
  const auto back = read_warnings_jsonl(root / "w.jsonl");
  REQUIRE(back.size() == 2);
  CHECK(back[1].kind == "J");
  CHECK(back[1].line == 9);
  CHECK(back[1].method_id == "f:2:b");

  LabeledCorpus c;
  c.kind = "K";
  c.buggy.emplace_back("f:1:a", "f", std::vector<Token>{{"int", TokenClass::keyword, 1}}, 3);
  c.non_buggy.emplace_back("f:2:b", "f", std::vector<Token>{{"x", TokenClass::identifier, 2}}, 3);
  std::ostringstream l;
  write_labeled_jsonl(l, c);
  put(root / "l.jsonl", l.str());
  const auto lc = read_labeled_jsonl(root / "l.jsonl", "K");
  REQUIRE(lc.buggy.size() == 1);
  REQUIRE(lc.non_buggy.size() == 1);
  CHECK(lc.buggy[0].method_id() == "f:1:a");
  CHECK(lc.buggy[0].size() == 3);
  CHECK(lc.non_buggy[0].real_tokens() == c.non_buggy[0].real_tokens());
}
