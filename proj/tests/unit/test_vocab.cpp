#include <doctest.h>

#include <map>
#include <numeric>

#include "nbf/error.hpp"
#include "nbf/rng.hpp"
#include "nbf/vocab/vocabulary.hpp"

using namespace nbf;

namespace {

std::vector<Token> toks(std::initializer_list<const char*> lexemes) {
  std::vector<Token> out;
  for (const char* l : lexemes) out.push_back({l, TokenClass::identifier, 1});
  return out;
}

Vocabulary vocab_of(std::vector<std::vector<Token>> corpus, std::size_t size) {
  return build_vocabulary(std::span<const std::vector<Token>>(corpus), size);
}

MethodSequence seq(std::initializer_list<const char*> lexemes, std::size_t n) {
  return MethodSequence("m", "F.java", toks(lexemes), n);
}

}  // namespace

TEST_CASE("frequency ranking and coverage") {
  const Vocabulary v = vocab_of({toks({"a", "a", "b"})}, 1);
  CHECK(v.entries() == std::vector<std::string>{"a"});
  CHECK(v.coverage() == doctest::Approx(2.0 / 3.0));

  const Vocabulary w = vocab_of({toks({"a", "b", "c", "a"}), toks({"b", "a", "b"})}, 2);
  CHECK(w.entries() == std::vector<std::string>{"a", "b"});
  CHECK(w.coverage() == doctest::Approx(6.0 / 7.0));

  CHECK(vocab_of({toks({"x", "y", "x"})}, 10).coverage() == 1.0);
}

TEST_CASE("ties break lexicographically") {
  const Vocabulary v = vocab_of({toks({"b", "c", "a", "c", "b", "a", "d"})}, 3);
  CHECK(v.entries() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("brute-force count oracle on random corpora") {
  Rng rng(12);
  std::vector<std::vector<Token>> corpus(40);
  std::map<std::string, int> counts;
  int total = 0;
  for (auto& m : corpus) {
    for (int k = 0; k < 30; ++k) {
      const std::string lex = "t" + std::to_string(rng.below(60) * rng.below(3));
      m.push_back({lex, TokenClass::identifier, 1});
      ++counts[lex];
      ++total;
    }
  }
  const Vocabulary v = build_vocabulary(std::span<const std::vector<Token>>(corpus), 15);
  REQUIRE(v.size_base() == 15);
  int covered = 0;
  for (std::size_t i = 0; i < v.entries().size(); ++i) {
    const std::string& e = v.entries()[i];
    covered += counts[e];
    // Every excluded lexeme ranks after every kept one.
    for (const auto& [lex, c] : counts) {
      if (std::find(v.entries().begin(), v.entries().end(), lex) != v.entries().end()) continue;
      CHECK((counts[e] > c || (counts[e] == c && e < lex)));
    }
    if (i > 0) {
      const std::string& prev = v.entries()[i - 1];
      CHECK((counts[prev] > counts[e] || (counts[prev] == counts[e] && prev < e)));
    }
  }
  CHECK(v.coverage() == doctest::Approx(static_cast<double>(covered) / total));
}

TEST_CASE("coverage is non-decreasing in vocabulary size") {
  Rng rng(3);
  std::vector<std::vector<Token>> corpus(10);
  for (auto& m : corpus) {
    for (int k = 0; k < 50; ++k) m.push_back({"w" + std::to_string(rng.below(80)), TokenClass::identifier, 1});
  }
  double prev = 0.0;
  for (std::size_t size = 1; size < 90; ++size) {
    const double c = build_vocabulary(std::span<const std::vector<Token>>(corpus), size).coverage();
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == 1.0);
}

TEST_CASE("build errors") {
  CHECK_THROWS_AS(vocab_of({toks({"a"})}, 0), Error);
  CHECK_THROWS_AS(vocab_of({}, 3), Error);
}

TEST_CASE("UNK and PAD sit after the retained entries") {
  const Vocabulary v = vocab_of({toks({"a", "a", "b", "c"})}, 2);
  CHECK(v.size_base() == 2);
  CHECK(v.dimension() == 4);
  CHECK(v.unk() == 2);
  CHECK(v.pad() == 3);
}

TEST_CASE("one_hot") {
  const Vocabulary v = vocab_of({toks({"a", "a", "b", "c"})}, 2);
  auto e = [&](std::size_t k) {
    std::vector<double> out(v.dimension(), 0.0);
    out[k] = 1.0;
    return out;
  };
  CHECK(one_hot("a", v) == e(0));
  CHECK(one_hot("b", v) == e(1));
  CHECK(one_hot("c", v) == e(2));
  CHECK(one_hot("never", v) == e(2));
  CHECK(one_hot(kPadLexeme, v) == e(3));
  for (const char* lex : {"a", "b", "zzz"}) {
    const auto h = one_hot(lex, v);
    CHECK(std::accumulate(h.begin(), h.end(), 0.0) == 1.0);
  }
}

TEST_CASE("encode") {
  const Vocabulary v = vocab_of({toks({"a", "a", "b", "c", "c", "c"})}, 2);  // [c, a]
  const auto all_pad = encode(seq({}, 5), v);
  CHECK(all_pad.indices == std::vector<TokenIndex>(5, v.pad()));

  const auto one = encode(seq({"a"}, 4), v, 1);
  CHECK(one.indices == std::vector<TokenIndex>{1, v.pad(), v.pad(), v.pad()});
  CHECK(one.label == 1);
  CHECK(one.method_id == "m");

  const auto s = seq({"c", "q", "a", "b", "c"}, 7);
  const auto enc = encode(s, v);
  REQUIRE(enc.indices.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    const auto h = one_hot(s.lexeme(i), v);
    const auto hot = static_cast<TokenIndex>(std::find(h.begin(), h.end(), 1.0) - h.begin());
    CHECK(enc.indices[i] == hot);
  }
  // Sequences differing only in unretained lexemes encode identically.
  CHECK(encode(seq({"c", "zz", "a"}, 4), v).indices == encode(seq({"c", "yy", "a"}, 4), v).indices);
}

TEST_CASE("JSON round trip and fingerprint") {
  const Vocabulary v = vocab_of({toks({"a", "b", "b", "\"q\""})}, 3);
  const Vocabulary w = Vocabulary::from_json(v.to_json());
  CHECK(w.entries() == v.entries());
  CHECK(w.coverage() == v.coverage());
  CHECK(w.fingerprint() == v.fingerprint());
  CHECK(vocab_of({toks({"a", "b"})}, 2).fingerprint() != vocab_of({toks({"a", "c"})}, 2).fingerprint());
  CHECK_THROWS(Vocabulary::from_json(R"({"entries":["a"],"size_base":2,"coverage":1})"));
}
