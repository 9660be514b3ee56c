#include <doctest.h>

#include <cmath>
#include <numeric>

#include "nbf/rng.hpp"
#include "nbf/sampler/tfidf.hpp"

using namespace nbf;

namespace {

Vocabulary abc() {
  std::vector<Token> t;
  for (const char* l : {"a", "a", "a", "b", "b", "c"}) t.push_back({l, TokenClass::identifier, 1});
  std::vector<std::vector<Token>> corpus{t};
  return build_vocabulary(std::span<const std::vector<Token>>(corpus), 3);
}

MethodSequence seq(std::initializer_list<const char*> lexemes, std::size_t n) {
  std::vector<Token> t;
  for (const char* l : lexemes) t.push_back({l, TokenClass::identifier, 1});
  return MethodSequence("m", "F.java", t, n);
}

}  // namespace

TEST_CASE("freq_vector counts retained lexemes only") {
  const Vocabulary v = abc();
  CHECK(freq_vector(seq({}, 6), v) == std::vector<double>{0, 0, 0});
  CHECK(freq_vector(seq({"c", "x", "c", "a", "c"}, 8), v) == std::vector<double>{1, 0, 3});

  Rng rng(2);
  const char* pool[] = {"a", "b", "c", "u", "v"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Token> t;
    std::size_t retained = 0;
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) {
      const char* l = pool[rng.below(5)];
      retained += (l[0] <= 'c') ? 1 : 0;
      t.push_back({l, TokenClass::identifier, 1});
    }
    const MethodSequence s("m", "F", t, 10);
    const std::size_t in_window = std::min<std::size_t>(len, 10);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < in_window; ++i) expected += (t[i].lexeme[0] <= 'c') ? 1 : 0;
    const auto f = freq_vector(s, v);
    CHECK(std::accumulate(f.begin(), f.end(), 0.0) == static_cast<double>(expected));
    CHECK(freq_vector(encode(s, v), v) == f);
    (void)retained;
  }
}

TEST_CASE("single vector normalises to its direction") {
  const auto w = tfidf({{2.0, 0.0}});
  CHECK(w[0][0] == doctest::Approx(1.0));
  CHECK(w[0][1] == 0.0);
}

TEST_CASE("hand-computed three-document corpus") {
  const auto w = tfidf({{1, 0}, {1, 0}, {0, 1}});
  const double idf0 = std::log(4.0 / 3.0) + 1.0;
  const double idf1 = std::log(2.0) + 1.0;
  CHECK(idf1 > idf0);
  CHECK(w[0] == std::vector<double>{1.0, 0.0});
  CHECK(w[2] == std::vector<double>{0.0, 1.0});

  const auto m = tfidf({{1, 1}, {1, 0}, {1, 0}});  // df = [3, 1]
  const double a = 1.0 * (std::log(4.0 / 4.0) + 1.0);
  const double b = 1.0 * (std::log(4.0 / 2.0) + 1.0);
  const double norm = std::sqrt(a * a + b * b);
  CHECK(m[0][0] == doctest::Approx(a / norm).epsilon(1e-14));
  CHECK(m[0][1] == doctest::Approx(b / norm).epsilon(1e-14));
  CHECK(m[0][1] > m[0][0]);  // rarer token weighs more
}

TEST_CASE("zero vectors stay zero and weights are non-negative") {
  const auto w = tfidf({{0, 0, 0}, {1, 2, 0}});
  CHECK(w[0] == std::vector<double>{0, 0, 0});
  for (double x : w[1]) CHECK(x >= 0.0);
}

TEST_CASE("uniform scaling of the counts leaves the output unchanged") {
  Rng rng(8);
  std::vector<std::vector<double>> counts(20, std::vector<double>(15));
  for (auto& c : counts) {
    for (double& x : c) x = rng.bernoulli(0.3) ? static_cast<double>(1 + rng.below(4)) : 0.0;
  }
  auto scaled = counts;
  for (auto& c : scaled) {
    for (double& x : c) x *= 7.0;
  }
  const auto a = tfidf(counts);
  const auto b = tfidf(scaled);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(a[i][j] == doctest::Approx(b[i][j]).epsilon(1e-12));
  }
}

TEST_CASE("cosine similarity") {
  CHECK(cosine_similarity({1, 0}, {0, 1}) == 0.0);
  CHECK(cosine_similarity({1, 1}, {2, 2}) == doctest::Approx(1.0));
  CHECK(cosine_similarity({0, 0}, {1, 2}) == 0.0);
  CHECK(cosine_similarity({1, 0}, {-1, 0}) == doctest::Approx(-1.0));
}
