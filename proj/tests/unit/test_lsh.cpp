#include <doctest.h>

#include "lsh_corpus.hpp"
#include "nbf/error.hpp"
#include "nbf/sampler/lsh.hpp"

using namespace nbf;
using namespace nbf::testing;

namespace {

std::vector<TfIdfVector> as_vectors(const std::vector<std::vector<double>>& w, const char* prefix) {
  std::vector<TfIdfVector> out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({w[i], doc_id(prefix, i)});
  return out;
}

std::vector<TfIdfVector> random_pool(std::size_t n, std::size_t dim, std::uint64_t seed,
                                     const char* prefix = "n") {
  Rng rng(seed);
  return as_vectors(tfidf(random_counts(n, dim, 30, rng)), prefix);
}

}  // namespace

TEST_CASE("signatures are scale invariant and antipodes are complementary") {
  const auto pool = random_pool(20, 40, 1);
  const LshIndex index(pool, 8, 16, 3);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(40);
    for (double& x : v) x = rng.normal();
    auto scaled = v;
    auto neg = v;
    for (double& x : scaled) x *= 3.5;
    for (double& x : neg) x = -x;
    for (std::size_t t = 0; t < index.tables(); ++t) {
      CHECK(index.signature(v, t) == index.signature(scaled, t));
      CHECK((index.signature(v, t) ^ index.signature(neg, t)) == 0xffffULL);
    }
  }
}

TEST_CASE("every indexed vector is its own candidate") {
  const auto pool = random_pool(100, 60, 2);
  const LshIndex index(pool, 4, 12, 9);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto c = index.candidates(pool[i].weights);
    CHECK(std::find(c.begin(), c.end(), i) != c.end());
    CHECK(std::is_sorted(c.begin(), c.end()));
  }
}

TEST_CASE("dimension mismatches and bad parameters are rejected") {
  auto pool = random_pool(5, 10, 1);
  pool[3].weights.pop_back();
  CHECK_THROWS_AS(LshIndex(pool, 8, 16, 1), Error);
  const auto ok = random_pool(5, 10, 1);
  CHECK_THROWS_AS(LshIndex(ok, 0, 16, 1), Error);
  CHECK_THROWS_AS(LshIndex(ok, 8, 65, 1), Error);
  const LshIndex index(ok, 2, 4, 1);
  CHECK_THROWS_AS(index.signature(std::vector<double>(9, 1.0), 0), Error);
}

TEST_CASE("same seed gives the same index") {
  const auto pool = random_pool(30, 20, 4);
  const LshIndex a(pool, 3, 10, 77);
  const LshIndex b(pool, 3, 10, 77);
  for (const auto& v : pool) {
    for (std::size_t t = 0; t < 3; ++t) CHECK(a.signature(v.weights, t) == b.signature(v.weights, t));
  }
}

TEST_CASE("near-duplicate queries find their exact nearest neighbour") {
  Rng rng(31);
  const auto base = random_counts(500, 1000, 50, rng);
  std::vector<std::vector<double>> all = base;
  for (const auto& d : base) all.push_back(perturb(d, 1, rng));
  const auto w = tfidf(all);
  const std::vector<std::vector<double>> indexed(w.begin(), w.begin() + 500);
  const auto pool = as_vectors(indexed, "n");
  const LshIndex index(pool, 8, 16, 1234);
  std::size_t hits = 0;
  for (std::size_t q = 500; q < 1000; ++q) {
    const long got = index.nearest(w[q]);
    hits += (got >= 0 && static_cast<std::size_t>(got) == brute_nearest(w[q], pool)) ? 1 : 0;
  }
  MESSAGE("recall@1 = " << hits / 500.0);
  CHECK(hits >= 450);
}

TEST_CASE("ann_select basics") {
  const auto pool = random_pool(40, 30, 6);
  const LshIndex index(pool, 8, 16, 1);
  LshParams params;

  SUBCASE("identical vector is picked at distance zero") {
    const std::vector<TfIdfVector> buggy{{pool[17].weights, "b0"}};
    CHECK(ann_select(buggy, pool, index, params) == std::vector<std::string>{pool[17].method_id});
  }
  SUBCASE("identical buggy vectors get distinct neighbours") {
    const std::vector<TfIdfVector> buggy{{pool[3].weights, "b0"}, {pool[3].weights, "b1"}};
    const auto picked = ann_select(buggy, pool, index, params);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0] == pool[3].method_id);
    CHECK(picked[1] != picked[0]);
    CHECK(picked == brute_select(buggy, pool));
  }
  SUBCASE("empty buggy set") { CHECK(ann_select({}, pool, index, params).empty()); }
  SUBCASE("cannot balance") {
    const auto small = random_pool(2, 30, 7);
    const LshIndex small_index(small, 2, 4, 1);
    const auto buggy = random_pool(3, 30, 8, "b");
    CHECK_THROWS_AS(ann_select(buggy, small, small_index, params), Error);
  }
}

TEST_CASE("ann_select matches the greedy exhaustive oracle") {
  const auto pool = random_pool(300, 80, 10);
  const auto buggy = random_pool(120, 80, 11, "b");
  const LshIndex index(pool, 8, 16, 5);
  LshParams exhaustive;
  CHECK(ann_select(buggy, pool, index, exhaustive) == brute_select(buggy, pool));

  // Forced LSH path: selections stay distinct and complete.
  LshParams lsh;
  lsh.exhaustive_threshold = 0;
  const auto picked = ann_select(buggy, pool, index, lsh);
  CHECK(picked.size() == buggy.size());
  auto sorted = picked;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::unique(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("with full-recall LSH the forced LSH path equals the oracle") {
  // One bit per table and many tables put every vector in every candidate set.
  const auto pool = random_pool(60, 25, 12);
  const auto buggy = random_pool(30, 25, 13, "b");
  const LshIndex index(pool, 64, 1, 3);
  for (const auto& b : buggy) REQUIRE(index.candidates(b.weights).size() == pool.size());
  LshParams lsh;
  lsh.exhaustive_threshold = 0;
  CHECK(ann_select(buggy, pool, index, lsh) == brute_select(buggy, pool));
}
