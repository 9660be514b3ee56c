#include "nbf/sampler/compose.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"
#include "nbf/rng.hpp"

namespace nbf {

namespace {

constexpr std::pair<Setup, std::string_view> kSetupNames[] = {
    {Setup::BS, "BS"}, {Setup::BANNS, "BANNS"}, {Setup::SS, "SS"}, {Setup::BB, "BB"}};

using Pool = std::vector<EncodedSequence>;

Pool sorted_pool(const Pool& pool, int expected_label) {
  Pool out = pool;
  for (const auto& s : out) {
    if (s.label != expected_label) {
      throw Error("example " + s.method_id + " has label " + std::to_string(s.label) +
                  ", expected " + std::to_string(expected_label));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.method_id < b.method_id; });
  return out;
}

std::pair<Pool, Pool> split_pool(Pool pool, double ratio, Rng& rng, const char* side) {
  rng.shuffle(pool);
  const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(pool.size())));
  Pool train(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
  Pool validation(pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
  if (train.empty() || validation.empty()) {
    throw Error(std::string("split leaves the ") + side + " " +
                (train.empty() ? "training" : "validation") + " pool empty");
  }
  return {std::move(train), std::move(validation)};
}

// Uniform sample without replacement, in draw order.
Pool sample(Pool pool, std::size_t k, Rng& rng) {
  if (pool.size() < k) {
    throw Error("cannot balance: need " + std::to_string(k) + " non-buggy examples, have " +
                std::to_string(pool.size()));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

Pool ann_sample(const Pool& buggy_train, const Pool& non_buggy_train, const Vocabulary& vocab,
                std::uint64_t seed, const LshParams& lsh) {
  std::vector<std::vector<double>> counts;
  std::vector<std::string> ids;
  for (const Pool* p : {&buggy_train, &non_buggy_train}) {
    for (const auto& s : *p) {
      counts.push_back(freq_vector(s, vocab));
      ids.push_back(s.method_id);
    }
  }
  std::vector<TfIdfVector> vectors = tfidf(counts, ids);
  std::vector<TfIdfVector> buggy(vectors.begin(),
                                 vectors.begin() + static_cast<std::ptrdiff_t>(buggy_train.size()));
  std::vector<TfIdfVector> non_buggy(vectors.begin() + static_cast<std::ptrdiff_t>(buggy_train.size()),
                                     vectors.end());

  const LshIndex index(non_buggy, lsh.tables, lsh.bits, mix_seed(seed, 1));
  const std::vector<std::string> picked = ann_select(buggy, non_buggy, index, lsh);

  std::unordered_map<std::string, const EncodedSequence*> by_id;
  for (const auto& s : non_buggy_train) by_id.emplace(s.method_id, &s);
  Pool out;
  out.reserve(picked.size());
  for (const auto& id : picked) out.push_back(*by_id.at(id));
  return out;
}

void append(Pool& dst, const Pool& src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

std::string_view to_string(Setup setup) {
  for (const auto& [s, name] : kSetupNames) {
    if (s == setup) return name;
  }
  return "SS";
}

std::optional<Setup> parse_setup(std::string_view name) {
  for (const auto& [s, n] : kSetupNames) {
    if (n == name) return s;
  }
  if (name == "B-ANN-S" || name == "BANNS") return Setup::BANNS;
  return std::nullopt;
}

SplitCounts DatasetSplit::counts() const {
  SplitCounts c;
  for (const auto& s : train) (s.label == 1 ? c.train_buggy : c.train_non_buggy)++;
  for (const auto& s : validation) (s.label == 1 ? c.validation_buggy : c.validation_non_buggy)++;
  return c;
}

DatasetSplit compose(Setup setup, const std::vector<EncodedSequence>& buggy,
                     const std::vector<EncodedSequence>& non_buggy, const Vocabulary& vocab,
                     std::uint64_t seed, const ComposeOptions& options) {
  if (buggy.empty() || non_buggy.empty()) {
    throw Error("compose needs both buggy and non-buggy examples");
  }
  if (!(options.ratio > 0.0 && options.ratio < 1.0)) {
    throw Error("split ratio must lie in (0, 1)");
  }

  Rng rng(seed);
  auto [buggy_train, buggy_val] = split_pool(sorted_pool(buggy, 1), options.ratio, rng, "buggy");
  auto [clean_train, clean_val] =
      split_pool(sorted_pool(non_buggy, 0), options.ratio, rng, "non-buggy");

  DatasetSplit out;
  out.setup = setup;
  out.seed = seed;
  append(out.train, buggy_train);
  append(out.validation, buggy_val);

  switch (setup) {
    case Setup::SS:
      append(out.train, clean_train);
      append(out.validation, clean_val);
      break;
    case Setup::BS:
      append(out.train, sample(clean_train, buggy_train.size(), rng));
      append(out.validation, clean_val);
      break;
    case Setup::BB:
      append(out.train, sample(clean_train, buggy_train.size(), rng));
      append(out.validation, sample(clean_val, buggy_val.size(), rng));
      break;
    case Setup::BANNS: {
      Pool ordered = buggy_train;
      std::sort(ordered.begin(), ordered.end(),
                [](const auto& a, const auto& b) { return a.method_id < b.method_id; });
      append(out.train, ann_sample(ordered, clean_train, vocab, seed, options.lsh));
      append(out.validation, clean_val);
      break;
    }
  }
  return out;
}

void write_split_jsonl(std::ostream& out, const DatasetSplit& split) {
  const SplitCounts c = split.counts();
  const nlohmann::json header{{"setup", std::string(to_string(split.setup))},
                              {"seed", split.seed},
                              {"counts",
                               {{"train_buggy", c.train_buggy},
                                {"train_non_buggy", c.train_non_buggy},
                                {"validation_buggy", c.validation_buggy},
                                {"validation_non_buggy", c.validation_non_buggy}}}};
  out << header.dump() << '\n';
  auto rows = [&](const std::vector<EncodedSequence>& part, const char* name) {
    for (const auto& s : part) {
      out << nlohmann::json{{"part", name},
                            {"method_id", s.method_id},
                            {"label", s.label},
                            {"indices", s.indices}}
                 .dump()
          << '\n';
    }
  };
  rows(split.train, "train");
  rows(split.validation, "validation");
}

DatasetSplit read_split_jsonl(std::istream& in) {
  DatasetSplit split;
  std::string line;
  if (!std::getline(in, line)) throw Error("split file is empty");
  const auto header = nlohmann::json::parse(line);
  const auto setup = parse_setup(header.at("setup").get<std::string>());
  if (!setup) throw Error("unknown setup in split header");
  split.setup = *setup;
  split.seed = header.at("seed").get<std::uint64_t>();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = nlohmann::json::parse(line);
    EncodedSequence s;
    s.method_id = row.at("method_id").get<std::string>();
    s.label = row.at("label").get<int>();
    s.indices = row.at("indices").get<std::vector<TokenIndex>>();
    (row.at("part").get<std::string>() == "train" ? split.train : split.validation)
        .push_back(std::move(s));
  }
  return split;
}

}  // namespace nbf
