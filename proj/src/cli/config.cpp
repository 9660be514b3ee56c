#include "nbf/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nbf/error.hpp"

namespace nbf {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view raw) {
  raw = trim(raw);
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') return std::string(raw);
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 2 < raw.size()) ++i;
    out += raw[i];
  }
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Splits a list value at commas outside quotes.
std::vector<std::string> parse_list(std::string_view raw) {
  raw = trim(raw);
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') throw Error("unterminated list");
    raw = raw.substr(1, raw.size() - 2);
  }
  std::vector<std::string> out;
  std::string current;
  bool in_quotes = false;
  auto flush = [&] {
    std::string item = unquote(current);
    if (!item.empty()) out.push_back(std::move(item));
    current.clear();
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '"' && (i == 0 || raw[i - 1] != '\\')) in_quotes = !in_quotes;
    if (c == ',' && !in_quotes) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view raw) {
  const std::string s = unquote(raw);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error("bad value for " + std::string(key) + ": " + s);
  }
  return value;
}

std::string render_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string render_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += quote(items[i]);
  }
  return out + "]";
}

}  // namespace

void RunConfig::validate() const {
  if (n < 1) throw Error("n must be at least 1");
  if (vocab_size < 1) throw Error("vocab_size must be at least 1");
  if (lsh.tables < 1 || lsh.bits < 1 || lsh.bits > 64) throw Error("bad LSH parameters");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error("ratio must lie in (0, 1)");
  if (epochs < 1) throw Error("epochs must be at least 1");
  if (reps < 1) throw Error("reps must be at least 1");
  if (embed_dim < 1 || hidden_dim < 1) throw Error("model dimensions must be at least 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw Error("dropout must lie in [0, 1)");
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error("threshold must lie in (0, 1)");
  if (setups.empty()) throw Error("no setups selected");
}

ExperimentConfig RunConfig::experiment(std::size_t vocab_dim) const {
  ExperimentConfig c;
  c.model.vocab_dim = vocab_dim;
  c.model.embed_dim = embed_dim;
  c.model.hidden_dim = hidden_dim;
  c.model.seq_len = n;
  c.model.dropout_rate = dropout;
  c.model.threshold = threshold;
  c.epochs = epochs;
  c.compose.ratio = ratio;
  c.compose.lsh = lsh;
  c.repetitions = reps;
  c.base_seed = seed.value_or(0);
  return c;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "corpus") {
    c.corpus = unquote(value);
  } else if (key == "warnings") {
    c.warnings = unquote(value);
  } else if (key == "workdir") {
    c.workdir = unquote(value);
  } else if (key == "kinds") {
    c.kinds = parse_list(value);
  } else if (key == "setups") {
    c.setups.clear();
    for (const std::string& name : parse_list(value)) {
      const auto s = parse_setup(name);
      if (!s) throw Error("unknown setup " + name);
      c.setups.push_back(*s);
    }
  } else if (key == "n") {
    c.n = parse_number<std::size_t>(key, value);
  } else if (key == "vocab_size") {
    c.vocab_size = parse_number<std::size_t>(key, value);
  } else if (key == "tables") {
    c.lsh.tables = parse_number<std::size_t>(key, value);
  } else if (key == "bits") {
    c.lsh.bits = parse_number<std::size_t>(key, value);
  } else if (key == "exhaustive_threshold") {
    c.lsh.exhaustive_threshold = parse_number<std::size_t>(key, value);
  } else if (key == "ratio") {
    c.ratio = parse_number<double>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "epochs") {
    c.epochs = parse_number<std::size_t>(key, value);
  } else if (key == "reps") {
    c.reps = parse_number<std::size_t>(key, value);
  } else if (key == "embed_dim") {
    c.embed_dim = parse_number<std::size_t>(key, value);
  } else if (key == "hidden_dim") {
    c.hidden_dim = parse_number<std::size_t>(key, value);
  } else if (key == "dropout") {
    c.dropout = parse_number<double>(key, value);
  } else if (key == "threshold") {
    c.threshold = parse_number<double>(key, value);
  } else {
    throw Error("unknown config key " + std::string(key));
  }
  c.validate();
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quotes = !in_quotes;
      if (line[i] == '#' && !in_quotes) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw LineError("expected key = value", static_cast<int>(line_no));
    }
    try {
      apply_setting(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw LineError(e.what(), static_cast<int>(line_no));
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), "cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), base);
  } catch (const LineError& e) {
    throw InputError(path.string(), static_cast<std::size_t>(e.line()), e.what());
  }
}

std::string render_config(const RunConfig& c) {
  std::vector<std::string> setups;
  for (Setup s : c.setups) setups.emplace_back(to_string(s));
  std::ostringstream out;
  out << "# nbf run configuration\n"
      << "corpus = " << quote(c.corpus.generic_string()) << '\n'
      << "warnings = " << quote(c.warnings.generic_string()) << '\n'
      << "workdir = " << quote(c.workdir.generic_string()) << '\n'
      << "kinds = " << render_list(c.kinds) << '\n'
      << "setups = " << render_list(setups) << '\n'
      << "n = " << c.n << '\n'
      << "vocab_size = " << c.vocab_size << '\n'
      << "tables = " << c.lsh.tables << '\n'
      << "bits = " << c.lsh.bits << '\n'
      << "exhaustive_threshold = " << c.lsh.exhaustive_threshold << '\n'
      << "ratio = " << render_double(c.ratio) << '\n';
  if (c.seed) out << "seed = " << *c.seed << '\n';
  out << "epochs = " << c.epochs << '\n'
      << "reps = " << c.reps << '\n'
      << "embed_dim = " << c.embed_dim << '\n'
      << "hidden_dim = " << c.hidden_dim << '\n'
      << "dropout = " << render_double(c.dropout) << '\n'
      << "threshold = " << render_double(c.threshold) << '\n';
  return out.str();
}

}  // namespace nbf
