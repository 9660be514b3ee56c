#include "nbf/cli/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "nbf/error.hpp"
#include "nbf/ingest/corpus_io.hpp"
#include "nbf/ingest/lexer.hpp"
#include "nbf/rng.hpp"

namespace nbf {

namespace fs = std::filesystem;

namespace {

using Lexemes = std::vector<std::string>;

// Filler statements. `$` identifier, `#` int literal, `@` string literal.
constexpr const char* kFiller[] = {
    "int $ = $ + # ;",
    "$ = $ * # ;",
    "$ . $ ( $ ) ;",
    "$ . $ ( ) ;",
    "if ( $ > # ) { $ = $ ; }",
    "for ( int i = 0 ; i < $ ; i ++ ) { $ += i ; }",
    "String $ = @ ;",
    "$ . add ( $ ) ;",
    "while ( $ . hasNext ( ) ) { $ = $ . next ( ) ; }",
    "System . out . println ( $ ) ;",
    "List < String > $ = new ArrayList < > ( ) ;",
    "Long $ = Long . valueOf ( $ ) ;",
    "StringBuilder $ = new StringBuilder ( $ ) ;",
    "Object $ = new Object ( ) ;",
    "double $ = Math . max ( $ , # ) ;",
    "boolean $ = $ . equals ( $ ) ;",
    "try { $ . close ( ) ; } catch ( Exception e ) { $ ( e ) ; }",
    "$ [ # ] = $ ;",
    "Map < String , Long > $ = new HashMap < > ( ) ;",
    "if ( $ == null ) { $ = @ ; }",
};

constexpr const char* kModifiers[] = {"public", "private", "protected", "public static",
                                      "static", "public final"};
constexpr const char* kReturnTypes[] = {"void", "int", "String", "boolean", "long"};
constexpr const char* kParamTypes[] = {"int", "String", "long", "List < String >", "Object"};

constexpr const char* kHeads[] = {
    "count", "index", "value", "buffer", "item",  "node",   "entry",  "key",    "total",
    "result", "size", "name",  "path",   "state", "cache",  "offset", "limit",  "source",
    "target", "flag", "data",  "token",  "record", "header", "field", "block",  "config",
    "input", "output", "queue", "event",  "user",  "owner",  "child",  "parent", "range",
    "width", "height"};
constexpr const char* kTails[] = {"",     "Map",   "List", "Id",    "Count", "Set",  "Ref",
                                  "Info", "Impl",  "Node", "Value", "Buf",   "Tmp",  "Old",
                                  "New",  "Next",  "Prev", "Max",   "Min",   "Sum",  "Key",
                                  "Name", "Index", "Str",  "Len",   "Pos",   "Flag", "Data",
                                  "Ptr",  "Item"};
constexpr const char* kWords[] = {"ok", "none", "error", "done", "retry", "empty", "utf-8", "x"};

Lexemes split_words(std::string_view text) {
  Lexemes out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

class Generator {
 public:
  Generator(std::uint64_t seed, std::size_t pool) : rng_(seed) {
    for (const char* t : kTails) {
      for (const char* h : kHeads) names_.push_back(std::string(h) + t);
    }
    names_.resize(std::min(pool, names_.size()));
  }

  // Skewed towards the front of the pool so a few names dominate.
  std::string name() {
    const double u = rng_.uniform();
    return names_[static_cast<std::size_t>(u * u * static_cast<double>(names_.size()))];
  }

  Lexemes instantiate(std::string_view pattern) {
    Lexemes out;
    for (std::string& w : split_words(pattern)) {
      if (w == "$") {
        out.push_back(name());
      } else if (w == "#") {
        out.push_back(std::to_string(rng_.below(100)));
      } else if (w == "@") {
        out.push_back(std::string("\"") + kWords[rng_.below(std::size(kWords))] + "\"");
      } else {
        out.push_back(std::move(w));
      }
    }
    return out;
  }

  Lexemes filler() { return instantiate(kFiller[rng_.below(std::size(kFiller))]); }

  Lexemes planted(std::string_view pattern) {
    Lexemes out{"Object", name(), "="};
    for (std::string& w : instantiate(pattern)) out.push_back(std::move(w));
    out.push_back(";");
    return out;
  }

  struct Method {
    Lexemes signature;  // through the opening brace
    std::vector<Lexemes> body;
    std::size_t planted_at = 0;  // statement index, valid when planted
    bool has_plant = false;
  };

  Method method(std::size_t window, const Lexemes* plant) {
    Method m;
    m.signature = split_words(kModifiers[rng_.below(std::size(kModifiers))]);
    const std::string ret = kReturnTypes[rng_.below(std::size(kReturnTypes))];
    m.signature.push_back(ret);
    m.signature.push_back(name());
    m.signature.push_back("(");
    const std::size_t params = rng_.below(4);
    for (std::size_t p = 0; p < params; ++p) {
      if (p) m.signature.push_back(",");
      for (std::string& w : split_words(kParamTypes[rng_.below(std::size(kParamTypes))])) {
        m.signature.push_back(std::move(w));
      }
      m.signature.push_back(name() + std::to_string(p));
    }
    m.signature.push_back(")");
    m.signature.push_back("{");

    const std::size_t statements = 4 + rng_.below(13);
    for (std::size_t s = 0; s < statements; ++s) m.body.push_back(filler());
    if (ret != "void") m.body.push_back({"return", name(), ";"});

    if (plant) {
      // Slots whose statement would still end inside the window.
      std::vector<std::size_t> slots;
      std::size_t offset = m.signature.size();
      for (std::size_t k = 0; k <= m.body.size(); ++k) {
        if (offset + plant->size() <= window) slots.push_back(k);
        if (k < m.body.size()) offset += m.body[k].size();
      }
      if (slots.empty()) throw Error("window too short to plant the pattern");
      m.planted_at = slots[rng_.below(slots.size())];
      m.body.insert(m.body.begin() + static_cast<std::ptrdiff_t>(m.planted_at), *plant);
      m.has_plant = true;
    }
    return m;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  std::vector<std::string> names_;
};

std::string join(const Lexemes& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

void SynthSpec::validate() const {
  if (methods < 1) throw Error("synth: method count must be positive");
  if (!(bug_rate > 0.0 && bug_rate < 1.0)) throw Error("synth: bug rate must lie in (0, 1)");
  if (!(confounder_rate >= 0.0 && confounder_rate <= 1.0)) {
    throw Error("synth: confounder rate must lie in [0, 1]");
  }
  if (split_words(trigger).empty()) throw Error("synth: empty trigger pattern");
  if (confounder_rate > 0.0 && confounders.empty()) throw Error("synth: no confounder patterns");
  if (kind.empty()) throw Error("synth: empty kind");
  if (names < 1) throw Error("synth: identifier pool must not be empty");
  if (names > std::size(kHeads) * std::size(kTails)) {
    throw Error("synth: identifier pool holds at most " +
                std::to_string(std::size(kHeads) * std::size(kTails)) + " names");
  }
  if (methods_per_file < 1) throw Error("synth: methods_per_file must be positive");
}

SynthCorpus synthesize(const SynthSpec& spec) {
  spec.validate();
  Generator gen(spec.seed, spec.names);

  const auto n_buggy = static_cast<std::size_t>(
      std::llround(spec.bug_rate * static_cast<double>(spec.methods)));
  const auto n_confounded = static_cast<std::size_t>(
      std::llround(spec.confounder_rate * static_cast<double>(spec.methods - n_buggy)));

  // role[i]: 1 buggy, 2 confounded, 0 plain
  std::vector<std::size_t> order(spec.methods);
  std::iota(order.begin(), order.end(), 0);
  gen.rng().shuffle(order);
  std::vector<int> role(spec.methods, 0);
  for (std::size_t i = 0; i < n_buggy; ++i) role[order[i]] = 1;
  for (std::size_t i = 0; i < n_confounded; ++i) role[order[n_buggy + i]] = 2;

  SynthCorpus out;
  std::size_t next = 0;
  for (std::size_t file_no = 0; next < spec.methods; ++file_no) {
    char cls[32];
    std::snprintf(cls, sizeof cls, "Unit%04zu", file_no);
    const std::string rel = std::string("synth/") + cls + ".java";

    std::string text = "package synth;\n\npublic class " + std::string(cls) + " {\n";
    int line = 4;
    struct Planted {
      int line;
      int role;
    };
    std::vector<Planted> planted;
    for (std::size_t k = 0; k < spec.methods_per_file && next < spec.methods; ++k, ++next) {
      Lexemes plant;
      if (role[next] == 1) {
        plant = gen.planted(spec.trigger);
      } else if (role[next] == 2) {
        plant = gen.planted(spec.confounders[gen.rng().below(spec.confounders.size())]);
      }
      const auto m = gen.method(spec.window, role[next] ? &plant : nullptr);
      if (k) {
        text += '\n';
        ++line;
      }
      text += "  " + join(m.signature) + '\n';
      const int first_body_line = line + 1;
      for (const auto& stmt : m.body) text += "    " + join(stmt) + '\n';
      text += "  }\n";
      planted.push_back({m.has_plant ? first_body_line + static_cast<int>(m.planted_at) : 0,
                         role[next]});
      line += static_cast<int>(m.body.size()) + 2;
    }
    text += "}\n";

    auto methods = extract_methods(lex(text), rel);
    if (methods.size() != planted.size()) {
      throw Error("synth: extracted " + std::to_string(methods.size()) + " methods from " + rel +
                  ", generated " + std::to_string(planted.size()));
    }
    for (std::size_t k = 0; k < methods.size(); ++k) {
      if (planted[k].role == 1) {
        out.warnings.push_back({spec.kind, planted[k].line, methods[k].method_id});
        out.buggy_ids.push_back(methods[k].method_id);
      } else if (planted[k].role == 2) {
        out.confounded_ids.push_back(methods[k].method_id);
      }
      out.methods.push_back(std::move(methods[k]));
    }
    out.sources.emplace(rel, std::move(text));
  }
  return out;
}

void write_synth(const SynthCorpus& corpus, const fs::path& out_dir, const fs::path& source_dir) {
  fs::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "corpus.jsonl", std::ios::binary);
    write_methods_jsonl(f, corpus.methods);
    if (!f) throw Error("cannot write " + (out_dir / "corpus.jsonl").string());
  }
  {
    std::ofstream f(out_dir / "warnings.jsonl", std::ios::binary);
    write_warnings_jsonl(f, corpus.warnings);
    if (!f) throw Error("cannot write " + (out_dir / "warnings.jsonl").string());
  }
  if (source_dir.empty()) return;
  for (const auto& [rel, text] : corpus.sources) {
    const fs::path p = source_dir / rel;
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + p.string());
  }
}

}  // namespace nbf
