#include "nbf/ingest/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nbf/error.hpp"
#include "nbf/ingest/lexer.hpp"

namespace nbf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot open file");
  return in;
}

// Calls fn(json, line_no) for every non-blank line.
template <typename Fn>
void for_each_json_line(const fs::path& path, Fn&& fn) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(path.string(), line_no, std::string("malformed JSON: ") + e.what());
    }
    try {
      fn(row, line_no);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(path.string(), line_no, std::string("bad record: ") + e.what());
    }
  }
}

json token_to_json(const Token& t) {
  return json{{"lexeme", t.lexeme}, {"class", std::string(to_string(t.cls))}, {"line", t.line}};
}

Token token_from_json(const json& j) {
  Token t;
  t.lexeme = j.at("lexeme").get<std::string>();
  const auto cls = parse_token_class(j.at("class").get<std::string>());
  if (!cls) throw Error("unknown token class " + j.at("class").dump());
  t.cls = *cls;
  t.line = j.at("line").get<int>();
  if (t.lexeme.empty() || t.line < 1) throw Error("invalid token " + j.dump());
  return t;
}

std::vector<Token> tokens_from_json(const json& arr) {
  std::vector<Token> out;
  out.reserve(arr.size());
  for (const json& t : arr) out.push_back(token_from_json(t));
  return out;
}

json tokens_to_json(const std::vector<Token>& tokens) {
  json arr = json::array();
  for (const Token& t : tokens) arr.push_back(token_to_json(t));
  return arr;
}

std::vector<RawMethod> load_source_dir(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(root).generic_string() <
           b.lexically_relative(root).generic_string();
  });

  std::vector<RawMethod> out;
  for (const fs::path& file : files) {
    std::ifstream in = open_input(file);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string rel = file.lexically_relative(root).generic_string();
    try {
      auto methods = extract_methods(lex(buf.str()), rel);
      std::move(methods.begin(), methods.end(), std::back_inserter(out));
    } catch (const LineError& e) {
      throw InputError(file.string(), static_cast<std::size_t>(e.line()), e.what());
    }
  }
  return out;
}

}  // namespace

std::vector<RawMethod> load_corpus(const fs::path& path) {
  if (fs::is_directory(path)) return load_source_dir(path);
  return read_methods_jsonl(path);
}

std::vector<RawMethod> read_methods_jsonl(const fs::path& path) {
  std::vector<RawMethod> out;
  for_each_json_line(path, [&](const json& row, std::size_t) {
    RawMethod m;
    m.method_id = row.at("method_id").get<std::string>();
    m.file = row.at("file").get<std::string>();
    m.tokens = tokens_from_json(row.at("tokens"));
    out.push_back(std::move(m));
  });
  return out;
}

void write_methods_jsonl(std::ostream& out, const std::vector<RawMethod>& methods) {
  for (const RawMethod& m : methods) {
    const json row{{"method_id", m.method_id}, {"file", m.file}, {"tokens", tokens_to_json(m.tokens)}};
    out << row.dump() << '\n';
  }
}

std::vector<Warning> read_warnings_jsonl(const fs::path& path) {
  std::vector<Warning> out;
  for_each_json_line(path, [&](const json& row, std::size_t) {
    Warning w;
    w.kind = row.at("kind").get<std::string>();
    w.line = row.at("line").get<int>();
    w.method_id = row.at("method_id").get<std::string>();
    if (w.line < 1) throw Error("warning line must be positive");
    out.push_back(std::move(w));
  });
  return out;
}

void write_warnings_jsonl(std::ostream& out, const std::vector<Warning>& warnings) {
  for (const Warning& w : warnings) {
    out << json{{"kind", w.kind}, {"line", w.line}, {"method_id", w.method_id}}.dump() << '\n';
  }
}

void write_labeled_jsonl(std::ostream& out, const LabeledCorpus& corpus) {
  auto write_side = [&](const std::vector<MethodSequence>& side, int label) {
    for (const MethodSequence& s : side) {
      const json row{{"method_id", s.method_id()},
                     {"file", s.file()},
                     {"label", label},
                     {"n", s.size()},
                     {"tokens", tokens_to_json(s.real_tokens())}};
      out << row.dump() << '\n';
    }
  };
  write_side(corpus.buggy, 1);
  write_side(corpus.non_buggy, 0);
}

LabeledCorpus read_labeled_jsonl(const fs::path& path, const std::string& kind) {
  LabeledCorpus out;
  out.kind = kind;
  for_each_json_line(path, [&](const json& row, std::size_t) {
    MethodSequence seq(row.at("method_id").get<std::string>(),
                       row.at("file").get<std::string>(), tokens_from_json(row.at("tokens")),
                       row.at("n").get<std::size_t>());
    const int label = row.at("label").get<int>();
    if (label != 0 && label != 1) throw Error("label must be 0 or 1");
    (label == 1 ? out.buggy : out.non_buggy).push_back(std::move(seq));
  });
  return out;
}

}  // namespace nbf
