#include "nbf/ingest/methods.hpp"

#include <algorithm>
#include <array>

#include "nbf/error.hpp"
#include "nbf/hash.hpp"

namespace nbf {

namespace {

constexpr std::array<std::string_view, 14> kModifiers = {
    "public",   "protected", "private",      "static",   "final",
    "abstract", "native",    "synchronized", "strictfp", "default",
    "transient", "volatile", "sealed",       "non-sealed"};

bool is(const Token& t, std::string_view lexeme) { return t.lexeme == lexeme; }

bool is_modifier(const Token& t) {
  return std::find(kModifiers.begin(), kModifiers.end(), t.lexeme) != kModifiers.end();
}

using Span = std::vector<const Token*>;

// Index just past a run of annotations starting at `i`, or `i` if none.
std::size_t skip_annotation(const Span& h, std::size_t i) {
  if (i >= h.size() || !is(*h[i], "@") || i + 1 >= h.size() ||
      h[i + 1]->cls != TokenClass::identifier) {
    return i;
  }
  i += 2;
  while (i + 1 < h.size() && is(*h[i], ".") && h[i + 1]->cls == TokenClass::identifier) {
    i += 2;
  }
  if (i < h.size() && is(*h[i], "(")) {
    int depth = 0;
    for (; i < h.size(); ++i) {
      if (is(*h[i], "(")) ++depth;
      if (is(*h[i], ")") && --depth == 0) return i + 1;
    }
  }
  return i;
}

enum class HeaderKind { type_body, method, enum_constant, other };

struct Header {
  HeaderKind kind = HeaderKind::other;
  std::string type_name;  // for type_body
  bool is_enum = false;
};

bool allowed_after_params(const Token& t) {
  if (t.cls == TokenClass::identifier) return true;
  static constexpr std::array<std::string_view, 11> kOk = {
      "throws", ".", ",", "[", "]", "@", "<", ">", "?", "&", "extends"};
  return std::find(kOk.begin(), kOk.end(), t.lexeme) != kOk.end() || is(t, "super");
}

Header classify(const Span& h, const std::string& enclosing, bool enclosing_is_enum) {
  Header out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const Token& t = *h[k];
    const bool after_dot = k > 0 && is(*h[k - 1], ".");
    const bool type_kw = is(t, "class") || is(t, "interface") || is(t, "enum") ||
                         (is(t, "record") && k + 1 < h.size() &&
                          h[k + 1]->cls == TokenClass::identifier);
    if (type_kw && !after_dot && t.cls != TokenClass::literal) {
      out.kind = HeaderKind::type_body;
      out.is_enum = is(t, "enum");
      if (k + 1 < h.size()) out.type_name = h[k + 1]->lexeme;
      return out;
    }
  }
  if (h.empty()) return out;
  if (enclosing_is_enum && skip_annotation(h, 0) + 1 == h.size() &&
      h.back()->cls == TokenClass::identifier) {
    out.kind = HeaderKind::enum_constant;  // constant body without arguments
    return out;
  }

  // Last top-level ')' followed only by a throws clause or array dims.
  std::size_t close = h.size();
  for (std::size_t k = h.size(); k-- > 0;) {
    if (is(*h[k], ")")) {
      close = k;
      break;
    }
    if (!allowed_after_params(*h[k])) return out;
  }
  if (close == h.size()) return out;
  if (close + 1 < h.size() && !is(*h[close + 1], "throws") && !is(*h[close + 1], "[")) {
    return out;
  }
  int depth = 0;
  std::size_t open = close;
  for (std::size_t k = close + 1; k-- > 0;) {
    if (is(*h[k], ")")) ++depth;
    if (is(*h[k], "(") && --depth == 0) {
      open = k;
      break;
    }
  }
  if (depth != 0 || open == 0 || h[open - 1]->cls != TokenClass::identifier) return out;
  const std::size_t name_at = open - 1;

  Span rest;
  for (std::size_t k = 0; k < name_at;) {
    const std::size_t next = skip_annotation(h, k);
    if (next != k) {
      k = next;
      continue;
    }
    if (is(*h[k], "=") || is(*h[k], "new") || is(*h[k], "->")) return out;
    if (!is_modifier(*h[k])) rest.push_back(h[k]);
    ++k;
  }
  if (rest.empty()) {
    if (enclosing_is_enum && h[name_at]->lexeme != enclosing) {
      out.kind = HeaderKind::enum_constant;
    }
    return out;
  }
  if (h[name_at]->lexeme == enclosing) return out;  // generic constructor
  out.kind = HeaderKind::method;
  return out;
}

struct Frame {
  bool container = true;   // class body or compilation unit
  std::string type_name;
  bool is_enum = false;
  std::size_t decl_start = 0;
  // Opaque blocks (method bodies, initializers, lambdas, ...).
  int depth = 0;
  bool is_method = false;
  std::size_t method_start = 0;
  int open_line = 0;
};

}  // namespace

MethodSequence::MethodSequence(std::string method_id, std::string file,
                               std::vector<Token> real_tokens, std::size_t n)
    : method_id_(std::move(method_id)),
      file_(std::move(file)),
      real_(std::move(real_tokens)),
      n_(n) {
  if (real_.size() > n_) real_.resize(n_);
}

std::string_view MethodSequence::lexeme(std::size_t i) const {
  return is_pad(i) ? kPadLexeme : std::string_view(real_[i].lexeme);
}

int MethodSequence::last_real_line() const {
  return real_.empty() ? 0 : real_.back().line;
}

std::string make_method_id(std::string_view file, int start_line,
                           const std::vector<Token>& signature) {
  std::uint64_t h = kFnvOffset;
  for (std::size_t i = 0; i < signature.size(); ++i) {
    if (i > 0) h = fnv1a64(" ", h);
    h = fnv1a64(signature[i].lexeme, h);
  }
  std::string id(file);
  id += ':';
  id += std::to_string(start_line);
  id += ':';
  id += to_hex(h);
  return id;
}

std::vector<RawMethod> extract_methods(const std::vector<Token>& tokens,
                                       std::string_view file) {
  std::vector<RawMethod> out;
  std::vector<Frame> stack(1);

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    Frame& top = stack.back();

    if (!top.container) {
      if (is(t, "{")) ++top.depth;
      if (!is(t, "}") || --top.depth > 0) continue;
      if (top.is_method) {
        RawMethod m;
        m.file = std::string(file);
        m.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(top.method_start),
                        tokens.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        std::vector<Token> signature;
        for (const Token& s : m.tokens) {
          if (is(s, "{")) break;
          signature.push_back(s);
        }
        m.method_id = make_method_id(file, m.tokens.front().line, signature);
        out.push_back(std::move(m));
      }
      stack.pop_back();
      stack.back().decl_start = i + 1;
      continue;
    }

    if (is(t, ";")) {
      top.decl_start = i + 1;
    } else if (is(t, "}")) {
      if (stack.size() == 1) throw ExtractError("unbalanced closing brace", t.line);
      stack.pop_back();
      stack.back().decl_start = i + 1;
    } else if (is(t, "{")) {
      std::size_t start = top.decl_start;
      while (start < i && is(tokens[start], ",")) ++start;
      Span header;
      for (std::size_t k = start; k < i; ++k) header.push_back(&tokens[k]);
      const Header kind = classify(header, top.type_name, top.is_enum);

      Frame f;
      f.open_line = t.line;
      f.decl_start = i + 1;
      switch (kind.kind) {
        case HeaderKind::type_body:
          f.type_name = kind.type_name;
          f.is_enum = kind.is_enum;
          break;
        case HeaderKind::enum_constant:
          break;
        case HeaderKind::method:
          f.container = false;
          f.depth = 1;
          f.is_method = true;
          f.method_start = start;
          break;
        case HeaderKind::other:
          f.container = false;
          f.depth = 1;
          break;
      }
      stack.push_back(std::move(f));
    }
  }
  if (stack.size() > 1) {
    throw ExtractError("unbalanced opening brace", stack.back().open_line);
  }
  return out;
}

MethodSequence truncate(const RawMethod& method, std::size_t n) {
  if (n == 0) throw Error("sequence length must be positive");
  const std::size_t keep = std::min(n, method.tokens.size());
  std::vector<Token> window(method.tokens.begin(),
                            method.tokens.begin() + static_cast<std::ptrdiff_t>(keep));
  return MethodSequence(method.method_id, method.file, std::move(window), n);
}

}  // namespace nbf
