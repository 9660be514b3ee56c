#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nbf/ingest/token.hpp"

namespace nbf {

inline constexpr std::string_view kPadLexeme = "<PAD>";

struct RawMethod {
  std::string method_id;  // "<file>:<startline>:<fnv1a64 of signature>"
  std::string file;
  std::vector<Token> tokens;  // signature through closing brace
};

// Fixed-length window over a method: the first n tokens, PAD-suffixed.
class MethodSequence {
 public:
  MethodSequence() = default;
  MethodSequence(std::string method_id, std::string file,
                 std::vector<Token> real_tokens, std::size_t n);

  const std::string& method_id() const { return method_id_; }
  const std::string& file() const { return file_; }

  std::size_t size() const { return n_; }
  std::size_t real_length() const { return real_.size(); }
  bool is_pad(std::size_t i) const { return i >= real_.size(); }
  std::string_view lexeme(std::size_t i) const;
  const std::vector<Token>& real_tokens() const { return real_; }

  // Line of the last non-PAD token; 0 for an empty window.
  int last_real_line() const;

 private:
  std::string method_id_;
  std::string file_;
  std::vector<Token> real_;
  std::size_t n_ = 0;
};

std::string make_method_id(std::string_view file, int start_line,
                           const std::vector<Token>& signature);

// Finds every method with a body declared directly in a class body (methods
// nested inside other method bodies stay part of their enclosing method).
// Constructors, initializer blocks and bodiless declarations are skipped.
std::vector<RawMethod> extract_methods(const std::vector<Token>& tokens,
                                       std::string_view file);

MethodSequence truncate(const RawMethod& method, std::size_t n);

}  // namespace nbf
