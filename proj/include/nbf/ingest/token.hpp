#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace nbf {

enum class TokenClass { keyword, identifier, separator, op, literal };

std::string_view to_string(TokenClass cls);
std::optional<TokenClass> parse_token_class(std::string_view name);

struct Token {
  std::string lexeme;
  TokenClass cls = TokenClass::identifier;
  int line = 1;

  friend bool operator==(const Token&, const Token&) = default;
};

}  // namespace nbf
