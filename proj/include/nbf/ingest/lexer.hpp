#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nbf/ingest/token.hpp"

namespace nbf {

// Splits Java source into tokens. Comments and whitespace are dropped.
// Throws LexError on unterminated strings, chars or block comments, and on
// characters that cannot start any token.
std::vector<Token> lex(std::string_view source);

// Joins lexemes with single spaces, one source line per output line. Lexing
// the result reproduces the original token stream.
std::string render(const std::vector<Token>& tokens);

bool is_java_keyword(std::string_view word);

}  // namespace nbf
