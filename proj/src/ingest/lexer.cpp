#include "nbf/ingest/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "nbf/error.hpp"

namespace nbf {

namespace {

constexpr std::array<std::string_view, 51> kKeywords = {
    "_",          "abstract",  "assert",     "boolean",   "break",
    "byte",       "case",      "catch",      "char",      "class",
    "const",      "continue",  "default",    "do",        "double",
    "else",       "enum",      "extends",    "final",     "finally",
    "float",      "for",       "goto",       "if",        "implements",
    "import",     "instanceof", "int",       "interface", "long",
    "native",     "new",       "package",    "private",   "protected",
    "public",     "return",    "short",      "static",    "strictfp",
    "super",      "switch",    "synchronized", "this",    "throw",
    "throws",     "transient", "try",        "void",      "volatile",
    "while"};

// Longest first so the first hit is the maximal munch. Shift operators are
// deliberately absent: `>>` and `>>>` come out as repeated `>` tokens.
constexpr std::array<std::string_view, 23> kMultiCharPunct = {
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=", "/=", "&=", "|=", "^=", "%=", "<<"};

constexpr std::string_view kSingleSeparators = "(){}[];,.@";
constexpr std::string_view kSingleOperators = "=><!~?:+-*/&|^%";

bool is_ident_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalpha(u) || c == '_' || c == '$' || u >= 0x80;
}

bool is_ident_part(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool is_hex_digit(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (starts_with("/*")) {
        skip_block_comment();
      } else if (c == '"') {
        lex_string();
      } else if (c == '\'') {
        lex_char();
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                                 is_digit(src_[pos_ + 1]))) {
        lex_number();
      } else if (is_ident_start(c)) {
        lex_word();
      } else {
        lex_punct();
      }
    }
    return std::move(out_);
  }

 private:
  bool starts_with(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(std::size_t begin, TokenClass cls, int line) {
    out_.push_back(Token{std::string(src_.substr(begin, pos_ - begin)), cls, line});
  }

  void skip_block_comment() {
    const int start = line_;
    pos_ += 2;
    while (pos_ < src_.size() && !starts_with("*/")) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= src_.size()) throw LexError("unterminated block comment", start);
    pos_ += 2;
  }

  void lex_string() {
    const std::size_t begin = pos_;
    const int start = line_;
    if (starts_with("\"\"\"")) {
      pos_ += 3;
      while (pos_ < src_.size() && !starts_with("\"\"\"")) {
        if (src_[pos_] == '\\') ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '\n') ++line_;
        ++pos_;
      }
      if (pos_ >= src_.size()) throw LexError("unterminated text block", start);
      pos_ += 3;
      emit(begin, TokenClass::literal, start);
      return;
    }
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != '"') {
      throw LexError("unterminated string literal", start);
    }
    ++pos_;
    emit(begin, TokenClass::literal, start);
  }

  void lex_char() {
    const std::size_t begin = pos_;
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') {
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != '\'' || pos_ == begin + 1) {
      throw LexError("unterminated character literal", line_);
    }
    ++pos_;
    emit(begin, TokenClass::literal, line_);
  }

  void consume_digits(bool hex) {
    while (pos_ < src_.size() &&
           (src_[pos_] == '_' || (hex ? is_hex_digit(src_[pos_]) : is_digit(src_[pos_])))) {
      ++pos_;
    }
  }

  void consume_exponent(char lower) {
    if (std::tolower(static_cast<unsigned char>(peek())) != lower) return;
    const char sign = peek(1);
    const std::size_t digits_at = (sign == '+' || sign == '-') ? 2 : 1;
    if (!is_digit(peek(digits_at))) return;
    pos_ += digits_at;
    consume_digits(false);
  }

  void lex_number() {
    const std::size_t begin = pos_;
    const char c1 = static_cast<char>(std::tolower(static_cast<unsigned char>(peek(1))));
    if (peek() == '0' && c1 == 'x') {
      pos_ += 2;
      consume_digits(true);
      if (peek() == '.') {
        ++pos_;
        consume_digits(true);
      }
      consume_exponent('p');
    } else if (peek() == '0' && c1 == 'b') {
      pos_ += 2;
      consume_digits(false);
    } else {
      consume_digits(false);
      if (peek() == '.' && peek(1) != '.' &&
          (is_digit(peek(1)) || !is_ident_start(peek(1)))) {
        ++pos_;
        consume_digits(false);
      }
      consume_exponent('e');
    }
    if (std::string_view("lLfFdD").find(peek()) != std::string_view::npos &&
        peek() != '\0') {
      ++pos_;
    }
    emit(begin, TokenClass::literal, line_);
  }

  void lex_word() {
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && is_ident_part(src_[pos_])) ++pos_;
    const std::string_view word = src_.substr(begin, pos_ - begin);
    TokenClass cls = TokenClass::identifier;
    if (word == "true" || word == "false" || word == "null") {
      cls = TokenClass::literal;
    } else if (is_java_keyword(word)) {
      cls = TokenClass::keyword;
    }
    emit(begin, cls, line_);
  }

  void lex_punct() {
    const std::size_t begin = pos_;
    for (std::string_view p : kMultiCharPunct) {
      if (starts_with(p)) {
        pos_ += p.size();
        const bool sep = p == "..." || p == "::";
        emit(begin, sep ? TokenClass::separator : TokenClass::op, line_);
        return;
      }
    }
    const char c = src_[pos_];
    if (kSingleSeparators.find(c) != std::string_view::npos) {
      ++pos_;
      emit(begin, TokenClass::separator, line_);
    } else if (kSingleOperators.find(c) != std::string_view::npos) {
      ++pos_;
      emit(begin, TokenClass::op, line_);
    } else {
      throw LexError(std::string("unexpected character '") + c + "'", line_);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::vector<Token> out_;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

std::string render(const std::vector<Token>& tokens) {
  std::string out;
  int line = 1;
  bool line_start = true;
  for (const Token& t : tokens) {
    for (; line < t.line; ++line) {
      out += '\n';
      line_start = true;
    }
    if (!line_start) out += ' ';
    out += t.lexeme;
    line += static_cast<int>(std::count(t.lexeme.begin(), t.lexeme.end(), '\n'));
    line_start = false;
  }
  return out;
}

}  // namespace nbf
