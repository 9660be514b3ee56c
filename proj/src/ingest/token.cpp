#include "nbf/ingest/token.hpp"

#include <array>
#include <utility>

#include "nbf/hash.hpp"

namespace nbf {

namespace {
constexpr std::array<std::pair<TokenClass, std::string_view>, 5> kNames = {{
    {TokenClass::keyword, "keyword"},
    {TokenClass::identifier, "identifier"},
    {TokenClass::separator, "separator"},
    {TokenClass::op, "operator"},
    {TokenClass::literal, "literal"},
}};
}  // namespace

std::string_view to_string(TokenClass cls) {
  for (const auto& [c, name] : kNames) {
    if (c == cls) return name;
  }
  return "identifier";
}

std::optional<TokenClass> parse_token_class(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace nbf
