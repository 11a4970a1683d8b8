#include "perfwall/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace perfwall::units {

std::optional<double> prefix_scale(char prefix) {
  switch (std::tolower(static_cast<unsigned char>(prefix))) {
    case 'k': return 1e3;
    case 'm': return 1e6;
    case 'g': return 1e9;
    case 't': return 1e12;
    case 'p': return 1e15;
    case 'e': return 1e18;
    default: return std::nullopt;
  }
}

double parse_quantity(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) throw std::invalid_argument("not a number: '" + std::string(text) + "'");

  std::string_view rest(ptr, static_cast<std::size_t>(last - ptr));
  if (rest.empty()) return value;

  const auto is_rate_word = [](std::string_view w) {
    const auto iequal = [](std::string_view a, std::string_view b) {
      return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == y;
             });
    };
    return iequal(w, "flop/s") || iequal(w, "flops");
  };
  double scale = 1.0;
  if (!is_rate_word(rest)) {
    const auto s = prefix_scale(rest.front());
    if (!s) throw std::invalid_argument("unknown unit suffix in '" + std::string(text) + "'");
    scale = *s;
    rest.remove_prefix(1);
    if (!rest.empty() && !is_rate_word(rest))
      throw std::invalid_argument("unknown unit suffix in '" + std::string(text) + "'");
  }
  return value * scale;
}

std::string format_number(double value) { return fmt::format("{}", value); }

std::string rate_unit(char prefix) {
  if (prefix == '\0') return "flop/s";
  if (!prefix_scale(prefix)) throw std::invalid_argument(std::string("unknown prefix '") + prefix + "'");
  return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(prefix)))) + "flop/s";
}

}  // namespace perfwall::units
