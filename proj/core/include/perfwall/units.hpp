#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace perfwall::units {

// Everything inside the library is flop/s, seconds and plain counts.
// Prefixes only appear when reading or printing values.
inline constexpr double kGiga = 1e9;
inline constexpr double kPeta = 1e15;
inline constexpr double kExa = 1e18;

// Multiplier for an SI prefix letter ('k', 'M', 'G', 'T', 'P', 'E'); case-insensitive
// except that 'm' is accepted as mega to keep header names like "rmax_mflops" simple.
std::optional<double> prefix_scale(char prefix);

// Parses "0.1254E", "200.79e15", "100G", "11.78Gflop/s". The trailing unit text
// "flop/s" / "flops" is optional. Throws std::invalid_argument on anything else.
double parse_quantity(std::string_view text);

// Shortest decimal text that parses back to the same double (at most 17 digits).
std::string format_number(double value);

// "E" -> "Eflop/s"; empty prefix -> "flop/s".
std::string rate_unit(char prefix);

}  // namespace perfwall::units
