#pragma once

#include <string>
#include <string_view>

namespace qgamble {

// Shortest decimal string that round-trips to the same double
// (at most 17 significant digits).
std::string fmt_double(double v);

// Fixed 17-significant-digit form, used by state transcripts.
std::string fmt_double17(double v);

// Parse a real given as a decimal ("0.25") or a simple fraction ("8/9").
// Fractions are evaluated by one floating division of the two parts, so
// exact rationals like 8/9 land on the nearest double rather than on a
// truncated decimal. Throws std::invalid_argument on malformed input.
double parse_real(std::string_view text);

// Strict double parse (no fractions); throws std::invalid_argument.
double parse_double_strict(std::string_view text);

}  // namespace qgamble
