#include "qgamble/numfmt.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace qgamble {

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_double17(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double_strict(std::string_view text) {
  double out = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return out;
}

double parse_real(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_double_strict(text);
  const double num = parse_double_strict(text.substr(0, slash));
  const double den = parse_double_strict(text.substr(slash + 1));
  if (den == 0.0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  return num / den;
}

}  // namespace qgamble
