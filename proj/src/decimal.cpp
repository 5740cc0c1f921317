#include "pamm/decimal.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <system_error>

#include "pamm/errors.hpp"

namespace pamm {

double parse_double(const std::string& text) {
  // Same grammar as FixedPoint::from_string: [+-] digits [. digits],
  // validated by hand so from_chars never sees inf/nan/hex forms.
  const char* p = text.c_str();
  const char* end = p + text.size();
  const char* value_begin = p;
  if (p != end && (*p == '+' || *p == '-')) ++p;
  const char* int_begin = p;
  while (p != end && *p >= '0' && *p <= '9') ++p;
  const char* int_end = p;
  bool empty_frac = false;
  if (p != end && *p == '.') {
    ++p;
    empty_frac = p == end || *p < '0' || *p > '9';
    while (p != end && *p >= '0' && *p <= '9') ++p;
  }
  if (p != end || int_begin == int_end || empty_frac)
    throw invalid_input("bad decimal literal: '" + text + "'");

  // std::from_chars does not take a leading '+'.
  if (*value_begin == '+') ++value_begin;
  double out = 0;
  const auto res =
      std::from_chars(value_begin, end, out, std::chars_format::fixed);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out))
    throw invalid_input("bad decimal literal: '" + text + "'");
  return out;
}

std::string format_double(double value) {
  if (!std::isfinite(value))
    throw invalid_input("cannot format a non-finite value");
  if (value == 0) return "0";
  char buf[1088];  // fixed notation of the extreme double magnitudes
  const auto res =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (res.ec != std::errc()) throw error("decimal formatting failed");
  return std::string(buf, res.ptr);
}

}  // namespace pamm
