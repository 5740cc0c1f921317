#pragma once

// Decimal strings at the process boundary. All money-like values enter and
// leave as plain decimal literals (optional sign, digits, optional fraction,
// no exponent), so fixed-point runs are bit-exact and float runs are
// deterministic across platforms. Doubles are printed in fixed notation with
// the fewest digits that parse back to the same value.

#include <string>

#include "pamm/fixed.hpp"

namespace pamm {

// Strict parse of a plain decimal literal into a double. Rejects exponents,
// infinities, NaNs, empty strings, and trailing garbage.
double parse_double(const std::string& text);

// Shortest fixed-notation form that round-trips through parse_double.
// Negative zero normalizes to "0".
std::string format_double(double value);

template <class S>
S parse_decimal(const std::string& text);

template <>
inline double parse_decimal<double>(const std::string& text) {
  return parse_double(text);
}

template <>
inline FixedPoint parse_decimal<FixedPoint>(const std::string& text) {
  return FixedPoint::from_string(text);
}

inline std::string format_scalar(double value) { return format_double(value); }
inline std::string format_scalar(FixedPoint value) { return value.to_string(); }

}  // namespace pamm
