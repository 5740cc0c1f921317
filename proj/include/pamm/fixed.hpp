#pragma once

// Decimal fixed-point scalar: 18 fractional digits on a signed 128-bit raw
// integer. Multiplication and division run through 256-bit intermediates so
// no intermediate ever wraps. The default operators truncate toward zero;
// the *_floor / *_ceil variants give explicit control where the rounding
// direction carries meaning (e.g. payouts are derived from a reserve value
// rounded up, so the payout itself rounds toward zero).

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "pamm/errors.hpp"

namespace pamm {

namespace detail {
using int256 = boost::multiprecision::int256_t;
}  // namespace detail

class FixedPoint {
 public:
  using raw_type = __int128;
  static constexpr int kFracDigits = 18;

  static constexpr raw_type one_raw() { return kOneRaw; }

  constexpr FixedPoint() = default;

  static constexpr FixedPoint from_raw(raw_type raw) {
    FixedPoint v;
    v.raw_ = raw;
    return v;
  }

  static FixedPoint from_int(long long n) {
    return from_raw(static_cast<raw_type>(n) * kOneRaw);
  }

  // Exact rational constant when the denominator divides 10^18 (1/2, 1/4,
  // 1/10, ...). Truncates otherwise; callers use it only for exact cases.
  static FixedPoint from_ratio(long long num, long long den) {
    if (den == 0) throw invalid_input("from_ratio: zero denominator");
    detail::int256 wide = detail::int256(num) * detail::int256(kOneRaw);
    return from_raw(narrow(wide / detail::int256(den)));
  }

  constexpr raw_type raw() const { return raw_; }

  // ---- parsing / formatting -------------------------------------------

  // Strict decimal grammar: optional sign, digits, optional fraction of at
  // most 18 digits. No exponents, no thousands separators.
  static FixedPoint from_string(const std::string& text);

  // Canonical form: minus sign only when negative, no leading zeros except
  // a single "0" before the point, trailing fractional zeros trimmed, no
  // decimal point when the value is integral.
  std::string to_string() const;

  // ---- arithmetic ------------------------------------------------------

  friend FixedPoint operator+(FixedPoint a, FixedPoint b) {
    return from_raw(checked_add(a.raw_, b.raw_));
  }
  friend FixedPoint operator-(FixedPoint a, FixedPoint b) {
    return from_raw(checked_add(a.raw_, -b.raw_));
  }
  friend FixedPoint operator-(FixedPoint a) { return from_raw(-a.raw_); }

  friend FixedPoint operator*(FixedPoint a, FixedPoint b) {
    return mul_impl(a, b, Round::trunc);
  }
  friend FixedPoint operator/(FixedPoint a, FixedPoint b) {
    return div_impl(a, b, Round::trunc);
  }

  static FixedPoint mul_floor(FixedPoint a, FixedPoint b) {
    return mul_impl(a, b, Round::floor);
  }
  static FixedPoint mul_ceil(FixedPoint a, FixedPoint b) {
    return mul_impl(a, b, Round::ceil);
  }
  static FixedPoint div_floor(FixedPoint a, FixedPoint b) {
    return div_impl(a, b, Round::floor);
  }
  static FixedPoint div_ceil(FixedPoint a, FixedPoint b) {
    return div_impl(a, b, Round::ceil);
  }

  // Fused a*b/c with a single 256-bit intermediate, rounded once.
  static FixedPoint muldiv_floor(FixedPoint a, FixedPoint b, FixedPoint c) {
    return muldiv_impl(a, b, c, Round::floor);
  }
  static FixedPoint muldiv_ceil(FixedPoint a, FixedPoint b, FixedPoint c) {
    return muldiv_impl(a, b, c, Round::ceil);
  }

  // Floor square root: largest representable v with v*v <= self (exactly,
  // computed on the widened integer). Requires a nonnegative argument.
  FixedPoint sqrt_floor() const {
    if (raw_ < 0) throw invalid_input("sqrt of negative fixed-point value");
    detail::int256 widened = detail::int256(raw_) * detail::int256(kOneRaw);
    detail::int256 root = boost::multiprecision::sqrt(widened);
    return from_raw(narrow(root));
  }

  // Exact three-way comparison of the ratio num/den against t, i.e. of
  // num*10^18 against t*den, with no rounded intermediate. den must be > 0.
  static int cmp_ratio(FixedPoint num, FixedPoint den, FixedPoint t) {
    if (den.raw_ <= 0) throw invalid_input("cmp_ratio: denominator <= 0");
    detail::int256 lhs = detail::int256(num.raw_) * detail::int256(kOneRaw);
    detail::int256 rhs = detail::int256(t.raw_) * detail::int256(den.raw_);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  FixedPoint abs() const { return raw_ < 0 ? from_raw(-raw_) : *this; }

  friend auto operator<=>(FixedPoint a, FixedPoint b) {
    return a.raw_ <=> b.raw_;
  }
  friend bool operator==(FixedPoint a, FixedPoint b) {
    return a.raw_ == b.raw_;
  }

 private:
  enum class Round { trunc, floor, ceil };

  static constexpr raw_type kOneRaw =
      static_cast<raw_type>(1000000000000000000LL);

  static raw_type checked_add(raw_type a, raw_type b) {
    raw_type r;
    if (__builtin_add_overflow(a, b, &r))
      throw invalid_input("fixed-point overflow in add/sub");
    return r;
  }

  static raw_type narrow(const detail::int256& v) {
    static const detail::int256 kMax =
        (detail::int256(1) << 127) - 1;
    static const detail::int256 kMin = -(detail::int256(1) << 127);
    if (v > kMax || v < kMin)
      throw invalid_input("fixed-point overflow in mul/div");
    // Reassemble the two 64-bit halves; int256 -> __int128 has no direct
    // conversion in all boost versions.
    detail::int256 a = v < 0 ? detail::int256(-v) : v;
    auto lo = static_cast<std::uint64_t>(a & 0xFFFFFFFFFFFFFFFFULL);
    auto hi = static_cast<std::uint64_t>((a >> 64) & 0xFFFFFFFFFFFFFFFFULL);
    unsigned __int128 mag =
        (static_cast<unsigned __int128>(hi) << 64) | lo;
    return v < 0 ? -static_cast<raw_type>(mag) : static_cast<raw_type>(mag);
  }

  static detail::int256 divide(const detail::int256& num,
                               const detail::int256& den, Round mode) {
    if (den == 0) throw invalid_input("fixed-point division by zero");
    detail::int256 q = num / den;  // truncates toward zero
    detail::int256 r = num % den;
    if (r != 0) {
      bool negative = (num < 0) != (den < 0);
      if (mode == Round::floor && negative) q -= 1;
      if (mode == Round::ceil && !negative) q += 1;
    }
    return q;
  }

  static FixedPoint mul_impl(FixedPoint a, FixedPoint b, Round mode) {
    detail::int256 wide = detail::int256(a.raw_) * detail::int256(b.raw_);
    return from_raw(narrow(divide(wide, detail::int256(kOneRaw), mode)));
  }

  static FixedPoint div_impl(FixedPoint a, FixedPoint b, Round mode) {
    detail::int256 wide = detail::int256(a.raw_) * detail::int256(kOneRaw);
    return from_raw(narrow(divide(wide, detail::int256(b.raw_), mode)));
  }

  static FixedPoint muldiv_impl(FixedPoint a, FixedPoint b, FixedPoint c,
                                Round mode) {
    detail::int256 wide = detail::int256(a.raw_) * detail::int256(b.raw_);
    return from_raw(narrow(divide(wide, detail::int256(c.raw_), mode)));
  }

  raw_type raw_ = 0;
};

inline FixedPoint FixedPoint::from_string(const std::string& text) {
  const char* p = text.c_str();
  const char* end = p + text.size();
  bool negative = false;
  if (p != end && (*p == '+' || *p == '-')) {
    negative = (*p == '-');
    ++p;
  }
  const char* int_begin = p;
  while (p != end && *p >= '0' && *p <= '9') ++p;
  const char* int_end = p;
  const char* frac_begin = nullptr;
  const char* frac_end = nullptr;
  if (p != end && *p == '.') {
    ++p;
    frac_begin = p;
    while (p != end && *p >= '0' && *p <= '9') ++p;
    frac_end = p;
  }
  if (p != end || int_begin == int_end ||
      (frac_begin && frac_begin == frac_end))
    throw invalid_input("bad decimal literal: '" + text + "'");
  if (frac_begin && frac_end - frac_begin > kFracDigits)
    throw invalid_input("decimal literal '" + text + "' has more than " +
                        std::to_string(kFracDigits) + " fractional digits");

  detail::int256 acc = 0;
  for (const char* q = int_begin; q != int_end; ++q) acc = acc * 10 + (*q - '0');
  acc *= detail::int256(kOneRaw);
  if (frac_begin) {
    detail::int256 frac = 0;
    int digits = 0;
    for (const char* q = frac_begin; q != frac_end; ++q, ++digits)
      frac = frac * 10 + (*q - '0');
    for (; digits < kFracDigits; ++digits) frac *= 10;
    acc += frac;
  }
  if (negative) acc = -acc;
  return from_raw(narrow(acc));
}

inline std::string FixedPoint::to_string() const {
  unsigned __int128 mag = raw_ < 0
                              ? static_cast<unsigned __int128>(-(raw_ + 1)) + 1
                              : static_cast<unsigned __int128>(raw_);
  unsigned __int128 one = static_cast<unsigned __int128>(kOneRaw);
  unsigned __int128 ip = mag / one;
  unsigned __int128 fp = mag % one;

  std::string int_part;
  if (ip == 0) {
    int_part = "0";
  } else {
    while (ip > 0) {
      int_part.insert(int_part.begin(),
                      static_cast<char>('0' + static_cast<int>(ip % 10)));
      ip /= 10;
    }
  }
  std::string out = (raw_ < 0 ? "-" : "") + int_part;
  if (fp != 0) {
    std::string frac(kFracDigits, '0');
    for (int i = kFracDigits - 1; i >= 0; --i) {
      frac[static_cast<size_t>(i)] =
          static_cast<char>('0' + static_cast<int>(fp % 10));
      fp /= 10;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out += "." + frac;
  }
  return out;
}

}  // namespace pamm
