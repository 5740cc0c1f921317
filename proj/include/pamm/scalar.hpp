#pragma once

// Scalar abstraction. The curve math is templated over a scalar type S so the
// same formulas run in binary float mode (double), decimal fixed-point mode
// (FixedPoint), and op-counting wrappers of either (counted<S>), which the
// quote path and the tests use to enforce arithmetic budgets.
//
// Conventions:
//   * plain +,-,*,/ are the default-rounded operations (exact for double,
//     truncating for FixedPoint),
//   * num::*_floor / num::*_ceil pick a rounding direction where it matters
//     (no-ops for double),
//   * num::cmp_ratio compares b/y against a threshold without forming the
//     quotient, exactly in fixed mode,
//   * comparisons, min/max and constant materialization are free; value
//     producing ops tick the arithmetic tally on counted scalars, square
//     roots tick their own counter.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "pamm/errors.hpp"
#include "pamm/fixed.hpp"

namespace pamm {

struct OpCount {
  std::int64_t arith = 0;
  std::int64_t sqrt = 0;
};

inline OpCount operator-(OpCount a, OpCount b) {
  return {a.arith - b.arith, a.sqrt - b.sqrt};
}

namespace detail {
inline OpCount& op_tally() {
  thread_local OpCount tally;
  return tally;
}
}  // namespace detail

inline void reset_op_tally() { detail::op_tally() = OpCount{}; }
inline OpCount read_op_tally() { return detail::op_tally(); }

// ---------------------------------------------------------------------------
// counted<S>: transparent wrapper that ticks the thread-local tally.

template <class S>
struct counted {
  S v{};

  counted() = default;
  counted(S value) : v(value) {}  // NOLINT: implicit by design

  friend counted operator+(counted a, counted b) {
    detail::op_tally().arith++;
    return counted(a.v + b.v);
  }
  friend counted operator-(counted a, counted b) {
    detail::op_tally().arith++;
    return counted(a.v - b.v);
  }
  friend counted operator*(counted a, counted b) {
    detail::op_tally().arith++;
    return counted(a.v * b.v);
  }
  friend counted operator/(counted a, counted b) {
    detail::op_tally().arith++;
    return counted(a.v / b.v);
  }
  friend counted operator-(counted a) { return counted(-a.v); }

  friend bool operator<(counted a, counted b) { return a.v < b.v; }
  friend bool operator>(counted a, counted b) { return a.v > b.v; }
  friend bool operator<=(counted a, counted b) { return a.v <= b.v; }
  friend bool operator>=(counted a, counted b) { return a.v >= b.v; }
  friend bool operator==(counted a, counted b) { return a.v == b.v; }
  friend bool operator!=(counted a, counted b) { return a.v != b.v; }
};

// ---------------------------------------------------------------------------
// num_traits: per-scalar hooks used by the free helpers below.

template <class S>
struct num_traits;

template <>
struct num_traits<double> {
  static constexpr bool is_fixed = false;

  static double from_int(long long n) { return static_cast<double>(n); }
  static double from_ratio(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double sqrt_op(double a) {
    if (a < 0) throw invalid_input("sqrt of negative value");
    return std::sqrt(a);
  }
  static double mul_floor(double a, double b) { return a * b; }
  static double mul_ceil(double a, double b) { return a * b; }
  static double div_floor(double a, double b) { return a / b; }
  static double div_ceil(double a, double b) { return a / b; }
  static double muldiv_floor(double a, double b, double c) {
    return a * b / c;
  }
  static double muldiv_ceil(double a, double b, double c) { return a * b / c; }
  static int cmp_ratio(double num, double den, double t) {
    if (!(den > 0)) throw invalid_input("cmp_ratio: denominator <= 0");
    double lhs = num;
    double rhs = t * den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }
  // Radicands that are exactly zero in real arithmetic come out as small
  // negatives after cancellation; clamp those, reject anything larger.
  static double clamp_radicand(double rad, double scale) {
    if (rad >= 0) return rad;
    double tol = 64.0 * std::numeric_limits<double>::epsilon() *
                 std::max(scale * scale, 1e-300);
    if (rad >= -tol) return 0.0;
    throw invalid_input("negative radicand beyond rounding tolerance");
  }
  static bool is_finite(double a) { return std::isfinite(a); }
  static double to_double(double a) { return a; }
  static double abs(double a) { return std::fabs(a); }
};

template <>
struct num_traits<FixedPoint> {
  static constexpr bool is_fixed = true;

  static FixedPoint from_int(long long n) { return FixedPoint::from_int(n); }
  static FixedPoint from_ratio(long long num, long long den) {
    return FixedPoint::from_ratio(num, den);
  }
  static FixedPoint sqrt_op(FixedPoint a) { return a.sqrt_floor(); }
  static FixedPoint mul_floor(FixedPoint a, FixedPoint b) {
    return FixedPoint::mul_floor(a, b);
  }
  static FixedPoint mul_ceil(FixedPoint a, FixedPoint b) {
    return FixedPoint::mul_ceil(a, b);
  }
  static FixedPoint div_floor(FixedPoint a, FixedPoint b) {
    return FixedPoint::div_floor(a, b);
  }
  static FixedPoint div_ceil(FixedPoint a, FixedPoint b) {
    return FixedPoint::div_ceil(a, b);
  }
  static FixedPoint muldiv_floor(FixedPoint a, FixedPoint b, FixedPoint c) {
    return FixedPoint::muldiv_floor(a, b, c);
  }
  static FixedPoint muldiv_ceil(FixedPoint a, FixedPoint b, FixedPoint c) {
    return FixedPoint::muldiv_ceil(a, b, c);
  }
  static int cmp_ratio(FixedPoint num, FixedPoint den, FixedPoint t) {
    return FixedPoint::cmp_ratio(num, den, t);
  }
  static FixedPoint clamp_radicand(FixedPoint rad, FixedPoint /*scale*/) {
    if (rad.raw() >= 0) return rad;
    if (rad.raw() >= -2) return FixedPoint{};
    throw invalid_input("negative radicand beyond rounding tolerance");
  }
  static bool is_finite(FixedPoint) { return true; }
  static double to_double(FixedPoint a) {
    return static_cast<double>(a.raw()) * 1e-18;
  }
  static FixedPoint abs(FixedPoint a) { return a.abs(); }
};

template <class S>
struct num_traits<counted<S>> {
  using Base = num_traits<S>;
  static constexpr bool is_fixed = Base::is_fixed;

  static counted<S> from_int(long long n) {
    return counted<S>(Base::from_int(n));
  }
  static counted<S> from_ratio(long long num, long long den) {
    return counted<S>(Base::from_ratio(num, den));
  }
  static counted<S> sqrt_op(counted<S> a) {
    detail::op_tally().sqrt++;
    return counted<S>(Base::sqrt_op(a.v));
  }
  static counted<S> mul_floor(counted<S> a, counted<S> b) {
    detail::op_tally().arith++;
    return counted<S>(Base::mul_floor(a.v, b.v));
  }
  static counted<S> mul_ceil(counted<S> a, counted<S> b) {
    detail::op_tally().arith++;
    return counted<S>(Base::mul_ceil(a.v, b.v));
  }
  static counted<S> div_floor(counted<S> a, counted<S> b) {
    detail::op_tally().arith++;
    return counted<S>(Base::div_floor(a.v, b.v));
  }
  static counted<S> div_ceil(counted<S> a, counted<S> b) {
    detail::op_tally().arith++;
    return counted<S>(Base::div_ceil(a.v, b.v));
  }
  static counted<S> muldiv_floor(counted<S> a, counted<S> b, counted<S> c) {
    detail::op_tally().arith += 2;
    return counted<S>(Base::muldiv_floor(a.v, b.v, c.v));
  }
  static counted<S> muldiv_ceil(counted<S> a, counted<S> b, counted<S> c) {
    detail::op_tally().arith += 2;
    return counted<S>(Base::muldiv_ceil(a.v, b.v, c.v));
  }
  static int cmp_ratio(counted<S> num, counted<S> den, counted<S> t) {
    detail::op_tally().arith++;  // one cross-multiply
    return Base::cmp_ratio(num.v, den.v, t.v);
  }
  static counted<S> clamp_radicand(counted<S> rad, counted<S> scale) {
    return counted<S>(Base::clamp_radicand(rad.v, scale.v));
  }
  static bool is_finite(counted<S> a) { return Base::is_finite(a.v); }
  static double to_double(counted<S> a) { return Base::to_double(a.v); }
  static counted<S> abs(counted<S> a) { return counted<S>(Base::abs(a.v)); }
};

// ---------------------------------------------------------------------------
// Free helpers; call sites read num::one<S>() etc.

namespace num {

template <class S>
S from_int(long long n) {
  return num_traits<S>::from_int(n);
}
template <class S>
S from_ratio(long long n, long long d) {
  return num_traits<S>::from_ratio(n, d);
}
template <class S>
S zero() {
  return num_traits<S>::from_int(0);
}
template <class S>
S one() {
  return num_traits<S>::from_int(1);
}
template <class S>
S two() {
  return num_traits<S>::from_int(2);
}
template <class S>
S half() {
  return num_traits<S>::from_ratio(1, 2);
}

template <class S>
S sqrt(S a) {
  return num_traits<S>::sqrt_op(a);
}
template <class S>
S mul_floor(S a, S b) {
  return num_traits<S>::mul_floor(a, b);
}
template <class S>
S mul_ceil(S a, S b) {
  return num_traits<S>::mul_ceil(a, b);
}
template <class S>
S div_floor(S a, S b) {
  return num_traits<S>::div_floor(a, b);
}
template <class S>
S div_ceil(S a, S b) {
  return num_traits<S>::div_ceil(a, b);
}
template <class S>
S muldiv_floor(S a, S b, S c) {
  return num_traits<S>::muldiv_floor(a, b, c);
}
template <class S>
S muldiv_ceil(S a, S b, S c) {
  return num_traits<S>::muldiv_ceil(a, b, c);
}
template <class S>
int cmp_ratio(S numv, S den, S t) {
  return num_traits<S>::cmp_ratio(numv, den, t);
}
template <class S>
S clamp_radicand(S rad, S scale) {
  return num_traits<S>::clamp_radicand(rad, scale);
}
template <class S>
bool is_finite(S a) {
  return num_traits<S>::is_finite(a);
}
template <class S>
double to_double(S a) {
  return num_traits<S>::to_double(a);
}
template <class S>
S abs(S a) {
  return num_traits<S>::abs(a);
}
template <class S>
S min(S a, S b) {
  return b < a ? b : a;
}
template <class S>
S max(S a, S b) {
  return a < b ? b : a;
}

}  // namespace num

// Strip the counter wrapper (identity for plain scalars).
template <class S>
struct uncounted {
  using type = S;
  static S get(S a) { return a; }
};
template <class S>
struct uncounted<counted<S>> {
  using type = S;
  static S get(counted<S> a) { return a.v; }
};

}  // namespace pamm
