#pragma once

// Region machinery: precomputed detection thresholds (once per static
// parameter set), square-root-free detection for normalized states, and the
// reference classifier that labels a state from a known anchor.
//
// Detection compares the state's reserve against the reserve curves of a few
// boundary anchors. Curves of distinct anchors never cross, so "above the
// boundary curve" is equivalent to "anchor above the boundary anchor", which
// replaces reconstruction with a handful of multiplications.

#include "pamm/curve.hpp"

namespace pamm {

// Value-producing operations detection is allowed to spend on one call
// (square roots: none). The tests measure actual usage against this.
inline constexpr int kDetectArithBudget = 40;

template <class S>
PrecomputedThresholds<S> precompute(const StaticParams<S>& sp) {
  validate_statics(sp);
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S theta = one - sp.theta_bar;
  const S abar = sp.alpha_bar_norm;

  PrecomputedThresholds<S> t;
  t.ba_I_II = ba_for_xu_threshold(sp.xu_bar_norm, abar, one, sp.theta_bar);
  t.xl_I_II =
      compute_xl(abar, sp.xu_bar_norm, AnchorPoint<S>{t.ba_I_II, one}).first;
  t.ba_II_III =
      ba_for_xu_threshold(num::zero<S>(), abar, one, sp.theta_bar);
  t.ba_h_l = one - theta * theta / (two * abar);
  t.xu_h_l = one - theta / abar;  // negative when abar < theta; permitted
  t.ba_H_L = num::half<S>() * (one + sp.theta_bar);
  t.alpha_H_L = compute_alpha_hat(AnchorPoint<S>{t.ba_H_L, one}, sp.theta_bar);
  return t;
}

namespace detail {

// Reserve of a boundary curve on the normalized scale, from its raw
// parameters. Each boundary is evaluated with its true knee x_l: past it the
// boundary reserve rides the terminal ratio, which sits strictly below the
// quadratic extension, and in-band states from neighboring anchors do occur
// there, so using the extension would misclassify them.
template <class S>
S threshold_reserve(S ba, S alpha, S x_u, S x_l, S x) {
  const S one = num::one<S>();
  if (x <= x_u) return ba - x;
  if (x < x_l) {
    const S t = x - x_u;
    return ba - x + num::half<S>() * (alpha * t) * t;
  }
  const S r_l = one - alpha * (x_l - x_u);
  return r_l * (one - x);
}

inline bool approx_unit_sum(double v) { return v > 1 - 1e-9 && v < 1 + 1e-9; }

// Detection core; band and normalization preconditions already checked.
template <class S>
Region detect_region_unchecked(const SystemState<S>& s,
                               const StaticParams<S>& sp,
                               const PrecomputedThresholds<S>& t) {
  const S zero = num::zero<S>();
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S half = num::half<S>();
  const S theta = one - sp.theta_bar;
  const S abar = sp.alpha_bar_norm;
  const S xbar = sp.xu_bar_norm;
  const S x = s.x;
  const S b = s.b;
  const S y = s.y;

  Region out;
  if (b >= threshold_reserve(t.ba_I_II, abar, xbar, t.xl_I_II, x)) {
    out.major = Major::I;
    if (x <= xbar) {
      out.minor = Minor::i;
    } else {
      // On the linear stretch the state ratio sits below the price line
      // through (x_u, 1); past the floor knee it sits above it.
      const S line = one - abar * (x - xbar);
      out.minor = num::cmp_ratio(b, y, line) <= 0 ? Minor::ii : Minor::iii;
    }
  } else if (b >= threshold_reserve(t.ba_II_III, abar, zero,
                                    num::min(theta / abar, one), x)) {
    out.major = Major::II;
    if (b >= threshold_reserve(t.ba_h_l, abar, t.xu_h_l, one, x)) {
      out.sub = Sub::h;
      out.minor = (y - b <= half * (abar * y) * y) ? Minor::i : Minor::ii;
    } else {
      out.sub = Sub::l;
      out.minor = (b - sp.theta_bar * y >= theta * theta / (two * abar))
                      ? Minor::i
                      : Minor::ii;
    }
  } else {
    out.major = Major::III;
    out.greek = b >= threshold_reserve(t.ba_H_L, t.alpha_H_L, zero, one, x)
                    ? Greek::H
                    : Greek::L;
    // A region III curve starts its decay at the anchor itself, so any
    // positive redemption sits on the decay segment.
    out.minor = Minor::ii;
  }
  return out;
}

}  // namespace detail

// Region of a normalized state (x + y = 1, theta_bar < b/y < 1) without
// reconstructing its anchor. No square roots; at most kDetectArithBudget
// value-producing operations. States outside the ratio band raise
// invalid_input, signalling that a trivial branch applies upstream.
template <class S>
Region detect_region(const SystemState<S>& s, const StaticParams<S>& sp,
                     const PrecomputedThresholds<S>& t) {
  validate_statics(sp);
  validate_state(s);
  if (!detail::approx_unit_sum(num::to_double(s.x) + num::to_double(s.y)))
    throw invalid_input("detection requires a normalized state (x + y = 1)");
  if (num::cmp_ratio(s.b, s.y, num::one<S>()) >= 0)
    throw invalid_input("state is over-reserved; no detection needed");
  if (num::cmp_ratio(s.b, s.y, sp.theta_bar) <= 0)
    throw invalid_input("state is at or under the floor; no detection needed");
  return detail::detect_region_unchecked(s, sp, t);
}

// Reference classification from a known regular anchor: re-derives the curve
// parameters and reads off which constraint bound and which segment x is on.
// Ties resolve toward the earlier label, matching detection.
template <class S>
Region classify_from_anchor(const AnchorPoint<S>& a, const StaticParams<S>& sp,
                            S x) {
  validate_statics(sp);
  validate_anchor(a);
  if (anchor_kind(a, sp.theta_bar) != CurveKind::regular)
    throw invalid_input("classification is defined only for regular anchors");
  if (x < num::zero<S>() || !(x < a.y_a))
    throw invalid_input("classification requires 0 <= x < y_a");
  LabeledParams<S> lp = select_params(a, scale_statics(sp, a.y_a));
  Region out;
  out.major = lp.major;
  out.sub = lp.sub;
  out.greek = lp.greek;
  if (x <= lp.dyn.x_u)
    out.minor = Minor::i;
  else if (x <= lp.dyn.x_l)
    out.minor = Minor::ii;
  else
    out.minor = Minor::iii;
  return out;
}

// True iff every threshold satisfies its defining identity, checked without
// square roots. Tolerances are a few units of rounding slop; a perturbation
// of 1e-3 in any field fails.
template <class S>
bool verify_precomputed(const StaticParams<S>& sp,
                        const PrecomputedThresholds<S>& t) {
  validate_statics(sp);
  const S zero = num::zero<S>();
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S theta = one - sp.theta_bar;
  const S abar = sp.alpha_bar_norm;

  const auto close = [](S a, S b) {
    const double av = num::to_double(a);
    const double bv = num::to_double(b);
    const double scale = std::max({1.0, std::abs(av), std::abs(bv)});
    return std::abs(av - bv) <= 1e-12 * scale;
  };

  if (!num::is_finite(t.ba_I_II) || !num::is_finite(t.xl_I_II) ||
      !num::is_finite(t.ba_II_III) || !num::is_finite(t.ba_h_l) ||
      !num::is_finite(t.xu_h_l) || !num::is_finite(t.ba_H_L) ||
      !num::is_finite(t.alpha_H_L))
    return false;

  if (!close(t.ba_I_II,
             ba_for_xu_threshold(sp.xu_bar_norm, abar, one, sp.theta_bar)))
    return false;
  if (!close(t.ba_II_III, ba_for_xu_threshold(zero, abar, one, sp.theta_bar)))
    return false;
  if (!close(t.ba_h_l, one - theta * theta / (two * abar))) return false;
  if (!close(t.xu_h_l, one - theta / abar)) return false;
  if (!close(t.ba_H_L, num::half<S>() * (one + sp.theta_bar))) return false;
  if (!close(t.alpha_H_L,
             compute_alpha_hat(AnchorPoint<S>{t.ba_H_L, one}, sp.theta_bar)))
    return false;

  // xl_I_II: at the candidate knee the decayed price and the state ratio of
  // the boundary curve coincide: p(xl) * (1 - xl) == b(xl). Quadratic in the
  // candidate, so no square root is needed.
  const double xl = num::to_double(t.xl_I_II);
  const double xbar = num::to_double(sp.xu_bar_norm);
  if (xl < xbar - 1e-9 || xl > 1 + 1e-9) return false;
  const S span = t.xl_I_II - sp.xu_bar_norm;
  const S lhs = (one - abar * span) * (one - t.xl_I_II);
  const S rhs =
      t.ba_I_II - t.xl_I_II + num::half<S>() * (abar * span) * span;
  const double residual =
      std::abs(num::to_double(lhs) - num::to_double(rhs));
  return residual <= 1e-11;
}

}  // namespace pamm
