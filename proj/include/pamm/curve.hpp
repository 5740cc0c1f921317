#pragma once

// Closed-form redemption curve.
//
// A curve is anchored at (b_a, y_a): reserve b_a backing supply y_a with
// nothing redeemed yet. For a regular anchor (theta_bar < b_a/y_a < 1) the
// marginal price is 1 on [0, x_u], decays linearly with slope alpha on
// [x_u, x_l], and holds the terminal ratio r_l on [x_l, y_a]; the reserve is
// the anchor reserve minus the integral of the price. The parameters
// (alpha, x_u, x_l, r_l) are derived here from the anchor and the static
// parameters. Construction uses at most one square root.

#include <utility>

#include "pamm/core.hpp"
#include "pamm/errors.hpp"
#include "pamm/types.hpp"

namespace pamm {

template <class S>
void validate_anchor(const AnchorPoint<S>& a) {
  if (!num::is_finite(a.b_a) || !num::is_finite(a.y_a))
    throw invalid_input("anchor must be finite");
  if (!(a.y_a > num::zero<S>()))
    throw invalid_input("anchor requires y_a > 0");
  if (a.b_a < num::zero<S>()) throw invalid_input("anchor requires b_a >= 0");
}

template <class S>
CurveKind anchor_kind(const AnchorPoint<S>& a, S theta_bar) {
  if (num::cmp_ratio(a.b_a, a.y_a, num::one<S>()) >= 0)
    return CurveKind::over_reserved;
  if (num::cmp_ratio(a.b_a, a.y_a, theta_bar) <= 0)
    return CurveKind::under_floor;
  return CurveKind::regular;
}

// Minimal admissible decay slope for a regular anchor. Below it either the
// curve cannot drain the deficit by exhaustion (shallow regime) or it would
// pierce the price floor (deep regime); the two expressions meet at anchor
// ratio (1 + theta_bar) / 2.
template <class S>
S compute_alpha_hat(const AnchorPoint<S>& a, S theta_bar) {
  const S one = num::one<S>();
  const S two = num::two<S>();
  if (anchor_kind(a, theta_bar) != CurveKind::regular)
    throw invalid_input("minimal slope is defined only for regular anchors");
  const S mid = num::half<S>() * (one + theta_bar);
  if (num::cmp_ratio(a.b_a, a.y_a, mid) >= 0)
    return two * (a.y_a - a.b_a) / (a.y_a * a.y_a);
  const S theta = one - theta_bar;
  return theta * theta / (two * (a.b_a - theta_bar * a.y_a));
}

// Largest admissible flat-segment end for slope alpha. Requires
// alpha >= compute_alpha_hat(...); a negative result beyond rounding dust
// signals that violation.
template <class S>
S compute_xu_hat(S alpha, const AnchorPoint<S>& a, S theta_bar) {
  const S zero = num::zero<S>();
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S theta = one - theta_bar;
  const S deficit = a.y_a - a.b_a;
  if (!(alpha > zero)) throw invalid_input("slope must be positive");
  S x_hat;
  if (alpha * deficit <= num::half<S>() * (theta * theta)) {
    x_hat = a.y_a - num::sqrt(two * deficit / alpha);
  } else {
    x_hat = a.y_a - deficit / theta - theta / (two * alpha);
  }
  if (x_hat < zero) {
    if (num::to_double(x_hat) < -1e-9 * num::to_double(a.y_a))
      throw invalid_input("slope below the minimal admissible value");
    x_hat = zero;
  }
  return num::min(x_hat, a.y_a);
}

// Start of the terminal ratio segment, with its ratio. Requires the
// exhaustion-match condition alpha * (y_a - x_u)^2 >= 2 * (y_a - b_a); a
// radicand below rounding dust signals the violation.
template <class S>
std::pair<S, S> compute_xl(S alpha, S x_u, const AnchorPoint<S>& a) {
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S u = a.y_a - x_u;
  S rad = u * u - two * (a.y_a - a.b_a) / alpha;
  rad = num::clamp_radicand(rad, a.y_a);
  const S v = rad == num::zero<S>() ? num::zero<S>() : num::sqrt(rad);
  S x_l = a.y_a - v;
  if (x_l < x_u) x_l = x_u;  // rounding dust only
  const S r_l = one - alpha * (x_l - x_u);
  return {x_l, r_l};
}

// Square-root-free test of whether the terminal ratio stays at or above the
// price floor, given the exhaustion-match condition holds.
template <class S>
bool theta_floor_holds(S alpha, S x_u, const AnchorPoint<S>& a, S theta_bar) {
  const S one = num::one<S>();
  const S theta = one - theta_bar;
  if (alpha * (a.y_a - x_u) <= theta) return true;
  const S gamma = a.b_a - theta_bar * a.y_a;
  return alpha * gamma - alpha * theta * x_u -
             num::half<S>() * (theta * theta) >=
         num::zero<S>();
}

// Anchor reserve at which the largest admissible flat end equals z, for a
// given slope. Monotone in b_a: a richer anchor admits a longer flat
// segment, so b_a >= threshold  <=>  xu_hat >= z.
template <class S>
S ba_for_xu_threshold(S z, S alpha, S y_a, S theta_bar) {
  const S one = num::one<S>();
  const S theta = one - theta_bar;
  const S yz = y_a - z;
  if (alpha * yz <= theta) {
    return y_a - num::half<S>() * (alpha * yz) * yz;
  }
  return y_a - theta * yz + theta * theta / (num::two<S>() * alpha);
}

// ---------------------------------------------------------------------------
// Parameter selection.

template <class S>
struct LabeledParams {
  DynamicParams<S> dyn;
  Major major = Major::I;
  Sub sub = Sub::none;
  Greek greek = Greek::none;
};

// Chooses (alpha, x_u, x_l, r_l) for a regular anchor under scaled statics.
// Branches that have an exact closed form assign it directly instead of
// re-deriving it through the general square root, which keeps the whole
// selection at one square root and makes the structural identities
// (x_l = y_a in the shallow branches, r_l = theta_bar in the deep ones)
// exact in fixed-point mode. Ties resolve toward the earlier label; the
// parameters agree on both sides of every tie.
template <class S>
LabeledParams<S> select_params(const AnchorPoint<S>& a,
                               const ScaledStatics<S>& st) {
  const S zero = num::zero<S>();
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S half = num::half<S>();
  const S theta_bar = st.theta_bar;
  const S theta = one - theta_bar;
  const S deficit = a.y_a - a.b_a;

  LabeledParams<S> out;
  const S mid = half * (one + theta_bar);
  const bool high = num::cmp_ratio(a.b_a, a.y_a, mid) >= 0;
  const S alpha_hat =
      high ? two * deficit / (a.y_a * a.y_a)
           : theta * theta / (two * (a.b_a - theta_bar * a.y_a));

  if (alpha_hat <= st.alpha_bar) {
    out.dyn.alpha = st.alpha_bar;
    const S cap_threshold =
        ba_for_xu_threshold(st.xu_bar, st.alpha_bar, a.y_a, theta_bar);
    if (a.b_a >= cap_threshold) {
      out.major = Major::I;
      out.dyn.x_u = st.xu_bar;
      auto [x_l, r_l] = compute_xl(st.alpha_bar, st.xu_bar, a);
      out.dyn.x_l = x_l;
      out.dyn.r_l = num::max(r_l, theta_bar);
    } else {
      out.major = Major::II;
      if (st.alpha_bar * deficit <= half * (theta * theta)) {
        out.sub = Sub::h;
        const S span = num::sqrt(two * deficit / st.alpha_bar);
        out.dyn.x_u = num::min(num::max(a.y_a - span, zero), st.xu_bar);
        out.dyn.x_l = a.y_a;
        out.dyn.r_l = num::max(one - st.alpha_bar * span, theta_bar);
      } else {
        out.sub = Sub::l;
        S x_u = a.y_a - deficit / theta - theta / (two * st.alpha_bar);
        x_u = num::min(num::max(x_u, zero), st.xu_bar);
        out.dyn.x_u = x_u;
        out.dyn.x_l = num::min(x_u + theta / st.alpha_bar, a.y_a);
        out.dyn.r_l = theta_bar;
      }
    }
  } else {
    out.major = Major::III;
    out.dyn.alpha = alpha_hat;
    out.dyn.x_u = zero;
    if (high) {
      out.greek = Greek::H;
      out.dyn.x_l = a.y_a;
      out.dyn.r_l = num::max(one - alpha_hat * a.y_a, theta_bar);
    } else {
      out.greek = Greek::L;
      out.dyn.x_l = num::min(theta / alpha_hat, a.y_a);
      out.dyn.r_l = theta_bar;
    }
  }
  return out;
}

template <class S>
CurveSpec<S> dynamic_params(const AnchorPoint<S>& a,
                            const StaticParams<S>& sp) {
  validate_anchor(a);
  const ScaledStatics<S> st = scale_statics(sp, a.y_a);
  CurveSpec<S> spec;
  spec.anchor = a;
  spec.theta_bar = st.theta_bar;
  spec.alpha_bar = st.alpha_bar;
  spec.xu_bar = st.xu_bar;
  spec.kind = anchor_kind(a, sp.theta_bar);
  if (spec.kind == CurveKind::regular) spec.dyn = select_params(a, st).dyn;
  return spec;
}

// ---------------------------------------------------------------------------
// Curve evaluation.

template <class S>
void validate_on_curve(const CurveSpec<S>& spec, S x) {
  if (!num::is_finite(x) || x < num::zero<S>() || x > spec.anchor.y_a)
    throw invalid_input("curve evaluated outside [0, y_a]");
}

template <class S>
Segment segment_at(const CurveSpec<S>& spec, S x) {
  validate_on_curve(spec, x);
  switch (spec.kind) {
    case CurveKind::over_reserved:
      return Segment::flat;
    case CurveKind::under_floor:
      return Segment::ratio;
    default:
      break;
  }
  if (x <= spec.dyn.x_u) return Segment::flat;
  if (x >= spec.dyn.x_l) return Segment::ratio;
  return Segment::linear;
}

template <class S>
S price_at(const CurveSpec<S>& spec, S x) {
  validate_on_curve(spec, x);
  const S one = num::one<S>();
  switch (spec.kind) {
    case CurveKind::over_reserved:
      return one;
    case CurveKind::under_floor:
      return spec.anchor.b_a / spec.anchor.y_a;
    default:
      break;
  }
  const DynamicParams<S>& d = spec.dyn;
  if (x <= d.x_u) return one;
  if (x >= d.x_l) return d.r_l;
  // Two algebraically identical forms; evaluate from the nearer knee so the
  // subtraction never cancels.
  if (x - d.x_u <= d.x_l - x) return one - d.alpha * (x - d.x_u);
  return d.r_l + d.alpha * (d.x_l - x);
}

// Reserve remaining after x has been redeemed. Fixed-point mode rounds every
// contribution up, so the returned reserve is never below the real value;
// payouts derived as b - reserve therefore round toward zero and the floor
// guarantee survives rounding.
template <class S>
S reserve_at(const CurveSpec<S>& spec, S x) {
  validate_on_curve(spec, x);
  const S zero = num::zero<S>();
  const S two = num::two<S>();
  const AnchorPoint<S>& a = spec.anchor;
  switch (spec.kind) {
    case CurveKind::over_reserved:
      return a.b_a - x;
    case CurveKind::under_floor:
      return a.b_a - num::muldiv_floor(a.b_a, x, a.y_a);
    default:
      break;
  }
  const DynamicParams<S>& d = spec.dyn;
  if (x <= d.x_u) return a.b_a - x;
  if (x >= d.x_l)
    return num::max(num::mul_ceil(d.r_l, a.y_a - x), zero);
  S res;
  if (x - d.x_u <= d.x_l - x) {
    const S t = x - d.x_u;
    res = a.b_a - x +
          num::div_ceil(num::mul_ceil(num::mul_ceil(d.alpha, t), t), two);
  } else {
    const S t = d.x_l - x;
    res = num::mul_ceil(d.r_l, a.y_a - x) +
          num::div_ceil(num::mul_ceil(num::mul_ceil(d.alpha, t), t), two);
  }
  return num::max(res, zero);
}

}  // namespace pamm
