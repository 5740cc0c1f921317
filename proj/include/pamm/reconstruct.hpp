#pragma once

// Anchor reconstruction and the quote path.
//
// Given a normalized state and its region, the anchor reserve has a closed
// form per region using at most one square root. Where a quadratic must be
// solved, the smaller root is always the anchor: the larger one contradicts
// the region's own case conditions (the tests exercise that exclusion).

#include <optional>
#include <vector>

#include "pamm/region.hpp"

namespace pamm {

// Anchor reserve (normalized scale, y_a = 1) of the curve through a
// normalized state with the given region label.
template <class S>
S reconstruct_ba(const SystemState<S>& s, const Region& region,
                 const StaticParams<S>& sp) {
  const S one = num::one<S>();
  const S two = num::two<S>();
  const S half = num::half<S>();
  const S theta = one - sp.theta_bar;
  const S abar = sp.alpha_bar_norm;
  const S xbar = sp.xu_bar_norm;
  const S x = s.x;
  const S b = s.b;
  const S y = s.y;

  if (region.minor == Minor::i) return b + x;

  switch (region.major) {
    case Major::I: {
      if (region.minor == Minor::ii) {
        const S t = x - xbar;
        return b + x - half * (abar * t) * t;
      }
      // Terminal segment: the ratio equals r_l, which pins the knee and in
      // turn the deficit.
      const S rest = one - b / y;
      return one - (one - xbar) * rest + rest * rest / (two * abar);
    }
    case Major::II: {
      if (region.minor != Minor::ii)
        throw invalid_input("region II iii does not occur for regular states");
      if (region.sub == Sub::h) {
        const S span = (one - b / y) / abar + half * y;
        return one - half * (abar * span) * span;
      }
      const S p_half = theta * (theta / (two * abar) + y);
      S disc = two * (theta * theta) * (b - sp.theta_bar * y) / abar;
      disc = num::clamp_radicand(disc, one);
      return one - (p_half - num::sqrt(disc));
    }
    default: {
      if (region.minor != Minor::ii)
        throw invalid_input(
            "region III iii does not occur for regular states");
      if (region.greek == Greek::H) {
        return one - (y - b) / (y * (one + x));
      }
      const S p_half = half * (y - b + theta);
      const S base = b + x - sp.theta_bar;
      const S off = theta * x;
      S disc = half * half * ((base - off) * (base + off));
      disc = num::clamp_radicand(disc, one);
      return one - (p_half - num::sqrt(disc));
    }
  }
}

namespace detail {

template <class S>
StaticParams<counted<S>> wrap(const StaticParams<S>& v) {
  return {counted<S>(v.theta_bar), counted<S>(v.alpha_bar_norm),
          counted<S>(v.xu_bar_norm)};
}
template <class S>
PrecomputedThresholds<counted<S>> wrap(const PrecomputedThresholds<S>& v) {
  return {counted<S>(v.ba_I_II),   counted<S>(v.xl_I_II),
          counted<S>(v.ba_II_III), counted<S>(v.ba_h_l),
          counted<S>(v.xu_h_l),    counted<S>(v.ba_H_L),
          counted<S>(v.alpha_H_L)};
}
template <class S>
SystemState<counted<S>> wrap(const SystemState<S>& v) {
  return {counted<S>(v.x), counted<S>(v.b), counted<S>(v.y)};
}

// Quote math on the op-counting wrapper; validation already done.
template <class C>
struct QuoteCore {
  C payout;
  SystemState<C> state;
  CurveKind kind;
  std::optional<Region> region;
  std::optional<AnchorPoint<C>> anchor;
};

template <class C>
QuoteCore<C> redeem_core(const SystemState<C>& s, C amount,
                         const StaticParams<C>& sp,
                         const PrecomputedThresholds<C>& t) {
  const C zero = num::zero<C>();
  const C one = num::one<C>();
  QuoteCore<C> q;
  q.state = s;
  const C y_a = s.x + s.y;

  // States within a dust band above the floor take the proportional branch.
  // On a curve's terminal segment the reserve ratio equals theta_bar in real
  // arithmetic, but rounding (forward evaluation, payout subtraction chains)
  // can leave the stored ratio a few ulps above it. Inside that band the
  // anchor is not identifiable -- every floor-touching curve whose terminal
  // segment covers x passes through the same state -- while the proportional
  // payout already equals the terminal-segment payout, so treating the band
  // as on-floor is the well-posed choice on both sides.
  const C floor_pad =
      sp.theta_bar * num::from_ratio<C>(1, 1000000000000LL);

  if (num::cmp_ratio(s.b, s.y, one) >= 0) {
    q.kind = CurveKind::over_reserved;
    q.anchor = AnchorPoint<C>{s.b + s.x, y_a};
    q.payout = amount;
  } else if (num::cmp_ratio(s.b, s.y, sp.theta_bar + floor_pad) <= 0) {
    q.kind = CurveKind::under_floor;
    q.anchor = AnchorPoint<C>{num::muldiv_floor(s.b, y_a, s.y), y_a};
    q.payout = num::muldiv_floor(s.b, amount, s.y);
  } else {
    q.kind = CurveKind::regular;
    const SystemState<C> norm{s.x / y_a, s.b / y_a, s.y / y_a};
    const Region region = detect_region_unchecked(norm, sp, t);
    q.region = region;
    const C ba = reconstruct_ba(norm, region, sp) * y_a;
    q.anchor = AnchorPoint<C>{ba, y_a};
    if (amount == zero) {
      q.payout = zero;
    } else {
      const CurveSpec<C> spec = dynamic_params(*q.anchor, sp);
      C after = reserve_at(spec, s.x + amount);
      q.payout = num::min(num::max(s.b - after, zero), s.b);
    }
  }
  if (amount == zero) q.payout = zero;
  q.state = SystemState<C>{s.x + amount, s.b - q.payout, s.y - amount};
  return q;
}

}  // namespace detail

// Quote a redemption of `amount` against the current state. At most two
// square roots; the op tally of the call is reported in the result.
template <class S>
Quote<S> redeem(const SystemState<S>& s, S amount, const StaticParams<S>& sp,
                const PrecomputedThresholds<S>& t) {
  validate_statics(sp);
  validate_state(s);
  if (!num::is_finite(amount) || amount < num::zero<S>())
    throw invalid_input("redeem amount must be finite and >= 0");
  if (amount > s.y)
    throw insufficient_supply("redeem amount exceeds outstanding supply");

  using C = counted<S>;
  const OpCount before = read_op_tally();
  detail::QuoteCore<C> core =
      detail::redeem_core<C>(detail::wrap(s), C(amount), detail::wrap(sp),
                             detail::wrap(t));
  const OpCount used = read_op_tally() - before;

  Quote<S> q;
  q.payout = core.payout.v;
  q.state = SystemState<S>{core.state.x.v, core.state.b.v, core.state.y.v};
  q.kind = core.kind;
  q.region = core.region;
  if (core.anchor)
    q.anchor = AnchorPoint<S>{core.anchor->b_a.v, core.anchor->y_a.v};
  q.ops = used;
  return q;
}

// ---------------------------------------------------------------------------
// Curve sampling.

template <class S>
struct CurvePoint {
  S x;
  S price;
  S reserve;
  S ratio;
  Segment segment;
};

// Samples the remainder of the curve through `spec` from x0 to exhaustion.
// The ratio at exhaustion is reported as its limit (the terminal ratio on a
// regular curve).
template <class S>
std::vector<CurvePoint<S>> sample_curve(const CurveSpec<S>& spec, S x0,
                                        int samples) {
  if (samples < 2) throw invalid_input("curve sampling needs >= 2 samples");
  validate_on_curve(spec, x0);
  const S y_a = spec.anchor.y_a;
  std::vector<CurvePoint<S>> out;
  out.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    S x = i == samples - 1
              ? y_a
              : x0 + (y_a - x0) * num::from_int<S>(i) /
                         num::from_int<S>(samples - 1);
    CurvePoint<S> p;
    p.x = x;
    p.price = price_at(spec, x);
    p.reserve = reserve_at(spec, x);
    p.segment = segment_at(spec, x);
    p.ratio = i == samples - 1 ? p.price : p.reserve / (y_a - x);
    out.push_back(p);
  }
  return out;
}

// Reconstructs the anchor through a live state once, then samples from the
// state's position to exhaustion.
template <class S>
std::vector<CurvePoint<S>> quote_curve(const SystemState<S>& s,
                                       const StaticParams<S>& sp,
                                       const PrecomputedThresholds<S>& t,
                                       int samples) {
  Quote<S> q = redeem(s, num::zero<S>(), sp, t);
  CurveSpec<S> spec = dynamic_params(*q.anchor, sp);
  return sample_curve(spec, s.x, samples);
}

}  // namespace pamm
