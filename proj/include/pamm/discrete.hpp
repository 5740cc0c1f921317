#pragma once

// Discrete-decay variant: instead of a linear price decay the curve drops
// from par straight to a terminal ratio at the flat-segment end, so every
// evaluation is square-root-free. The ratio segment keeps b/(y_a - x)
// constant, reaches exactly zero at exhaustion, and in fixed-point mode is
// evaluated as one fused mul-div rounded up, which keeps the reserve
// positive everywhere before exhaustion.

#include <optional>
#include <vector>

#include "pamm/reconstruct.hpp"

namespace pamm {

template <class S>
struct DiscreteSpec {
  AnchorPoint<S> anchor;
  S theta_bar;
  CurveKind kind = CurveKind::regular;
  S x_u{};  // flat segment end
  S r_u{};  // ratio held past x_u
};

// Flat-segment end for a regular discrete anchor: the point where dropping
// to the terminal ratio still clears the floor, capped by the static limit.
// The uncapped knee is rounded toward zero (ceil inside the subtraction,
// floor on the division) so the terminal ratio it induces never falls below
// the floor; rounding the other way would let fixed-mode dust leak through,
// amplified by 1/(y_a - x_u)^2 when the knee sits close to exhaustion.
template <class S>
S discrete_xu(const AnchorPoint<S>& a, S theta_bar, S xu_bar) {
  const S zero = num::zero<S>();
  const S theta = num::one<S>() - theta_bar;
  const S x_hat =
      num::div_floor(a.b_a - num::mul_ceil(theta_bar, a.y_a), theta);
  return num::min(xu_bar, num::max(x_hat, zero));
}

template <class S>
DiscreteSpec<S> build_discrete(const AnchorPoint<S>& a,
                               const StaticParams<S>& sp) {
  validate_anchor(a);
  DiscreteSpec<S> d;
  d.anchor = a;
  d.theta_bar = sp.theta_bar;
  d.kind = anchor_kind(a, sp.theta_bar);
  if (d.kind == CurveKind::regular) {
    d.x_u = discrete_xu(a, sp.theta_bar, sp.xu_bar_norm * a.y_a);
    d.r_u = (a.b_a - d.x_u) / (a.y_a - d.x_u);
  }
  return d;
}

template <class S>
void validate_on_discrete(const DiscreteSpec<S>& d, S x) {
  if (!num::is_finite(x) || x < num::zero<S>() || x > d.anchor.y_a)
    throw invalid_input("curve evaluated outside [0, y_a]");
}

template <class S>
Segment discrete_segment_at(const DiscreteSpec<S>& d, S x) {
  validate_on_discrete(d, x);
  if (d.kind == CurveKind::over_reserved) return Segment::flat;
  if (d.kind == CurveKind::under_floor) return Segment::ratio;
  return x <= d.x_u ? Segment::flat : Segment::ratio;
}

template <class S>
S discrete_price_at(const DiscreteSpec<S>& d, S x) {
  validate_on_discrete(d, x);
  const S one = num::one<S>();
  switch (d.kind) {
    case CurveKind::over_reserved:
      return one;
    case CurveKind::under_floor:
      return d.anchor.b_a / d.anchor.y_a;
    default:
      return x <= d.x_u ? one : d.r_u;
  }
}

template <class S>
S discrete_reserve_at(const DiscreteSpec<S>& d, S x) {
  validate_on_discrete(d, x);
  const AnchorPoint<S>& a = d.anchor;
  switch (d.kind) {
    case CurveKind::over_reserved:
      return a.b_a - x;
    case CurveKind::under_floor:
      return a.b_a - num::muldiv_floor(a.b_a, x, a.y_a);
    default:
      break;
  }
  if (x <= d.x_u) return a.b_a - x;
  return num::muldiv_ceil(a.b_a - d.x_u, a.y_a - x, a.y_a - d.x_u);
}

// Anchor reserve of the discrete curve through a normalized state
// (x + y = 1, theta_bar < b/y < 1). No square roots. The flat case is
// self-consistent: b + x is the anchor iff the state sits at or before the
// flat end that anchor admits. Otherwise the state rides a ratio segment,
// which inside the ratio band always comes from a cap-bound flat end.
template <class S>
S discrete_reconstruct(const SystemState<S>& s, const StaticParams<S>& sp) {
  const S one = num::one<S>();
  const S trial = s.b + s.x;
  const S x_u =
      discrete_xu(AnchorPoint<S>{trial, one}, sp.theta_bar, sp.xu_bar_norm);
  if (s.x <= x_u) return trial;
  // Ratio segment: b/y equals the anchor's terminal ratio, so the anchor
  // reserve follows linearly. Rounding the product up never understates the
  // anchor, which keeps fixed-mode payouts on the safe side of the floor.
  return s.b + sp.xu_bar_norm +
         num::muldiv_ceil(s.b, s.x - sp.xu_bar_norm, s.y);
}

namespace detail {

template <class C>
QuoteCore<C> discrete_redeem_core(const SystemState<C>& s, C amount,
                                  const StaticParams<C>& sp) {
  const C zero = num::zero<C>();
  const C one = num::one<C>();
  QuoteCore<C> q;
  q.state = s;
  const C y_a = s.x + s.y;

  if (num::cmp_ratio(s.b, s.y, one) >= 0) {
    q.kind = CurveKind::over_reserved;
    q.anchor = AnchorPoint<C>{s.b + s.x, y_a};
    q.payout = amount;
  } else if (num::cmp_ratio(s.b, s.y, sp.theta_bar) <= 0) {
    q.kind = CurveKind::under_floor;
    q.anchor = AnchorPoint<C>{num::muldiv_floor(s.b, y_a, s.y), y_a};
    q.payout = num::muldiv_floor(s.b, amount, s.y);
  } else {
    q.kind = CurveKind::regular;
    const SystemState<C> norm{s.x / y_a, s.b / y_a, s.y / y_a};
    const C ba = discrete_reconstruct(norm, sp) * y_a;
    q.anchor = AnchorPoint<C>{ba, y_a};
    if (amount == zero) {
      q.payout = zero;
    } else {
      const DiscreteSpec<C> d = build_discrete(*q.anchor, sp);
      const C after = discrete_reserve_at(d, s.x + amount);
      q.payout = num::min(num::max(s.b - after, zero), s.b);
    }
  }
  if (amount == zero) q.payout = zero;
  q.state = SystemState<C>{s.x + amount, s.b - q.payout, s.y - amount};
  return q;
}

}  // namespace detail

// Discrete-variant quote. No square roots at all.
template <class S>
Quote<S> discrete_redeem(const SystemState<S>& s, S amount,
                         const StaticParams<S>& sp) {
  validate_statics(sp);
  validate_state(s);
  if (!num::is_finite(amount) || amount < num::zero<S>())
    throw invalid_input("redeem amount must be finite and >= 0");
  if (amount > s.y)
    throw insufficient_supply("redeem amount exceeds outstanding supply");

  using C = counted<S>;
  const OpCount before = read_op_tally();
  detail::QuoteCore<C> core = detail::discrete_redeem_core<C>(
      detail::wrap(s), C(amount), detail::wrap(sp));
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

// Discrete curve sampling (flat / ratio segments only).
template <class S>
std::vector<CurvePoint<S>> sample_discrete_curve(const DiscreteSpec<S>& d,
                                                 S x0, int samples) {
  if (samples < 2) throw invalid_input("curve sampling needs >= 2 samples");
  validate_on_discrete(d, x0);
  const S y_a = d.anchor.y_a;
  std::vector<CurvePoint<S>> out;
  out.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    S x = i == samples - 1
              ? y_a
              : x0 + (y_a - x0) * num::from_int<S>(i) /
                         num::from_int<S>(samples - 1);
    CurvePoint<S> p;
    p.x = x;
    p.price = discrete_price_at(d, x);
    p.reserve = discrete_reserve_at(d, x);
    p.segment = discrete_segment_at(d, x);
    p.ratio = i == samples - 1 ? p.price : p.reserve / (y_a - x);
    out.push_back(p);
  }
  return out;
}

template <class S>
std::vector<CurvePoint<S>> discrete_quote_curve(const SystemState<S>& s,
                                                const StaticParams<S>& sp,
                                                int samples) {
  Quote<S> q = discrete_redeem(s, num::zero<S>(), sp);
  DiscreteSpec<S> d = build_discrete(*q.anchor, sp);
  return sample_discrete_curve(d, s.x, samples);
}

}  // namespace pamm
