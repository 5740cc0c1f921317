#pragma once

// Trade-path dynamics in float mode.
//
// Redemption is the ODE  db/dx = -(rho - gamma),  dy/dx = -1  where rho is
// the marginal redemption price at the live state and gamma an optional
// retained fee rate. Mints move x down at par plus premium. Two curve
// providers feed the integrator:
//   * the closed-form provider (detection + reconstruction + selection),
//     used by apply_path,
//   * a differential provider that recovers the anchor by bisecting the
//     forward reserve map, never touching detection or reconstruction; it
//     powers ode_redeem_oracle, the independent check of the closed-form
//     quote path.
// Integration uses a controlled Cash-Karp 5(4) stepper with mandatory mesh
// barriers at the current curve's knees, so no step straddles a kink.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "pamm/reconstruct.hpp"
#include "pamm/rng.hpp"

namespace pamm {

inline constexpr double kDefaultOdeTol = 1e-10;

struct FeeConfig {
  // Retained fraction of the marginal price on redemptions (gamma = eps*rho).
  double redeem_fee_eps = 0.0;
  // Constant per-unit mint cost (par is 1.0).
  double mint_phi = 1.0;
  // Optional overrides: absolute retained rate / per-unit mint cost as
  // functions of the live state.
  std::function<double(const SystemState<double>&)> redeem_gamma{};
  std::function<double(const SystemState<double>&)> mint_phi_fn{};
};

namespace detail {

using CurveProvider =
    std::function<CurveSpec<double>(const SystemState<double>&)>;

// Curve through a live state via the quote pipeline. For x < 0 the state is
// ahead of its anchor on the flat extension; the curve proper starts at 0.
inline CurveSpec<double> closed_form_curve(
    const SystemState<double>& s, const StaticParams<double>& sp,
    const PrecomputedThresholds<double>& t) {
  const double y_a = s.x + s.y;
  if (s.x < 0) return dynamic_params(AnchorPoint<double>{s.b + s.x, y_a}, sp);
  const double r = s.b / s.y;
  if (r >= 1.0)
    return dynamic_params(AnchorPoint<double>{s.b + s.x, y_a}, sp);
  if (r <= sp.theta_bar)
    return dynamic_params(AnchorPoint<double>{s.b * y_a / s.y, y_a}, sp);
  const SystemState<double> norm{s.x / y_a, s.b / y_a, s.y / y_a};
  const Region region = detect_region_unchecked(norm, sp, t);
  const double ba = reconstruct_ba(norm, region, sp) * y_a;
  return dynamic_params(AnchorPoint<double>{ba, y_a}, sp);
}

// Curve through a live state recovered from the forward map alone: the
// anchor reserve is the unique b_a whose curve passes through (x, b), found
// by bisection (the reserve at fixed x is monotone in b_a).
inline CurveSpec<double> bisected_curve(const SystemState<double>& s,
                                        const StaticParams<double>& sp) {
  const double y_a = s.x + s.y;
  const double r = s.b / s.y;
  if (r >= 1.0)
    return dynamic_params(AnchorPoint<double>{s.b + s.x, y_a}, sp);
  if (r <= sp.theta_bar)
    return dynamic_params(AnchorPoint<double>{s.b * y_a / s.y, y_a}, sp);
  double lo = sp.theta_bar * y_a;
  double hi = y_a;
  for (int i = 0; i < 90; ++i) {
    const double mid = 0.5 * (lo + hi);
    const CurveSpec<double> spec =
        dynamic_params(AnchorPoint<double>{mid, y_a}, sp);
    if (reserve_at(spec, s.x) < s.b)
      lo = mid;
    else
      hi = mid;
  }
  return dynamic_params(AnchorPoint<double>{0.5 * (lo + hi), y_a}, sp);
}

struct LegResult {
  double b_final;
};

// Integrates one redemption leg of size `amount` from (x0, b0, y0).
// rho_of(state) is the marginal price; retained(state) the fee rate kept in
// the reserve. curve_at supplies the current curve for mesh barriers and for
// price evaluation on the terminal sliver where y underflows.
inline LegResult run_redeem_leg(
    const SystemState<double>& start, double amount,
    const CurveProvider& curve_at,
    const std::function<double(const SystemState<double>&)>& retained,
    double rel_tol) {
  namespace odeint = boost::numeric::odeint;
  using Stepper =
      odeint::runge_kutta_cash_karp54<double, double, double, double,
                                      odeint::vector_space_algebra>;
  const double x0 = start.x;
  const double y0 = start.y;
  const double x_end = x0 + amount;
  const double y_a = x0 + y0;
  const double scale = std::max({1.0, std::abs(y_a), start.b});
  const double tiny = 1e-14 * scale;

  CurveSpec<double> cache = curve_at(start);

  const auto rho = [&](double x, double b, double y) {
    if (x < 0) return 1.0;
    if (y <= tiny) return price_at(cache, std::min(x, cache.anchor.y_a));
    const double r = b / y;
    if (r >= 1.0) return 1.0;
    if (r <= cache.theta_bar) return r;
    return price_at(curve_at(SystemState<double>{x, b, y}),
                    std::min(x, y_a));
  };

  auto ctrl = odeint::make_controlled<Stepper>(1e-14 * scale, rel_tol);
  double x = x0;
  double b = start.b;
  double dt = amount / 8;
  long iters = 0;
  while (x < x_end - tiny) {
    if (++iters > 1000000) throw error("redemption leg failed to converge");
    const double y = y0 - (x - x0);
    cache = curve_at(SystemState<double>{x, b, y});
    double barrier = x_end;
    if (cache.kind == CurveKind::regular) {
      for (double knee : {cache.dyn.x_u, cache.dyn.x_l}) {
        if (knee > x + 2 * tiny && knee < barrier) barrier = knee;
      }
    }
    dt = std::min(dt, barrier - x);
    const auto sys = [&](const double& bb, double& dbdx, double xx) {
      const SystemState<double> at{xx, bb, y0 - (xx - x0)};
      const double p = rho(at.x, at.b, at.y);
      const double g = std::max(retained(at), 0.0);
      dbdx = -(p - g);
    };
    const odeint::controlled_step_result res = ctrl.try_step(sys, b, x, dt);
    if (res == odeint::fail) {
      if (dt < 1e-18 * scale) throw error("ODE step size collapsed");
      continue;
    }
  }
  return LegResult{b};
}

}  // namespace detail

// Marginal redemption price at a live state. For x <= 0 the state sits on
// the flat extension ahead of its anchor and prices at par.
inline double marginal_price(const SystemState<double>& s,
                             const StaticParams<double>& sp,
                             const PrecomputedThresholds<double>& t) {
  validate_statics(sp);
  if (!(s.y > 0)) throw invalid_input("marginal price requires y > 0");
  const double r = s.b / s.y;
  if (r >= 1.0) return 1.0;
  if (r <= sp.theta_bar) return r;
  if (s.x <= 0) return 1.0;
  const CurveSpec<double> spec = detail::closed_form_curve(s, sp, t);
  return price_at(spec, std::min(s.x, spec.anchor.y_a));
}

inline double marginal_price(const SystemState<double>& s,
                             const StaticParams<double>& sp) {
  return marginal_price(s, sp, precompute(sp));
}

// Anchor ratio of the curve through a live state, with the label used in
// trace output. States ahead of their anchor (x <= 0) and over-reserved
// states read the anchor off the flat extension.
inline std::pair<double, std::string> anchor_ratio(
    const SystemState<double>& s, const StaticParams<double>& sp,
    const PrecomputedThresholds<double>& t) {
  const double y_a = s.x + s.y;
  if (!(s.y > 0)) return {(s.b + s.x) / y_a, "exhausted"};
  const double r = s.b / s.y;
  if (r >= 1.0) return {(s.b + s.x) / y_a, "over-reserved"};
  if (r <= sp.theta_bar) return {r, "under-floor"};
  if (s.x <= 0) return {(s.b + s.x) / y_a, "pre-anchor"};
  const SystemState<double> norm{s.x / y_a, s.b / y_a, s.y / y_a};
  const Region region = detail::detect_region_unchecked(norm, sp, t);
  return {reconstruct_ba(norm, region, sp), to_string(region)};
}

// Differential quote: integrates the redemption ODE with the bisection-based
// curve provider. Independent of detection and reconstruction end to end.
inline double ode_redeem_oracle(const SystemState<double>& s, double amount,
                                const StaticParams<double>& sp,
                                double rel_tol = kDefaultOdeTol) {
  validate_statics(sp);
  validate_state(s);
  if (!(amount >= 0)) throw invalid_input("redeem amount must be >= 0");
  if (amount > s.y)
    throw insufficient_supply("redeem amount exceeds outstanding supply");
  if (amount == 0) return 0.0;
  const detail::CurveProvider provider =
      [&sp](const SystemState<double>& at) {
        return detail::bisected_curve(at, sp);
      };
  const auto no_fee = [](const SystemState<double>&) { return 0.0; };
  const detail::LegResult leg =
      detail::run_redeem_leg(s, amount, provider, no_fee, rel_tol);
  return s.b - leg.b_final;
}

// ---------------------------------------------------------------------------
// Path application.

enum class ActionKind { redeem, mint };

struct TradeAction {
  ActionKind kind;
  double amount;
};

enum class PathStatus { ok, insufficient_supply };

struct TraceRow {
  int step;
  ActionKind kind;
  double amount;
  SystemState<double> state;  // after the action
  double ratio;               // b/y (0 at exhaustion)
  double anchor_ratio;
  std::string region;
  double payout_or_cost;  // payout for redeems, cost for mints
};

struct PathTrace {
  std::vector<TraceRow> rows;
  SystemState<double> final_state;
  double total_payout = 0;
  double total_mint_cost = 0;
  PathStatus status = PathStatus::ok;
};

// Applies a mixed redeem/mint path by ODE integration against the
// closed-form curve provider. Stops early with status insufficient_supply
// if a redeem leg exceeds the outstanding supply; rows up to that point are
// kept.
inline PathTrace apply_path(const SystemState<double>& start,
                            const std::vector<TradeAction>& actions,
                            const FeeConfig& fees,
                            const StaticParams<double>& sp,
                            double rel_tol = kDefaultOdeTol) {
  validate_statics(sp);
  if (!num::is_finite(start.x) || !num::is_finite(start.b) ||
      !num::is_finite(start.y) || start.b < 0 || !(start.y > 0))
    throw invalid_input("path start state must be finite with y > 0, b >= 0");
  const PrecomputedThresholds<double> t = precompute(sp);
  const detail::CurveProvider provider =
      [&sp, &t](const SystemState<double>& at) {
        return detail::closed_form_curve(at, sp, t);
      };

  PathTrace out;
  SystemState<double> s = start;
  int step = 0;
  for (const TradeAction& action : actions) {
    ++step;
    if (!num::is_finite(action.amount) || action.amount < 0)
      throw invalid_input("path amounts must be finite and >= 0");
    double flow = 0;
    if (action.kind == ActionKind::redeem) {
      if (action.amount > s.y) {
        out.status = PathStatus::insufficient_supply;
        break;
      }
      std::function<double(const SystemState<double>&)> gamma_fn;
      if (fees.redeem_gamma) {
        gamma_fn = fees.redeem_gamma;
      } else {
        const double eps = fees.redeem_fee_eps;
        gamma_fn = [&sp, &t, eps](const SystemState<double>& at) {
          if (eps == 0.0) return 0.0;
          return eps * marginal_price(at, sp, t);
        };
      }
      const detail::LegResult leg =
          detail::run_redeem_leg(s, action.amount, provider, gamma_fn,
                                 rel_tol);
      flow = s.b - leg.b_final;
      out.total_payout += flow;
      s = SystemState<double>{s.x + action.amount, leg.b_final,
                              s.y - action.amount};
    } else {
      double cost;
      if (fees.mint_phi_fn) {
        // Per-unit cost varies with the state; midpoint-refined sum.
        const int pieces = 64;
        const double h = action.amount / pieces;
        cost = 0;
        SystemState<double> at = s;
        for (int i = 0; i < pieces; ++i) {
          const SystemState<double> mid{at.x - 0.5 * h, at.b,
                                        at.y + 0.5 * h};
          const double phi = fees.mint_phi_fn(mid);
          cost += phi * h;
          at = SystemState<double>{at.x - h, at.b + phi * h, at.y + h};
        }
      } else {
        cost = fees.mint_phi * action.amount;
      }
      flow = cost;
      out.total_mint_cost += cost;
      s = SystemState<double>{s.x - action.amount, s.b + cost,
                              s.y + action.amount};
    }
    TraceRow row;
    row.step = step;
    row.kind = action.kind;
    row.amount = action.amount;
    row.state = s;
    row.ratio = s.y > 0 ? s.b / s.y : 0.0;
    const auto [ra, label] = anchor_ratio(s, sp, t);
    row.anchor_ratio = ra;
    row.region = label;
    row.payout_or_cost = flow;
    out.rows.push_back(row);
  }
  out.final_state = s;
  return out;
}

// ---------------------------------------------------------------------------
// Property checkers.

struct IndependenceReport {
  double payout_single = 0;
  double payout_split = 0;
  double payout_dev = 0;
  double state_dev = 0;
};

// Splits one closed-form redemption into k random chunks and compares the
// summed payouts and final state against the single-shot quote.
inline IndependenceReport check_path_independence(
    const SystemState<double>& s, double total, int k,
    const StaticParams<double>& sp, std::uint64_t seed) {
  if (k < 1) throw invalid_input("split count must be >= 1");
  if (!(total >= 0) || total > s.y)
    throw invalid_input("split total must lie in [0, y]");
  const PrecomputedThresholds<double> t = precompute(sp);
  const Quote<double> single = redeem(s, total, sp, t);

  Rng rng(seed);
  std::vector<double> cuts;
  cuts.reserve(static_cast<size_t>(k) + 1);
  cuts.push_back(0);
  for (int i = 0; i < k - 1; ++i) cuts.push_back(rng.uniform(0, total));
  cuts.push_back(total);
  std::sort(cuts.begin(), cuts.end());

  SystemState<double> at = s;
  double sum = 0;
  for (int i = 0; i < k; ++i) {
    const double chunk = cuts[static_cast<size_t>(i) + 1] -
                         cuts[static_cast<size_t>(i)];
    const Quote<double> q = redeem(at, chunk, sp, t);
    sum += q.payout;
    at = q.state;
  }

  IndependenceReport rep;
  rep.payout_single = single.payout;
  rep.payout_split = sum;
  rep.payout_dev = std::abs(sum - single.payout);
  rep.state_dev = std::max({std::abs(at.x - single.state.x),
                            std::abs(at.b - single.state.b),
                            std::abs(at.y - single.state.y)});
  return rep;
}

struct DeficiencyReport {
  PathTrace trace;
  // Largest decrease of the anchor ratio along the path (should be ~0).
  double max_anchor_ratio_drop = 0;
  // Final ratio minus the zero-fee initial-curve ratio at the netted
  // position (should be >= ~0).
  double netting_margin = 0;
  bool netting_checked = false;
  // Single-shot payout of the net amount minus the trader's net take along
  // the split path (should be >= ~0).
  double single_shot_margin = 0;
  bool single_shot_checked = false;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Runs a mixed path and evaluates the no-free-lunch properties: the anchor
// ratio never falls, netted paths end at or above the zero-fee curve, and
// splitting never beats the single shot.
inline DeficiencyReport check_path_deficiency(
    const SystemState<double>& start, const std::vector<TradeAction>& actions,
    const FeeConfig& fees, const StaticParams<double>& sp,
    double rel_tol = kDefaultOdeTol) {
  constexpr double kTol = 1e-9;
  const PrecomputedThresholds<double> t = precompute(sp);
  DeficiencyReport rep;
  rep.trace = apply_path(start, actions, fees, sp, rel_tol);

  double prev = anchor_ratio(start, sp, t).first;
  for (const TraceRow& row : rep.trace.rows) {
    rep.max_anchor_ratio_drop =
        std::max(rep.max_anchor_ratio_drop, prev - row.anchor_ratio);
    prev = row.anchor_ratio;
  }
  if (rep.max_anchor_ratio_drop > kTol)
    rep.violations.push_back("anchor ratio decreased by " +
                             std::to_string(rep.max_anchor_ratio_drop));

  const SystemState<double>& fin = rep.trace.final_state;
  const double y_a0 = start.x + start.y;
  const CurveSpec<double> curve0 = detail::closed_form_curve(start, sp, t);
  if (fin.y > 1e-12 * y_a0) {
    double reference;
    if (fin.x < 0) {
      reference = (curve0.anchor.b_a - fin.x) / (y_a0 - fin.x);
    } else {
      reference = reserve_at(curve0, std::min(fin.x, y_a0)) / (y_a0 - fin.x);
    }
    rep.netting_margin = fin.b / fin.y - reference;
    rep.netting_checked = true;
    if (rep.netting_margin < -kTol)
      rep.violations.push_back("netted path fell below the zero-fee curve by " +
                               std::to_string(-rep.netting_margin));
  }

  const double net = fin.x - start.x;
  if (rep.trace.status == PathStatus::ok && net > 1e-12 && net <= start.y) {
    const PathTrace single = apply_path(
        start, {TradeAction{ActionKind::redeem, net}}, fees, sp, rel_tol);
    const double trader_net =
        rep.trace.total_payout - rep.trace.total_mint_cost;
    rep.single_shot_margin = single.total_payout - trader_net;
    rep.single_shot_checked = true;
    if (rep.single_shot_margin < -kTol)
      rep.violations.push_back("split path beat the single shot by " +
                               std::to_string(-rep.single_shot_margin));
  }
  return rep;
}

// Block boundary: open redemption positions decay toward the anchor.
template <class S>
SystemState<S> advance_block(const SystemState<S>& s, S lambda) {
  if (!num::is_finite(lambda) || lambda < num::zero<S>() ||
      lambda > num::one<S>())
    throw invalid_input("decay factor must lie in [0, 1]");
  return SystemState<S>{lambda * s.x, s.b, s.y};
}

}  // namespace pamm
