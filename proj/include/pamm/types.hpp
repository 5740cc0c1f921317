#pragma once

// Value types shared across the library.

#include <optional>
#include <string>

#include "pamm/scalar.hpp"

namespace pamm {

// Governance-chosen static parameters. alpha_bar_norm and xu_bar_norm are
// expressed on the normalized scale (anchor supply = 1); theta_bar is the
// absolute floor price. Denormalization to an anchor with supply y_a:
//   alpha_bar = alpha_bar_norm / y_a,   xu_bar = xu_bar_norm * y_a.
template <class S>
struct StaticParams {
  S theta_bar;
  S alpha_bar_norm;
  S xu_bar_norm;
};

// Live pool state: x tokens already redeemed on the current curve, b reserve
// backing, y outstanding supply. x + y is invariant along every trade path.
template <class S>
struct SystemState {
  S x;
  S b;
  S y;
};

// Anchor of the current curve: reserve b_a and supply y_a at the point the
// curve was last (re)derived, i.e. at x = 0.
template <class S>
struct AnchorPoint {
  S b_a;
  S y_a;
};

// Derived per-curve parameters: decay slope alpha, flat segment end x_u,
// floor segment start x_l, terminal ratio r_l.
template <class S>
struct DynamicParams {
  S alpha;
  S x_u;
  S x_l;
  S r_l;
};

// Anchors with ratio >= 1 price at par everywhere; anchors at or below the
// floor price everywhere at their own ratio. Everything else is regular.
enum class CurveKind { regular, over_reserved, under_floor };

template <class S>
struct CurveSpec {
  AnchorPoint<S> anchor;
  S theta_bar;
  S alpha_bar{};  // statics on the anchor's scale
  S xu_bar{};
  CurveKind kind = CurveKind::regular;
  DynamicParams<S> dyn{};  // meaningful only when kind == regular
};

enum class Segment { flat, linear, ratio };

inline const char* to_string(Segment s) {
  switch (s) {
    case Segment::flat:
      return "flat";
    case Segment::linear:
      return "linear";
    default:
      return "ratio";
  }
}

// ---------------------------------------------------------------------------
// Region taxonomy.
//
// Major: which constraint pins the curve.
//   I   slope floor alpha_bar and cap xu_bar both bind
//   II  slope floor binds, cap does not
//   III minimal admissible slope exceeds alpha_bar
// Sub (II only): h when the floor segment starts at supply exhaustion
// (x_l = y_a), l when the terminal ratio sits on the price floor.
// Greek (III only): H/L mirror the same split for the steep regime.
// Minor: which curve segment the state sits on (i flat, ii linear/terminal,
// iii past the floor knee).

enum class Major { I, II, III };
enum class Sub { none, h, l };
enum class Greek { none, H, L };
enum class Minor { i, ii, iii };

struct Region {
  Major major = Major::I;
  Sub sub = Sub::none;
  Greek greek = Greek::none;
  Minor minor = Minor::i;

  friend bool operator==(const Region&, const Region&) = default;
};

inline std::string to_string(const Region& r) {
  std::string out;
  switch (r.major) {
    case Major::I:
      out = "I";
      break;
    case Major::II:
      out = "II";
      break;
    default:
      out = "III";
      break;
  }
  if (r.sub == Sub::h) out += " h";
  if (r.sub == Sub::l) out += " l";
  if (r.greek == Greek::H) out += " H";
  if (r.greek == Greek::L) out += " L";
  switch (r.minor) {
    case Minor::i:
      out += " i";
      break;
    case Minor::ii:
      out += " ii";
      break;
    default:
      out += " iii";
      break;
  }
  return out;
}

// Precomputed detection thresholds on the normalized scale (y_a = 1). All are
// anchor reserves except xl_I_II (a redeemed-amount knee) and xu_h_l /
// alpha_H_L (curve parameters of the boundary curves). Values may fall
// outside (theta_bar, 1); detection then simply never matches that side.
template <class S>
struct PrecomputedThresholds {
  S ba_I_II;
  S xl_I_II;
  S ba_II_III;
  S ba_h_l;
  S xu_h_l;
  S ba_H_L;
  S alpha_H_L;
};

// Result of a quote. `region` and `anchor` are absent when the trivial
// branches (zero amount, over-reserved, under-floor) bypass detection.
template <class S>
struct Quote {
  S payout;
  SystemState<S> state;
  CurveKind kind = CurveKind::regular;
  std::optional<Region> region;
  std::optional<AnchorPoint<S>> anchor;
  OpCount ops;
};

}  // namespace pamm
