#pragma once

// State validation and scale normalization. The curve construction commutes
// with uniform scaling (b, y_a, x all scale together), so detection and
// reconstruction run on the normalized scale x + y = 1 and results are
// scaled back by y_a = x + y.

#include "pamm/errors.hpp"
#include "pamm/types.hpp"

namespace pamm {

template <class S>
void validate_statics(const StaticParams<S>& sp) {
  const S zero = num::zero<S>();
  const S one = num::one<S>();
  if (!num::is_finite(sp.theta_bar) || !num::is_finite(sp.alpha_bar_norm) ||
      !num::is_finite(sp.xu_bar_norm))
    throw invalid_input("static parameters must be finite");
  if (!(zero <= sp.theta_bar) || !(sp.theta_bar <= one))
    throw invalid_input("theta_bar must lie in [0, 1]");
  if (!(zero < sp.alpha_bar_norm))
    throw invalid_input("alpha_bar_norm must be positive");
  if (!(zero <= sp.xu_bar_norm) || !(sp.xu_bar_norm <= one))
    throw invalid_input("xu_bar_norm must lie in [0, 1]");
}

template <class S>
void validate_state(const SystemState<S>& s) {
  const S zero = num::zero<S>();
  if (!num::is_finite(s.x) || !num::is_finite(s.b) || !num::is_finite(s.y))
    throw invalid_input("state must be finite");
  if (s.x < zero) throw invalid_input("state requires x >= 0");
  if (s.b < zero) throw invalid_input("state requires b >= 0");
  if (!(s.y > zero)) throw invalid_input("state requires y > 0");
}

template <class S>
struct NormalizedState {
  SystemState<S> state;  // x + y = 1
  S scale;               // y_a of the original state
};

template <class S>
NormalizedState<S> normalize_state(const SystemState<S>& s) {
  validate_state(s);
  const S y_a = s.x + s.y;
  return NormalizedState<S>{{s.x / y_a, s.b / y_a, s.y / y_a}, y_a};
}

// Static parameters expressed on the scale of a concrete anchor.
template <class S>
struct ScaledStatics {
  S theta_bar;
  S alpha_bar;
  S xu_bar;
};

template <class S>
ScaledStatics<S> scale_statics(const StaticParams<S>& sp, S y_a) {
  return ScaledStatics<S>{sp.theta_bar, sp.alpha_bar_norm / y_a,
                          sp.xu_bar_norm * y_a};
}

}  // namespace pamm
