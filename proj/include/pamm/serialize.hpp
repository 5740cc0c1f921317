#pragma once

// JSON / CSV at the process boundary. Decimals travel as strings (see
// decimal.hpp); a 64-bit hash of the canonicalized static parameters ties a
// thresholds artifact to the parameter file it was computed from.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pamm/decimal.hpp"
#include "pamm/dynamics.hpp"
#include "pamm/errors.hpp"
#include "pamm/reconstruct.hpp"

namespace pamm {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& text);

// Canonical form of a decimal literal: exact fixed-point normalization when
// the literal fits 18 fractional digits, shortest round-trip double form
// otherwise. "0.30" and "0.3" hash identically either way.
std::string canonicalize_decimal(const std::string& text);

// Hash of "theta|alpha|xu" over canonicalized literals, as 16 hex digits.
std::string params_hash(const std::string& theta_bar,
                        const std::string& alpha_bar_norm,
                        const std::string& xu_bar_norm);

namespace detail {

inline std::string require_string_field(const Json& j, const char* key,
                                        const char* what) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw invalid_input(std::string(what) + " is missing string field '" +
                        key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace detail

inline std::string params_hash(const Json& params) {
  return params_hash(
      detail::require_string_field(params, "theta_bar", "parameter file"),
      detail::require_string_field(params, "alpha_bar_norm", "parameter file"),
      detail::require_string_field(params, "xu_bar_norm", "parameter file"));
}

template <class S>
StaticParams<S> params_from_json(const Json& j) {
  StaticParams<S> sp;
  sp.theta_bar = parse_decimal<S>(
      detail::require_string_field(j, "theta_bar", "parameter file"));
  sp.alpha_bar_norm = parse_decimal<S>(
      detail::require_string_field(j, "alpha_bar_norm", "parameter file"));
  sp.xu_bar_norm = parse_decimal<S>(
      detail::require_string_field(j, "xu_bar_norm", "parameter file"));
  validate_statics(sp);
  return sp;
}

template <class S>
Json params_to_json(const StaticParams<S>& sp) {
  Json j;
  j["theta_bar"] = format_scalar(sp.theta_bar);
  j["alpha_bar_norm"] = format_scalar(sp.alpha_bar_norm);
  j["xu_bar_norm"] = format_scalar(sp.xu_bar_norm);
  return j;
}

inline Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw invalid_input(std::string(what) + " is not valid JSON");
  return j;
}

template <class S>
Json thresholds_to_json(const PrecomputedThresholds<S>& t,
                        const std::string& hash) {
  Json j;
  j["params_hash"] = hash;
  j["ba_I_II"] = format_scalar(t.ba_I_II);
  j["xl_I_II"] = format_scalar(t.xl_I_II);
  j["ba_II_III"] = format_scalar(t.ba_II_III);
  j["ba_h_l"] = format_scalar(t.ba_h_l);
  j["xu_h_l"] = format_scalar(t.xu_h_l);
  j["ba_H_L"] = format_scalar(t.ba_H_L);
  j["alpha_H_L"] = format_scalar(t.alpha_H_L);
  return j;
}

template <class S>
PrecomputedThresholds<S> thresholds_from_json(const Json& j,
                                              const std::string& expected_hash) {
  const auto field = [&j](const char* key) -> std::string {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
      throw bad_thresholds(std::string("thresholds file is missing field '") +
                           key + "'");
    return j.at(key).get<std::string>();
  };
  if (field("params_hash") != expected_hash)
    throw bad_thresholds(
        "thresholds file was computed for different static parameters");
  PrecomputedThresholds<S> t;
  try {
    t.ba_I_II = parse_decimal<S>(field("ba_I_II"));
    t.xl_I_II = parse_decimal<S>(field("xl_I_II"));
    t.ba_II_III = parse_decimal<S>(field("ba_II_III"));
    t.ba_h_l = parse_decimal<S>(field("ba_h_l"));
    t.xu_h_l = parse_decimal<S>(field("xu_h_l"));
    t.ba_H_L = parse_decimal<S>(field("ba_H_L"));
    t.alpha_H_L = parse_decimal<S>(field("alpha_H_L"));
  } catch (const invalid_input& e) {
    throw bad_thresholds(std::string("thresholds file holds a bad decimal: ") +
                         e.what());
  }
  return t;
}

inline std::string trivial_label(CurveKind kind) {
  return kind == CurveKind::over_reserved ? "over-reserved" : "under-floor";
}

template <class S>
Json quote_to_json(const Quote<S>& q) {
  Json j;
  j["payout"] = format_scalar(q.payout);
  Json state;
  state["x"] = format_scalar(q.state.x);
  state["b"] = format_scalar(q.state.b);
  state["y"] = format_scalar(q.state.y);
  j["state"] = state;
  j["region"] = q.region ? to_string(*q.region) : trivial_label(q.kind);
  j["b_a"] = format_scalar(q.anchor ? q.anchor->b_a : num::zero<S>());
  Json ops;
  ops["arith"] = q.ops.arith;
  ops["sqrt"] = q.ops.sqrt;
  j["ops"] = ops;
  return j;
}

template <class S>
void write_quote_csv(std::ostream& os, const Quote<S>& q) {
  os << "payout,x,b,y,region,b_a,arith,sqrt\n";
  os << format_scalar(q.payout) << ',' << format_scalar(q.state.x) << ','
     << format_scalar(q.state.b) << ',' << format_scalar(q.state.y) << ','
     << (q.region ? to_string(*q.region) : trivial_label(q.kind)) << ','
     << format_scalar(q.anchor ? q.anchor->b_a : num::zero<S>()) << ','
     << q.ops.arith << ',' << q.ops.sqrt << '\n';
}

template <class S>
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint<S>>& pts) {
  os << "x,p,b,r,segment\n";
  for (const CurvePoint<S>& p : pts) {
    os << format_scalar(p.x) << ',' << format_scalar(p.price) << ','
       << format_scalar(p.reserve) << ',' << format_scalar(p.ratio) << ','
       << to_string(p.segment) << '\n';
  }
}

inline const char* to_string(ActionKind kind) {
  return kind == ActionKind::redeem ? "redeem" : "mint";
}

inline void write_trace_csv(std::ostream& os, const PathTrace& trace) {
  os << "step,kind,amount,x,b,y,r,r_a,region,payout_or_cost\n";
  for (const TraceRow& row : trace.rows) {
    os << row.step << ',' << to_string(row.kind) << ','
       << format_double(row.amount) << ',' << format_double(row.state.x) << ','
       << format_double(row.state.b) << ',' << format_double(row.state.y)
       << ',' << format_double(row.ratio) << ','
       << format_double(row.anchor_ratio) << ',' << row.region << ','
       << format_double(row.payout_or_cost) << '\n';
  }
}

inline std::vector<TradeAction> parse_path_script(const Json& j) {
  if (!j.is_array())
    throw invalid_input("path script must be a JSON array of actions");
  std::vector<TradeAction> actions;
  actions.reserve(j.size());
  for (const Json& entry : j) {
    const std::string kind =
        detail::require_string_field(entry, "kind", "path action");
    const std::string amount =
        detail::require_string_field(entry, "amount", "path action");
    TradeAction action;
    if (kind == "redeem")
      action.kind = ActionKind::redeem;
    else if (kind == "mint")
      action.kind = ActionKind::mint;
    else
      throw invalid_input("path action kind must be 'redeem' or 'mint'");
    action.amount = parse_double(amount);
    if (!(action.amount > 0))
      throw invalid_input("path action amounts must be > 0");
    actions.push_back(action);
  }
  return actions;
}

}  // namespace pamm
