#pragma once

#include <stdexcept>
#include <string>

namespace pamm {

// Error taxonomy. The CLI maps these onto its documented exit codes:
// invalid_input -> 2, insufficient_supply -> 3, bad_thresholds -> 4.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed or out-of-domain numeric input (bad decimal string, negative
// radicand beyond rounding slop, state outside the required ratio band, ...).
class invalid_input : public error {
 public:
  explicit invalid_input(const std::string& what_arg) : error(what_arg) {}
};

// Redemption amount exceeds outstanding supply.
class insufficient_supply : public error {
 public:
  explicit insufficient_supply(const std::string& what_arg) : error(what_arg) {}
};

// Thresholds artifact fails parsing or identity verification.
class bad_thresholds : public error {
 public:
  explicit bad_thresholds(const std::string& what_arg) : error(what_arg) {}
};

}  // namespace pamm
