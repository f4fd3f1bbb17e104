#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace smo {

// Raised when an operation's input violates its documented contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a numeric procedure cannot reach its tolerance. Carries the
// best estimate obtained so far, when one exists.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double best_estimate = 0.0)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

// Short %g rendering of a double for error messages.
inline std::string to_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace smo
