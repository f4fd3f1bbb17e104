#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace smo {

using Complex = std::complex<double>;

/// How w is continued across [1, 2], where only its end behaviour is fixed.
enum class BridgeKind { SmoothStepBlend };

/// Smooth step s(t) = e(t) / (e(t) + e(1 - t)) with e(t) = exp(-1/t) for t > 0,
/// 0 otherwise. s = 0 for t <= 0 and 1 for t >= 1.
double smooth_step(double t);

/// The compactly supported weight on [0, 3]:
///   0 off (0, 3), exp(-1/x) on (0, 1], exp(-1/(3 - x)) on [2, 3),
///   (1 - s(x-1)) exp(-1/x) + s(x-1) exp(-1/(3-x)) on (1, 2).
class WeightFunction {
 public:
  explicit WeightFunction(BridgeKind bridge = BridgeKind::SmoothStepBlend) : bridge_(bridge) {}

  double operator()(double x) const;
  BridgeKind bridge() const noexcept { return bridge_; }
  static constexpr double support_lo() { return 0.0; }
  static constexpr double support_hi() { return 3.0; }

 private:
  BridgeKind bridge_;
};

double weight(double x);

struct MellinOptions {
  double abs_tolerance = 1e-10;   // adaptive rule error target
  double agreement = 1e-9;        // max |adaptive - fixed panels|
  std::size_t max_intervals = 20000;
};

struct MellinValue {
  Complex value;                 // adaptive Gauss-Kronrod result
  double error_estimate = 0.0;
  Complex fixed_value;           // fixed Gauss-Legendre panels result
  std::size_t panels = 0;        // panel count used by the fixed rule
  std::size_t intervals = 0;     // leaves of the adaptive subdivision
};

/// W(s) = int_0^hi w(x) x^{s-1} dx, integrated in u = log(x / (hi - x)).
/// Two rules are run: adaptive Gauss-Kronrod and fixed 30-point Gauss-Legendre
/// panels. evaluate() throws NumericError (carrying |best estimate|) when the
/// adaptive error exceeds abs_tolerance or the rules disagree.
class MellinEvaluator {
 public:
  MellinEvaluator();
  MellinEvaluator(std::function<double(double)> w, double support_hi, std::vector<double> breakpoints,
                  MellinOptions options = {});

  MellinValue evaluate(Complex s) const;
  /// Adaptive rule only; no cross-check.
  Complex adaptive(Complex s, double* error = nullptr, std::size_t* intervals = nullptr) const;
  Complex fixed_panels(Complex s, std::size_t* panels = nullptr) const;

  const MellinOptions& options() const noexcept { return options_; }

 private:
  std::vector<double> integration_nodes(double sigma) const;

  std::function<double(double)> w_;
  double hi_;
  std::vector<double> breakpoints_;  // in x
  MellinOptions options_;
};

/// Mellin transform of the default weight, cross-checked.
MellinValue mellin(Complex s);

struct MellinDecayFit {
  double slope = 0.0;              // least squares over all retained points
  double slope_lower_half = 0.0;   // fit over the first half of retained points
  double slope_upper_half = 0.0;   // fit over the second half
  std::vector<double> t;
  std::vector<double> abs_w;
  std::size_t dropped = 0;         // points with |W| < 1e-300
};

/// Least-squares slope of log|W(sigma + i t)| against log t.
MellinDecayFit mellin_decay_fit(double sigma, std::span<const double> t_grid,
                                const MellinEvaluator& evaluator = MellinEvaluator());

/// |(1/2 pi) int_{-T}^{T} W(2 + it) x^{-2-it} dt - w(x)|.
double mellin_inversion_check(double x, double T);

/// Slope of the least-squares line through (xs, ys).
double least_squares_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace smo
