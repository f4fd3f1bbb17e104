#include "smo/smoothing.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "smo/errors.hpp"

namespace smo {

namespace {

double exp_neg_inv(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// log|integrand| at u, -inf where w vanishes.
struct Chart {
  double hi;

  double x(double u) const { return hi / (1.0 + std::exp(-u)); }
  double log_x(double u) const {
    return u >= 0.0 ? std::log(hi) - std::log1p(std::exp(-u)) : std::log(hi) + u - std::log1p(std::exp(u));
  }
  // dx/du = x (hi - x) / hi
  double log_jacobian(double u) const {
    return std::log(hi) - std::log1p(std::exp(-u)) - std::log1p(std::exp(u));
  }
  double u(double x) const { return std::log(x / (hi - x)); }
};

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = exp_neg_inv(t);
  const double b = exp_neg_inv(1.0 - t);
  return a / (a + b);
}

double WeightFunction::operator()(double x) const {
  if (x <= 0.0 || x >= 3.0) return 0.0;
  if (x <= 1.0) return std::exp(-1.0 / x);
  if (x >= 2.0) return std::exp(-1.0 / (3.0 - x));
  const double s = smooth_step(x - 1.0);
  return (1.0 - s) * std::exp(-1.0 / x) + s * std::exp(-1.0 / (3.0 - x));
}

double weight(double x) {
  static const WeightFunction w;
  return w(x);
}

MellinEvaluator::MellinEvaluator()
    : MellinEvaluator([](double x) { return weight(x); }, WeightFunction::support_hi(), {1.0, 2.0}) {}

MellinEvaluator::MellinEvaluator(std::function<double(double)> w, double support_hi,
                                 std::vector<double> breakpoints, MellinOptions options)
    : w_(std::move(w)), hi_(support_hi), breakpoints_(std::move(breakpoints)), options_(options) {
  if (!(hi_ > 0.0)) throw PreconditionError("MellinEvaluator: support must be (0, hi) with hi > 0");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::remove_if(breakpoints_.begin(), breakpoints_.end(),
                                    [this](double b) { return !(b > 0.0 && b < hi_); }),
                     breakpoints_.end());
}

std::vector<double> MellinEvaluator::integration_nodes(double sigma) const {
  const Chart chart{hi_};
  auto log_mag = [&](double u) {
    const double wx = w_(chart.x(u));
    if (!(wx > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(wx) + (sigma - 1.0) * chart.log_x(u) + chart.log_jacobian(u);
  };
  constexpr double kNegligible = -50.0;  // e^-50 ~ 2e-22 per unit u
  constexpr double kStep = 0.25;
  constexpr double kMaxU = 200.0;

  std::vector<double> inner;
  for (double b : breakpoints_) inner.push_back(chart.u(b));
  if (inner.empty()) inner.push_back(0.0);

  auto scan = [&](double start, double direction) {
    int quiet = 0;
    double u = start;
    while (std::abs(u) < kMaxU) {
      u += direction * kStep;
      quiet = log_mag(u) < kNegligible ? quiet + 1 : 0;
      if (quiet >= 4) return u;
    }
    throw NumericError("mellin: integrand does not decay at sigma = " + to_text(sigma));
  };
  std::vector<double> nodes;
  nodes.push_back(scan(inner.front(), -1.0));
  for (double u : inner) nodes.push_back(u);
  nodes.push_back(scan(inner.back(), +1.0));
  return nodes;
}

Complex MellinEvaluator::adaptive(Complex s, double* error, std::size_t* intervals) const {
  const Chart chart{hi_};
  auto f = [&](double u) -> Complex {
    const double wx = w_(chart.x(u));
    if (wx == 0.0) return {0.0, 0.0};
    return wx * std::exp((s - 1.0) * chart.log_x(u) + chart.log_jacobian(u));
  };
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Panel {
    double a, b;
    Complex value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto eval = [&](double a, double b) {
    double err = 0.0;
    const Complex v = Rule::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err};
  };

  const auto nodes = integration_nodes(s.real());
  std::priority_queue<Panel> heap;
  Complex total(0.0, 0.0);
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Panel p = eval(nodes[i], nodes[i + 1]);
    total += p.value;
    total_error += p.error;
    heap.push(p);
  }
  while (total_error > options_.abs_tolerance && heap.size() < options_.max_intervals) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = eval(worst.a, mid);
    const Panel right = eval(mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum the leaves to shed drift from the running updates.
  total = {0.0, 0.0};
  total_error = 0.0;
  const std::size_t leaves = heap.size();
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  if (error) *error = total_error;
  if (intervals) *intervals = leaves;
  return total;
}

Complex MellinEvaluator::fixed_panels(Complex s, std::size_t* panels) const {
  const Chart chart{hi_};
  auto f = [&](double u) -> Complex {
    const double wx = w_(chart.x(u));
    if (wx == 0.0) return {0.0, 0.0};
    return wx * std::exp((s - 1.0) * chart.log_x(u) + chart.log_jacobian(u));
  };
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const auto nodes = integration_nodes(s.real());
  // One panel per ~2 radians of x^{it} oscillation, at least 16 per piece.
  const double density = 0.5 * (1.0 + std::abs(s.imag()) + std::abs(s.real() - 1.0));
  Complex total(0.0, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double len = nodes[i + 1] - nodes[i];
    const auto n = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(len * density)));
    const double h = len / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = nodes[i] + h * static_cast<double>(k);
      total += Rule::integrate(f, a, k + 1 == n ? nodes[i + 1] : a + h);
    }
    count += n;
  }
  if (panels) *panels = count;
  return total;
}

MellinValue MellinEvaluator::evaluate(Complex s) const {
  MellinValue out;
  out.value = adaptive(s, &out.error_estimate, &out.intervals);
  out.fixed_value = fixed_panels(s, &out.panels);
  if (out.error_estimate > options_.abs_tolerance) {
    throw NumericError("mellin: tolerance " + to_text(options_.abs_tolerance) +
                           " not met (estimate " + to_text(out.error_estimate) + ") after " +
                           std::to_string(out.intervals) + " intervals",
                       std::abs(out.value));
  }
  if (std::abs(out.value - out.fixed_value) > options_.agreement) {
    throw NumericError("mellin: quadrature rules disagree by " +
                           to_text(std::abs(out.value - out.fixed_value)),
                       std::abs(out.value));
  }
  return out;
}

MellinValue mellin(Complex s) {
  static const MellinEvaluator evaluator;
  return evaluator.evaluate(s);
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw PreconditionError("least_squares_slope: need at least two paired points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw PreconditionError("least_squares_slope: abscissae are all equal");
  return sxy / sxx;
}

MellinDecayFit mellin_decay_fit(double sigma, std::span<const double> t_grid,
                                const MellinEvaluator& evaluator) {
  if (t_grid.size() < 2) throw PreconditionError("mellin_decay_fit: need at least two t values");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw PreconditionError("mellin_decay_fit: t_grid must be positive and increasing");
    }
  }
  MellinDecayFit fit;
  std::vector<double> log_t, log_w;
  for (double t : t_grid) {
    const double a = std::abs(evaluator.evaluate(Complex(sigma, t)).value);
    if (!(a >= 1e-300)) {
      ++fit.dropped;
      continue;
    }
    fit.t.push_back(t);
    fit.abs_w.push_back(a);
    log_t.push_back(std::log(t));
    log_w.push_back(std::log(a));
  }
  fit.slope = least_squares_slope(log_t, log_w);
  const std::size_t half = log_t.size() / 2;
  if (half >= 2) {
    fit.slope_lower_half = least_squares_slope(std::span(log_t).first(half), std::span(log_w).first(half));
    fit.slope_upper_half = least_squares_slope(std::span(log_t).subspan(half), std::span(log_w).subspan(half));
  }
  return fit;
}

double mellin_inversion_check(double x, double T) {
  if (!(x > 0.0)) throw PreconditionError("mellin_inversion_check: x must be positive");
  if (!(T > 0.0)) throw PreconditionError("mellin_inversion_check: T must be positive");
  static const MellinEvaluator evaluator;
  const double log_x = std::log(x);
  // W(2 - it) = conj W(2 + it) since w is real, so the line integral is
  // (1/pi) Re int_0^T W(2 + it) x^{-2-it} dt.
  auto integrand = [&](double t) {
    const Complex w = evaluator.adaptive(Complex(2.0, t));
    return (w * std::exp(Complex(-2.0 * log_x, -t * log_x))).real();
  };
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  const double line = Rule::integrate(integrand, 0.0, T, 12, 1e-12, &err) / std::numbers::pi;
  return std::abs(line - weight(x));
}

}  // namespace smo
