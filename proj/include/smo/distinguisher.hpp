#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smo/catalog.hpp"
#include "smo/rankin_selberg.hpp"

namespace smo {

/// S(x) = sum_{n <= 3x} a(n) w(n/x), summed in fixed blocks with Neumaier
/// compensation and reduced in block order, so the result does not depend
/// on the thread count.
struct SmoothedSum {
  double x = 0.0;
  Complex value;
  std::size_t terms_used = 0;  // #{n <= 3x : a(n) != 0}
  double error_bound = 0.0;
};

SmoothedSum smoothed_sum(const RSCoefficientSeries& series, double x, unsigned threads = 1);
SmoothedSum smoothed_sum(const Representation& a, const Representation& b, double x);

/// Largest n with w(n/x) possibly nonzero.
std::size_t required_terms(double x);

struct MainTermReport {
  double x = 0.0;
  double q = 0.0;
  int m = 1;
  double regime_bound = 0.0;  // (log Q)^{3m}
  bool in_regime = false;
  double sum = 0.0;           // S(x; pi, pi~)
  double c_emp = 0.0;
  double main_term = 0.0;     // (c_emp / 2e^2) x^{1/m} / log x
  double margin = 0.0;        // sum - main_term
  std::size_t window = 0;     // primes in [(x/2)^{1/m}, x^{1/m}]
  std::size_t ramified_in_window = 0;
  double log_q_allowance = 0.0;  // the log Q bound on ramified primes
  double chain_bound = 0.0;      // e^{-2} (window - ramified_in_window)
};

/// Evaluates the main-term inequality on an existing self-pair series without
/// enforcing the x >= (log Q)^{3m} regime (the report records whether it holds).
MainTermReport evaluate_main_term(const RSCoefficientSeries& self_series, const Representation& pi, double x,
                                  double q, double c_emp);

/// Regime-checked main-term margin. When c_emp is absent it is measured by
/// empirical_c over a log-spaced grid ending at x.
MainTermReport main_term_check(const Representation& pi, double x, double q,
                               std::optional<double> c_emp = std::nullopt);

inline constexpr double kPrecisionFloor = 1e-12;

struct DecayFit {
  double slope = 0.0;
  std::vector<double> x;       // points used in the fit
  std::vector<double> abs_sum;
  std::optional<double> floor_x;  // first grid point with |S| below the floor
  double floor = kPrecisionFloor;
};

/// Least-squares slope of log|S(x; a, b~)| vs log x over the grid prefix that
/// stays above the precision floor. Rejects self-pairs.
DecayFit decay_fit(const Representation& a, const Representation& b, std::span<const double> x_grid);
DecayFit decay_fit(const RSCoefficientSeries& series, std::span<const double> x_grid);

enum class Verdict { Distinct, IndistinguishableUpTo };

struct DistinguishReport {
  Verdict verdict = Verdict::IndistinguishableUpTo;
  double x = 0.0;
  std::optional<std::uint32_t> evidence_prime;
  bool evidence_ramified = false;
  double sum_self = 0.0;
  Complex sum_cross;
  double margin = 0.0;        // sum_self - Re sum_cross
  double error_bound = 0.0;   // combined summation bound
  bool sums_agree = false;
  double q = 0.0;             // max analytic conductor
  int n = 1;                  // max degree
  double h = 10.0;
  double threshold_x = 0.0;   // Q^{4N + 2N/H}
};

/// a_pi(p^r) for r = 1..max_exponent (coefficients of L(s, pi_p)).
std::vector<Complex> local_coefficient_array(const Representation& rep, std::uint32_t p, int max_exponent);

/// First prime p <= limit where the local arrays differ by more than 1e-9.
/// Primes ramified for either representation are skipped unless
/// include_ramified is set.
std::optional<std::uint32_t> first_disagreement(const Representation& a, const Representation& b,
                                                std::uint32_t limit, bool include_ramified = false);

DistinguishReport distinguish(const Representation& a, const Representation& b, double x, double h = 10.0);

enum class QRule {
  MaxAnalytic,   // Q = max(C(pi), C(pi'))
  NextInteger,   // smallest integer strictly above both conductors
};

struct ThresholdRow {
  std::string label_a;
  std::string label_b;
  std::optional<std::uint32_t> first_prime;
  double conductor_a = 0.0;
  double conductor_b = 0.0;
  double q = 0.0;
  int n = 1;
  double threshold = 0.0;  // Q^{4N + 2N/H}
  double ratio = 0.0;      // first_prime / threshold
};

struct RepresentationPair {
  Representation a;
  Representation b;
};

/// One row per non-identical pair; identical pairs are skipped.
std::vector<ThresholdRow> threshold_experiment(std::span<const RepresentationPair> pairs, double h,
                                               QRule rule = QRule::MaxAnalytic,
                                               std::uint32_t search_limit = 100'000);

double threshold_x(double q, int n, double h);

}  // namespace smo
