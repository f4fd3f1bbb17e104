#include "smo/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "smo/errors.hpp"
#include "smo/primes.hpp"
#include "smo/smoothing.hpp"

namespace smo {

namespace {

constexpr std::size_t kBlockSize = 4096;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double result() const { return sum + comp; }
};

struct BlockResult {
  Neumaier re, im;
  double abs_sum = 0.0;
  std::size_t nonzero = 0;
};

BlockResult sum_block(const RSCoefficientSeries& series, double x, std::size_t lo, std::size_t hi) {
  BlockResult r;
  for (std::size_t n = lo; n <= hi; ++n) {
    const Complex a = series.a[n];
    if (a == Complex(0.0, 0.0)) continue;
    ++r.nonzero;
    const double w = weight(static_cast<double>(n) / x);
    r.re.add(a.real() * w);
    r.im.add(a.imag() * w);
    r.abs_sum += std::abs(a) * w;
  }
  return r;
}

bool same_rep(const Representation& a, const Representation& b) { return a.spec().same_representation(b.spec()); }

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g;
  if (points < 2 || hi <= lo) return {hi};
  for (std::size_t i = 0; i < points; ++i) {
    g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) /
                                            static_cast<double>(points - 1)));
  }
  return g;
}

std::uint32_t local_limit(const Representation& a, const Representation& b, double limit) {
  double l = std::min<double>(limit, std::numeric_limits<std::uint32_t>::max() - 1.0);
  l = std::min<double>(l, a.local_bound());
  l = std::min<double>(l, b.local_bound());
  return static_cast<std::uint32_t>(std::max(0.0, std::floor(l)));
}

}  // namespace

std::size_t required_terms(double x) {
  const double top = 3.0 * x;
  if (!(top > 1.0)) return 0;
  return static_cast<std::size_t>(std::ceil(top)) - 1;
}

SmoothedSum smoothed_sum(const RSCoefficientSeries& series, double x, unsigned threads) {
  if (!(x > 0.0)) throw PreconditionError("smoothed_sum: x must be positive");
  const std::size_t n_hi = required_terms(x);
  if (n_hi > series.n_max) {
    throw PreconditionError("smoothed_sum: series has n_max = " + std::to_string(series.n_max) +
                            ", need n_max >= " + std::to_string(n_hi));
  }
  SmoothedSum out;
  out.x = x;
  if (n_hi == 0) return out;

  const std::size_t blocks = (n_hi + kBlockSize - 1) / kBlockSize;
  std::vector<BlockResult> partial(blocks);
  auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t b = first; b < blocks; b += stride) {
      const std::size_t lo = 1 + b * kBlockSize;
      partial[b] = sum_block(series, x, lo, std::min(n_hi, lo + kBlockSize - 1));
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run, t, workers);
    for (auto& th : pool) th.join();
  }

  Neumaier re, im;
  double abs_sum = 0.0;
  for (const auto& p : partial) {
    re.add(p.re.result());
    im.add(p.im.result());
    abs_sum += p.abs_sum;
    out.terms_used += p.nonzero;
  }
  out.value = Complex(re.result(), im.result());
  // Per-term relative error of a(n) w(n/x): a few ulps for w plus one
  // multiplication per prime-power factor of n.
  const double per_term = (16.0 + 4.0 * std::log2(static_cast<double>(n_hi) + 1.0)) * kEps;
  out.error_bound = per_term * abs_sum + 2.0 * kEps * std::abs(out.value);
  return out;
}

SmoothedSum smoothed_sum(const Representation& a, const Representation& b, double x) {
  if (!(x > 0.0)) throw PreconditionError("smoothed_sum: x must be positive");
  const std::size_t n = std::max<std::size_t>(1, required_terms(x));
  return smoothed_sum(rs_series(a, b, n), x);
}

MainTermReport evaluate_main_term(const RSCoefficientSeries& self_series, const Representation& pi, double x,
                                  double q, double c_emp) {
  if (!(x >= 2.0)) throw PreconditionError("main_term: x must be >= 2");
  MainTermReport r;
  r.x = x;
  r.q = q;
  r.m = pi.degree();
  r.regime_bound = q > 1.0 ? std::pow(std::log(q), 3.0 * r.m) : 0.0;
  r.in_regime = x >= r.regime_bound;
  r.sum = smoothed_sum(self_series, x).value.real();
  r.c_emp = c_emp;
  r.main_term = c_emp / (2.0 * std::exp(2.0)) * std::pow(x, 1.0 / r.m) / std::log(x);
  r.margin = r.sum - r.main_term;

  const std::uint64_t hi = static_cast<std::uint64_t>(std::floor(std::pow(x, 1.0 / r.m) * (1 + 1e-12)));
  const PrimeTable table = sieve(std::max<std::uint64_t>(hi, 2));
  r.window = window_count(table, x, r.m);
  const double lo = std::pow(x / 2.0, 1.0 / r.m);
  for (std::uint32_t p : pi.ramified_primes()) {
    if (p >= lo * (1 - 1e-12) && p <= hi) ++r.ramified_in_window;
  }
  r.log_q_allowance = q > 1.0 ? std::log(q) : 0.0;
  r.chain_bound = std::exp(-2.0) * static_cast<double>(r.window - r.ramified_in_window);
  return r;
}

MainTermReport main_term_check(const Representation& pi, double x, double q, std::optional<double> c_emp) {
  if (!(q >= 1.0)) throw PreconditionError("main_term_check: Q must be >= 1");
  const int m = pi.degree();
  const double regime = q > 1.0 ? std::pow(std::log(q), 3.0 * m) : 0.0;
  if (!(x >= regime) || !(x >= 2.0)) {
    throw PreconditionError("main_term_check: x = " + to_text(x) + " below regime (log Q)^{3m} = " +
                            to_text(regime));
  }
  if (!c_emp) {
    const auto grid = log_grid(std::max({2.0, regime, x / 1000.0}), x, 16);
    c_emp = empirical_c(grid, m);
  }
  const auto series = rs_series(pi, pi, std::max<std::size_t>(1, required_terms(x)));
  return evaluate_main_term(series, pi, x, q, *c_emp);
}

DecayFit decay_fit(const RSCoefficientSeries& series, std::span<const double> x_grid) {
  if (x_grid.size() < 2) throw PreconditionError("decay_fit: need at least two x values");
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > x_grid[i - 1])) throw PreconditionError("decay_fit: x_grid must be increasing");
  }
  DecayFit fit;
  std::vector<double> lx, ls;
  for (double x : x_grid) {
    const double v = std::abs(smoothed_sum(series, x).value);
    if (v < fit.floor) {
      fit.floor_x = x;
      break;
    }
    fit.x.push_back(x);
    fit.abs_sum.push_back(v);
    lx.push_back(std::log(x));
    ls.push_back(std::log(v));
  }
  if (lx.size() < 2) {
    throw NumericError("decay_fit: fewer than two points above the precision floor",
                       fit.abs_sum.empty() ? 0.0 : fit.abs_sum.front());
  }
  fit.slope = least_squares_slope(lx, ls);
  return fit;
}

DecayFit decay_fit(const Representation& a, const Representation& b, std::span<const double> x_grid) {
  if (same_rep(a, b)) throw PreconditionError("decay_fit: self-pair has no decay");
  if (x_grid.empty()) throw PreconditionError("decay_fit: empty grid");
  const double x_max = *std::max_element(x_grid.begin(), x_grid.end());
  return decay_fit(rs_series(a, b, std::max<std::size_t>(1, required_terms(x_max))), x_grid);
}

std::vector<Complex> local_coefficient_array(const Representation& rep, std::uint32_t p, int max_exponent) {
  const auto f = local_coefficients(satake_at(rep, p), SatakeClass{p, {Complex(1.0, 0.0)}}, max_exponent);
  return {f.coefficients.begin() + 1, f.coefficients.end()};
}

std::optional<std::uint32_t> first_disagreement(const Representation& a, const Representation& b,
                                                std::uint32_t limit, bool include_ramified) {
  if (limit < 2) return std::nullopt;
  const int r = std::max(a.degree(), b.degree());
  auto ram_a = a.ramified_primes();
  auto ram_b = b.ramified_primes();
  const PrimeTable primes = sieve(limit);
  for (std::uint32_t p : primes.primes()) {
    const bool ramified = std::find(ram_a.begin(), ram_a.end(), p) != ram_a.end() ||
                          std::find(ram_b.begin(), ram_b.end(), p) != ram_b.end();
    if (ramified && !include_ramified) continue;
    const auto ca = local_coefficient_array(a, p, r);
    const auto cb = local_coefficient_array(b, p, r);
    for (int i = 0; i < r; ++i) {
      if (std::abs(ca[static_cast<std::size_t>(i)] - cb[static_cast<std::size_t>(i)]) > 1e-9) return p;
    }
  }
  return std::nullopt;
}

double threshold_x(double q, int n, double h) {
  if (!(h > 0.0)) throw PreconditionError("threshold: H must be positive");
  return std::pow(q, 4.0 * n + 2.0 * n / h);
}

DistinguishReport distinguish(const Representation& a, const Representation& b, double x, double h) {
  if (!(x > 0.0)) throw PreconditionError("distinguish: x must be positive");
  DistinguishReport r;
  r.x = x;
  r.h = h;
  r.n = std::max(a.degree(), b.degree());
  r.q = std::max(analytic_conductor(a).analytic, analytic_conductor(b).analytic);
  r.threshold_x = threshold_x(r.q, r.n, h);

  const std::size_t n_max = std::max<std::size_t>(1, required_terms(x));
  const SmoothedSum self = smoothed_sum(rs_series(a, a, n_max), x);
  const SmoothedSum cross = smoothed_sum(rs_series(a, b, n_max), x);
  r.sum_self = self.value.real();
  r.sum_cross = cross.value;
  r.margin = r.sum_self - r.sum_cross.real();
  r.error_bound = self.error_bound + cross.error_bound;
  r.sums_agree = std::abs(self.value - cross.value) <= r.error_bound;

  const std::uint32_t limit = local_limit(a, b, 3.0 * x);
  r.evidence_prime = first_disagreement(a, b, limit, false);
  if (!r.evidence_prime && !r.sums_agree) {
    r.evidence_prime = first_disagreement(a, b, limit, true);
    r.evidence_ramified = r.evidence_prime.has_value();
  }
  r.verdict = r.evidence_prime ? Verdict::Distinct : Verdict::IndistinguishableUpTo;
  return r;
}

std::vector<ThresholdRow> threshold_experiment(std::span<const RepresentationPair> pairs, double h, QRule rule,
                                               std::uint32_t search_limit) {
  std::vector<ThresholdRow> rows;
  for (const auto& [a, b] : pairs) {
    if (same_rep(a, b)) continue;
    ThresholdRow row;
    row.label_a = a.label();
    row.label_b = b.label();
    row.conductor_a = analytic_conductor(a).analytic;
    row.conductor_b = analytic_conductor(b).analytic;
    const double cmax = std::max(row.conductor_a, row.conductor_b);
    row.q = rule == QRule::MaxAnalytic ? cmax : std::floor(cmax) + 1.0;
    row.n = std::max(a.degree(), b.degree());
    row.threshold = threshold_x(row.q, row.n, h);
    row.first_prime = first_disagreement(a, b, local_limit(a, b, search_limit));
    row.ratio = row.first_prime ? static_cast<double>(*row.first_prime) / row.threshold
                                : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace smo
