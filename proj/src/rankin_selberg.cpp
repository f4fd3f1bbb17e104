#include "smo/rankin_selberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "smo/errors.hpp"
#include "smo/primes.hpp"

namespace smo {

namespace {

std::vector<Complex> pair_products_of(const SatakeClass& a, const SatakeClass& b) {
  std::vector<Complex> out;
  out.reserve(a.alphas.size() * b.alphas.size());
  for (const auto& x : a.alphas) {
    for (const auto& y : b.alphas) out.push_back(x * std::conj(y));
  }
  return out;
}

using WideComplex = std::complex<long double>;

// sum_i z_i^k for k = 1..max_k, in extended precision.
std::vector<WideComplex> power_sums(const std::vector<Complex>& zs, int max_k) {
  std::vector<WideComplex> sums(static_cast<std::size_t>(max_k) + 1, WideComplex(0.0L, 0.0L));
  for (const auto& z : zs) {
    const WideComplex zw(z.real(), z.imag());
    WideComplex power(1.0L, 0.0L);
    for (int k = 1; k <= max_k; ++k) {
      power *= zw;
      sums[static_cast<std::size_t>(k)] += power;
    }
  }
  return sums;
}

}  // namespace

LocalRSFactor local_coefficients(const SatakeClass& a, const SatakeClass& b, int max_exponent) {
  if (a.p != b.p) {
    throw PreconditionError("local_coefficients: mismatched primes " + std::to_string(a.p) + " and " +
                            std::to_string(b.p));
  }
  if (max_exponent < 0) throw PreconditionError("local_coefficients: M must be >= 0");
  LocalRSFactor f;
  f.p = a.p;
  f.pair_products = pair_products_of(a, b);

  std::vector<Complex> conj_b;
  conj_b.reserve(b.alphas.size());
  for (const auto& y : b.alphas) conj_b.push_back(std::conj(y));
  const auto sa = power_sums(a.alphas, max_exponent);
  const auto sb = power_sums(conj_b, max_exponent);

  std::vector<WideComplex> c(static_cast<std::size_t>(max_exponent) + 1, WideComplex(0.0L, 0.0L));
  c[0] = 1.0L;
  for (int m = 1; m <= max_exponent; ++m) {
    WideComplex acc(0.0L, 0.0L);
    for (int k = 1; k <= m; ++k) {
      acc += sa[static_cast<std::size_t>(k)] * sb[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(m - k)];
    }
    c[static_cast<std::size_t>(m)] = acc / static_cast<long double>(m);
  }
  f.coefficients.reserve(c.size());
  for (const auto& v : c) f.coefficients.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  return f;
}

std::vector<Complex> local_polynomial(const SatakeClass& a, const SatakeClass& b) {
  std::vector<Complex> poly{Complex(1.0, 0.0)};
  for (const auto& gamma : pair_products_of(a, b)) {
    poly.push_back(Complex(0.0, 0.0));
    for (std::size_t i = poly.size() - 1; i > 0; --i) poly[i] -= gamma * poly[i - 1];
  }
  while (poly.size() > 1 && poly.back() == Complex(0.0, 0.0)) poly.pop_back();
  return poly;
}

Complex brumley_coefficient(const SatakeClass& satake) {
  const int m = satake.degree();
  return local_coefficients(satake, satake, m).coefficients.back();
}

double brumley_residual(const SatakeClass& satake, int m) {
  if (m != satake.degree()) {
    throw PreconditionError("brumley_residual: exponent " + std::to_string(m) +
                            " differs from class degree " + std::to_string(satake.degree()));
  }
  if (satake.has_zero()) throw PreconditionError("brumley_residual: lemma applies to unramified places");
  const Complex c = brumley_coefficient(satake);
  if (std::abs(c.imag()) > 1e-10) {
    throw NumericError("brumley_residual: imaginary part " + to_text(c.imag()) + " exceeds 1e-10",
                       c.real() - 1.0);
  }
  return c.real() - 1.0;
}

SatakeClass random_unitary_class(int m, std::uint32_t p, std::mt19937_64& rng) {
  if (m < 1) throw PreconditionError("random_unitary_class: m must be >= 1");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  SatakeClass c{p, {}};
  double total = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    const double th = angle(rng);
    total += th;
    c.alphas.push_back(std::polar(1.0, th));
  }
  c.alphas.push_back(std::polar(1.0, -total));
  return c;
}

BrumleySweep brumley_sweep(int m, std::size_t samples, std::uint64_t seed) {
  if (m < 1) throw PreconditionError("brumley_sweep: m must be >= 1");
  if (samples == 0) throw PreconditionError("brumley_sweep: samples must be >= 1");
  std::mt19937_64 rng(seed);
  BrumleySweep out{m, samples, std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < samples; ++i) {
    const Complex c = brumley_coefficient(random_unitary_class(m, 2, rng));
    out.min_residual = std::min(out.min_residual, c.real() - 1.0);
    out.max_imag = std::max(out.max_imag, std::abs(c.imag()));
  }
  return out;
}

bool RSCoefficientSeries::touches_ramified(std::size_t n) const {
  return std::any_of(ramified_primes.begin(), ramified_primes.end(),
                     [n](std::uint32_t p) { return n % p == 0; });
}

RSCoefficientSeries rs_series(const Representation& a, const Representation& b, std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("rs_series: n_max must be >= 1");
  if (n_max > std::numeric_limits<std::uint32_t>::max() / 2) throw PreconditionError("rs_series: n_max too large");
  const auto n = static_cast<std::uint32_t>(n_max);
  for (const Representation* rep : {&a, &b}) {
    if (!rep->is_gl1() && rep->local_bound() < n) {
      throw PreconditionError("rs_series: " + rep->label() + " has eigenvalues only up to " +
                              std::to_string(rep->local_bound()) + " but n_max = " + std::to_string(n_max));
    }
  }

  RSCoefficientSeries s;
  s.n_max = n_max;
  s.degree_a = a.degree();
  s.degree_b = b.degree();
  s.label_a = a.label();
  s.label_b = b.label();
  for (const Representation* rep : {&a, &b}) {
    for (std::uint32_t p : rep->ramified_primes()) s.ramified_primes.push_back(p);
  }
  std::sort(s.ramified_primes.begin(), s.ramified_primes.end());
  s.ramified_primes.erase(std::unique(s.ramified_primes.begin(), s.ramified_primes.end()),
                          s.ramified_primes.end());

  s.a.assign(n_max + 1, Complex(0.0, 0.0));
  s.a[1] = 1.0;

  const bool characters = a.is_gl1() && b.is_gl1();
  std::optional<DirichletCharacter> product;
  if (characters) product = (a.character() * b.character().conj()).primitive();

  // Prime powers first, then everything else from its largest spf-power split.
  const auto spf = smallest_prime_factors(n);
  for (std::uint32_t p = 2; p <= n; ++p) {
    if (spf[p] != p) continue;
    int max_e = 0;
    for (std::uint64_t q = p; q <= n; q *= p) ++max_e;
    LocalRSFactor f;
    if (characters) {
      const SatakeClass ca{p, {(*product)(static_cast<std::uint64_t>(p))}};
      f = local_coefficients(ca, SatakeClass{p, {Complex(1.0, 0.0)}}, max_e);
    } else {
      f = local_coefficients(satake_at(a, p), satake_at(b, p), max_e);
    }
    std::uint64_t q = p;
    for (int e = 1; e <= max_e; ++e, q *= p) s.a[q] = f.coefficients[static_cast<std::size_t>(e)];
  }
  std::vector<std::uint32_t> spf_power(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t m = 2; m <= n; ++m) {
    const std::uint32_t p = spf[m];
    const std::uint32_t rest = m / p;
    spf_power[m] = (rest > 1 && spf[rest] == p) ? spf_power[rest] * p : p;
    if (spf_power[m] != m) s.a[m] = s.a[m / spf_power[m]] * s.a[spf_power[m]];
  }
  return s;
}

PairConductor pair_conductor(const Representation& a, const Representation& b) {
  PairConductor pc;
  if (a.is_gl1() && b.is_gl1()) {
    const DirichletCharacter product = (a.character() * b.character().conj()).primitive();
    pc.arithmetic = product.modulus();
    pc.b_pair = {Complex(product.is_even() ? 0.0 : 1.0, 0.0)};
    pc.root_number = product.root_number();
  } else if (!a.is_gl1() && !b.is_gl1()) {
    const double k = a.form().weight();
    const double kp = b.form().weight();
    // Gamma_C(s + (k+k')/2 - 1) Gamma_C(s + |k-k'|/2), each split as Gamma_R Gamma_R.
    const double hi = 0.5 * (k + kp) - 1.0;
    const double lo = 0.5 * std::abs(k - kp);
    pc.arithmetic = 1;
    pc.b_pair = {Complex(hi, 0.0), Complex(hi + 1.0, 0.0), Complex(lo, 0.0), Complex(lo + 1.0, 0.0)};
  } else {
    throw PreconditionError("pair_conductor: unsupported pair kinds (" + a.label() + ", " + b.label() + ")");
  }
  pc.analytic = static_cast<double>(pc.arithmetic);
  for (const auto& v : pc.b_pair) pc.analytic *= 1.0 + std::abs(v);

  const double ca = analytic_conductor(a).analytic;
  const double cb = analytic_conductor(b).analytic;
  const double m = a.degree();
  const double mp = b.degree();
  pc.kappa_lower = std::pow(ca, -mp) * std::pow(cb, -m) / pc.analytic;
  pc.kappa_upper = pc.analytic / (std::pow(ca, mp) * std::pow(cb, m));
  return pc;
}

}  // namespace smo
