#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smo/catalog.hpp"

namespace smo {

/// Local factor prod_{i,j} (1 - alpha_i conj(beta_j) X)^{-1} at one prime,
/// expanded as sum_r c_r X^r, so that a(p^r) = c_r.
struct LocalRSFactor {
  std::uint32_t p = 2;
  std::vector<Complex> pair_products;  // alpha_i * conj(beta_j), length m * m'
  std::vector<Complex> coefficients;   // c_0 .. c_M
};

/// Power-series coefficients c_0..c_M via the Newton-identity recurrence
/// M c_M = sum_{k=1}^{M} P_k c_{M-k}, P_k = (sum_i alpha_i^k)(sum_j conj(beta_j)^k).
LocalRSFactor local_coefficients(const SatakeClass& a, const SatakeClass& b, int max_exponent);

/// Coefficients of the polynomial prod_{i,j} (1 - alpha_i conj(beta_j) X),
/// lowest degree first, trailing zeros trimmed.
std::vector<Complex> local_polynomial(const SatakeClass& a, const SatakeClass& b);

/// c_m of the self-pair factor at exponent m (= degree). Brumley's lemma says
/// its real part is >= 1 and it is real.
Complex brumley_coefficient(const SatakeClass& satake);

/// real(c_m) - 1 for the self-pair of an unramified class of degree m.
/// Throws NumericError when |imag(c_m)| exceeds 1e-10.
double brumley_residual(const SatakeClass& satake, int m);

/// Uniformly random class on the unit circle with product one.
SatakeClass random_unitary_class(int m, std::uint32_t p, std::mt19937_64& rng);

struct BrumleySweep {
  int m = 1;
  std::size_t samples = 0;
  double min_residual = 0.0;
  double max_imag = 0.0;
};

BrumleySweep brumley_sweep(int m, std::size_t samples, std::uint64_t seed);

/// Dirichlet coefficients a(1..n_max) of L(s, pi_f x pi'~_f).
struct RSCoefficientSeries {
  std::size_t n_max = 0;
  std::vector<Complex> a;  // a[0] unused
  std::vector<std::uint32_t> ramified_primes;
  int degree_a = 1;
  int degree_b = 1;
  std::string label_a;
  std::string label_b;

  const Complex& operator[](std::size_t n) const { return a[n]; }
  /// True when n is divisible by a prime ramified in either factor.
  bool touches_ramified(std::size_t n) const;
};

/// Builds the series multiplicatively over a smallest-prime-factor sieve.
/// For two characters the local factors come from the primitive character
/// inducing chi * conj(psi); otherwise ramified Satake entries are zero.
RSCoefficientSeries rs_series(const Representation& a, const Representation& b, std::size_t n_max);

struct PairConductor {
  std::uint64_t arithmetic = 1;
  double analytic = 1.0;
  std::vector<Complex> b_pair;
  /// Root number; only known for two characters.
  std::optional<Complex> root_number;
  /// Measured constants in C(pi)^{-m'} C(pi')^{-m} <= kappa_lower C(pi, pi')
  /// and C(pi, pi') <= kappa_upper C(pi)^{m'} C(pi')^{m}.
  double kappa_lower = 0.0;
  double kappa_upper = 0.0;
};

/// Supports GL1 x GL1 and level-one GL2 x GL2 pairs.
PairConductor pair_conductor(const Representation& a, const Representation& b);

}  // namespace smo
