#pragma once

#include <complex>
#include <vector>

namespace smo {

using Complex = std::complex<double>;

/// Principal branch of log Gamma, analytic off (-inf, 0]; on the negative
/// axis the value is the limit from above. Stirling series after shifting
/// Re z >= 12 by the recurrence. Throws PreconditionError at the poles.
Complex log_gamma(Complex z);

/// Distance from z to the nearest pole {0, -1, -2, ...} of Gamma.
double distance_to_gamma_pole(Complex z);

/// Inputs to G(s) = L(1 - s, pi~_inf x pi'_inf) / L(s, pi_inf x pi~'_inf).
struct GammaRatioInput {
  Complex s;
  std::vector<Complex> b_list;  // b_{pi, pi~'}(i), length m m' l
  int l = 1;
  int m = 1;
  int m_prime = 1;
};

inline constexpr double kPoleExclusion = 1e-8;

/// exp of (m m' l)(s - 1/2) log pi + sum_i [logGamma((1 - s + conj b_i)/2) - logGamma((s + b_i)/2)].
/// Rejects inputs within 1e-8 of a Gamma pole in numerator or denominator.
Complex gamma_ratio(const GammaRatioInput& input);
/// log of gamma_ratio; stays finite where G itself under/overflows.
Complex log_gamma_ratio(const GammaRatioInput& input);

/// Distance from t to the excluded set S = U_i {t : |t + Im b_i| <= 1};
/// negative inside S.
double distance_to_excluded_set(double t, const std::vector<Complex>& b_list);

/// |G(s)| / [(1 + |t|)^{m m' l (1/2 - sigma)} prod_i (1 + |Im b_i|)^{1/2 - sigma}].
/// Requires sigma < 1/2 and t outside S.
double stirling_bound_ratio(const GammaRatioInput& input);

}  // namespace smo
