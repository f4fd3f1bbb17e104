#include "smo/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "smo/errors.hpp"

namespace smo {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..10.
constexpr double kStirlingCoefficients[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

void validate(const GammaRatioInput& in) {
  if (in.l < 1 || in.m < 1 || in.m_prime < 1) throw PreconditionError("gamma_ratio: degrees must be positive");
  const auto expected = static_cast<std::size_t>(in.l * in.m * in.m_prime);
  if (in.b_list.size() != expected) {
    throw PreconditionError("gamma_ratio: b_list has " + std::to_string(in.b_list.size()) +
                            " entries, expected m m' l = " + std::to_string(expected));
  }
  for (const auto& b : in.b_list) {
    const double dn = distance_to_gamma_pole((1.0 - in.s + std::conj(b)) / 2.0);
    const double dd = distance_to_gamma_pole((in.s + b) / 2.0);
    if (dn < kPoleExclusion || dd < kPoleExclusion) {
      throw PreconditionError("gamma_ratio: s within " + to_text(std::min(dn, dd)) +
                              " of a Gamma pole (exclusion radius 1e-8)");
    }
  }
}

}  // namespace

double distance_to_gamma_pole(Complex z) {
  const double nearest = std::min(0.0, std::round(z.real()));
  return std::abs(z - nearest);
}

Complex log_gamma(Complex z) {
  if (distance_to_gamma_pole(z) == 0.0) {
    throw PreconditionError("log_gamma: pole at z = " + to_text(z.real()));
  }
  Complex shift(0.0, 0.0);
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series(0.0, 0.0);
  Complex power = inv;
  for (double c : kStirlingCoefficients) {
    series += c * power;
    power *= inv2;
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift;
}

Complex log_gamma_ratio(const GammaRatioInput& in) {
  validate(in);
  const double degree = static_cast<double>(in.l * in.m * in.m_prime);
  Complex acc = degree * (in.s - 0.5) * std::log(std::numbers::pi);
  for (const auto& b : in.b_list) {
    acc += log_gamma((1.0 - in.s + std::conj(b)) / 2.0) - log_gamma((in.s + b) / 2.0);
  }
  return acc;
}

Complex gamma_ratio(const GammaRatioInput& in) { return std::exp(log_gamma_ratio(in)); }

double distance_to_excluded_set(double t, const std::vector<Complex>& b_list) {
  double d = INFINITY;
  for (const auto& b : b_list) d = std::min(d, std::abs(t + b.imag()) - 1.0);
  return d;
}

double stirling_bound_ratio(const GammaRatioInput& in) {
  const double sigma = in.s.real();
  const double t = in.s.imag();
  if (!(sigma < 0.5)) throw PreconditionError("stirling_bound_ratio: requires Re s < 1/2");
  const double d = distance_to_excluded_set(t, in.b_list);
  if (d <= 0.0) {
    throw PreconditionError("stirling_bound_ratio: t = " + to_text(t) +
                            " inside excluded set S (distance " + to_text(d) + ")");
  }
  const double exponent = 0.5 - sigma;
  const double degree = static_cast<double>(in.l * in.m * in.m_prime);
  double log_bound = degree * exponent * std::log1p(std::abs(t));
  for (const auto& b : in.b_list) log_bound += exponent * std::log1p(std::abs(b.imag()));
  return std::exp(log_gamma_ratio(in).real() - log_bound);
}

}  // namespace smo
