#include "smo/catalog.hpp"

#include <cmath>
#include <limits>

#include "smo/errors.hpp"
#include "smo/primes.hpp"

namespace smo {

bool SatakeClass::has_zero() const {
  for (const auto& a : alphas) {
    if (a == Complex(0.0, 0.0)) return true;
  }
  return false;
}

HeckeEigenform::HeckeEigenform(int weight, std::uint32_t prime_bound)
    : weight_(weight), prime_bound_(prime_bound) {
  if (!is_supported_weight(weight)) {
    throw PreconditionError("eigenform: unsupported weight " + std::to_string(weight) +
                            " (need dim S_k = 1: one of 12, 16, 18, 20, 22, 26)");
  }
  if (prime_bound < 2) throw PreconditionError("eigenform: prime bound must be >= 2");
  const CuspFormExpansion expansion(weight, prime_bound);

  const std::size_t exact_n = std::min<std::size_t>(prime_bound, kExactCoefficientBound);
  exact_.reserve(exact_n);
  for (std::size_t n = 1; n <= exact_n; ++n) exact_.push_back(expansion.coefficient(n));

  lambda_.assign(static_cast<std::size_t>(prime_bound) + 1, std::numeric_limits<double>::quiet_NaN());
  const double half_weight = 0.5 * (weight - 1);
  const PrimeTable primes = sieve(prime_bound);
  for (std::uint32_t p : primes.primes()) {
    const BigInt a_p = p <= exact_n ? exact_[p - 1] : expansion.coefficient(p);
    lambda_[p] = a_p.convert_to<double>() / std::pow(static_cast<double>(p), half_weight);
  }
}

double HeckeEigenform::lambda(std::uint32_t p) const {
  if (p > prime_bound_) {
    throw PreconditionError("eigenform: p=" + std::to_string(p) + " beyond prime bound " +
                            std::to_string(prime_bound_));
  }
  const double v = lambda_[p];
  if (std::isnan(v)) throw PreconditionError("eigenform: " + std::to_string(p) + " is not prime");
  return v;
}

const BigInt& HeckeEigenform::coefficient(std::size_t n) const {
  if (n < 1 || n > exact_.size()) {
    throw PreconditionError("eigenform: exact coefficient " + std::to_string(n) +
                            " not retained (bound " + std::to_string(exact_.size()) + ")");
  }
  return exact_[n - 1];
}

Representation::Representation(RepresentationSpec spec, std::shared_ptr<const DirichletCharacter> character)
    : spec_(std::move(spec)), character_(std::move(character)) {}

Representation::Representation(RepresentationSpec spec, std::shared_ptr<const HeckeEigenform> form)
    : spec_(std::move(spec)), form_(std::move(form)) {}

const DirichletCharacter& Representation::character() const {
  if (!character_) throw PreconditionError(label() + " is not a GL(1) character");
  return *character_;
}

const HeckeEigenform& Representation::form() const {
  if (!form_) throw PreconditionError(label() + " is not a GL(2) eigenform");
  return *form_;
}

std::uint32_t Representation::local_bound() const noexcept {
  return form_ ? form_->prime_bound() : std::numeric_limits<std::uint32_t>::max();
}

std::vector<std::uint32_t> Representation::ramified_primes() const {
  if (character_) return prime_divisors(character_->modulus());
  return {};
}

std::string default_label(const RepresentationSpec& spec) {
  if (const auto* chi = std::get_if<Gl1Character>(&spec.kind)) {
    return "chi" + std::to_string(chi->modulus) + "." + std::to_string(chi->index);
  }
  return "f" + std::to_string(std::get<Gl2Eigenform>(spec.kind).weight);
}

Representation dirichlet_character(std::uint32_t modulus, std::uint64_t index, std::string label) {
  auto chi = std::make_shared<const DirichletCharacter>(DirichletCharacter::from_index(modulus, index));
  if (!chi->is_primitive()) {
    throw PreconditionError("dirichlet_character: index " + std::to_string(index) + " mod " +
                            std::to_string(modulus) + " is imprimitive (conductor " +
                            std::to_string(chi->conductor()) + ")");
  }
  RepresentationSpec spec{Gl1Character{modulus, index}, std::move(label)};
  if (spec.label.empty()) spec.label = default_label(spec);
  return Representation(std::move(spec), std::move(chi));
}

Representation eigenform(int weight, std::uint32_t prime_bound, std::string label) {
  auto form = std::make_shared<const HeckeEigenform>(weight, prime_bound);
  RepresentationSpec spec{Gl2Eigenform{weight}, std::move(label)};
  if (spec.label.empty()) spec.label = default_label(spec);
  return Representation(std::move(spec), std::move(form));
}

Representation make_representation(const RepresentationSpec& spec, std::uint32_t prime_bound) {
  if (const auto* chi = std::get_if<Gl1Character>(&spec.kind)) {
    return dirichlet_character(chi->modulus, chi->index, spec.label);
  }
  return eigenform(std::get<Gl2Eigenform>(spec.kind).weight, prime_bound, spec.label);
}

SatakeClass satake_from_eigenvalue(std::uint32_t p, double lambda) {
  const double half = 0.5 * lambda;
  if (std::abs(half) <= 1.0) {
    const double im = std::sqrt(std::max(0.0, 1.0 - half * half));
    return {p, {Complex(half, im), Complex(half, -im)}};
  }
  const double root = std::sqrt(half * half - 1.0);
  return {p, {Complex(half + root, 0.0), Complex(half - root, 0.0)}};
}

SatakeClass satake_at(const Representation& rep, std::uint32_t p) {
  if (!is_prime(p)) throw PreconditionError("satake_at: " + std::to_string(p) + " is not prime");
  if (rep.is_gl1()) return {p, {rep.character()(static_cast<std::uint64_t>(p))}};
  return satake_from_eigenvalue(p, rep.form().lambda(p));
}

double lrs_check(const SatakeClass& satake) {
  const int m = satake.degree();
  const double bound = 0.5 - 1.0 / (m * m + 1.0);
  const double log_p = std::log(static_cast<double>(satake.p));
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& a : satake.alphas) {
    const double r = std::abs(a);
    if (r == 0.0) continue;
    worst = std::max(worst, std::abs(std::log(r) / log_p) - bound);
  }
  return std::isinf(worst) ? 0.0 : worst;
}

ArchimedeanData archimedean_data(const Representation& rep) {
  if (rep.is_gl1()) return {{Complex(rep.character().is_even() ? 0.0 : 1.0, 0.0)}};
  const double k = rep.form().weight();
  // Gamma_C(s + (k-1)/2) = Gamma_R(s + (k-1)/2) Gamma_R(s + (k+1)/2).
  return {{Complex(0.5 * (k - 1), 0.0), Complex(0.5 * (k + 1), 0.0)}};
}

Conductor analytic_conductor(const Representation& rep) {
  Conductor c;
  c.arithmetic = rep.is_gl1() ? rep.character().modulus() : 1;
  c.analytic = static_cast<double>(c.arithmetic);
  for (const auto& b : archimedean_data(rep).b_params) c.analytic *= 1.0 + std::abs(b);
  return c;
}

}  // namespace smo
