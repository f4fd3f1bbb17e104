#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "smo/characters.hpp"
#include "smo/qexpansion.hpp"

namespace smo {

using Complex = std::complex<double>;

struct Gl1Character {
  std::uint32_t modulus = 1;
  std::uint64_t index = 0;
  bool operator==(const Gl1Character&) const = default;
};

struct Gl2Eigenform {
  int weight = 12;
  bool operator==(const Gl2Eigenform&) const = default;
};

/// A desk-scale cuspidal representation: a primitive Dirichlet character
/// (degree 1) or the level-one Hecke eigenform of a weight with dim S_k = 1
/// (degree 2). Equality ignores the label.
struct RepresentationSpec {
  std::variant<Gl1Character, Gl2Eigenform> kind;
  std::string label;

  int degree() const noexcept { return std::holds_alternative<Gl1Character>(kind) ? 1 : 2; }
  bool same_representation(const RepresentationSpec& other) const { return kind == other.kind; }
};

/// Satake parameters {alpha_i} at one prime. Ramified entries are zero.
struct SatakeClass {
  std::uint32_t p = 2;
  std::vector<Complex> alphas;

  int degree() const noexcept { return static_cast<int>(alphas.size()); }
  bool has_zero() const;
};

/// Archimedean parameters b(i) in L(s, pi_inf) = pi^{-ms/2} prod Gamma((s + b(i))/2).
struct ArchimedeanData {
  std::vector<Complex> b_params;
};

struct Conductor {
  std::uint64_t arithmetic = 1;
  double analytic = 1.0;
};

/// Normalized Hecke eigenvalues lambda_p = a_p / p^{(k-1)/2} for p up to a
/// bound, plus exact q-expansion coefficients for small n.
class HeckeEigenform {
 public:
  HeckeEigenform(int weight, std::uint32_t prime_bound);

  int weight() const noexcept { return weight_; }
  std::uint32_t prime_bound() const noexcept { return prime_bound_; }
  std::size_t exact_bound() const noexcept { return exact_.size(); }

  double lambda(std::uint32_t p) const;
  /// Exact a_n for 1 <= n <= exact_bound().
  const BigInt& coefficient(std::size_t n) const;

 private:
  int weight_;
  std::uint32_t prime_bound_;
  std::vector<double> lambda_;  // indexed by p; NaN off the primes
  std::vector<BigInt> exact_;   // exact_[n-1] = a_n
};

/// Exact coefficients are retained up to this n.
inline constexpr std::size_t kExactCoefficientBound = 10'000;
inline constexpr std::uint32_t kDefaultPrimeBound = 10'000;

/// Immutable handle pairing a spec with its computed local data. Cheap to copy.
class Representation {
 public:
  Representation(RepresentationSpec spec, std::shared_ptr<const DirichletCharacter> character);
  Representation(RepresentationSpec spec, std::shared_ptr<const HeckeEigenform> form);

  const RepresentationSpec& spec() const noexcept { return spec_; }
  const std::string& label() const noexcept { return spec_.label; }
  int degree() const noexcept { return spec_.degree(); }
  bool is_gl1() const noexcept { return character_ != nullptr; }

  const DirichletCharacter& character() const;
  const HeckeEigenform& form() const;

  /// Largest prime at which satake_at is available.
  std::uint32_t local_bound() const noexcept;
  /// Primes where the local component is ramified.
  std::vector<std::uint32_t> ramified_primes() const;

 private:
  RepresentationSpec spec_;
  std::shared_ptr<const DirichletCharacter> character_;
  std::shared_ptr<const HeckeEigenform> form_;
};

/// Primitive Dirichlet character; rejects imprimitive or out-of-range indices.
Representation dirichlet_character(std::uint32_t modulus, std::uint64_t index, std::string label = {});

/// Level-one eigenform of the given weight with eigenvalues up to prime_bound.
Representation eigenform(int weight, std::uint32_t prime_bound = kDefaultPrimeBound,
                         std::string label = {});

Representation make_representation(const RepresentationSpec& spec,
                                   std::uint32_t prime_bound = kDefaultPrimeBound);

SatakeClass satake_at(const Representation& rep, std::uint32_t p);

/// Roots of X^2 - lambda X + 1; conjugate pair when |lambda| <= 2.
SatakeClass satake_from_eigenvalue(std::uint32_t p, double lambda);

/// max over nonzero alpha of |log_p |alpha|| - (1/2 - 1/(m^2 + 1)); <= 0 means
/// the Luo-Rudnick-Sarnak bound holds. Zero for an all-zero class.
double lrs_check(const SatakeClass& satake);

ArchimedeanData archimedean_data(const Representation& rep);

/// q_pi and C(pi) = q_pi prod (1 + |b(i)|).
Conductor analytic_conductor(const Representation& rep);

std::string default_label(const RepresentationSpec& spec);

}  // namespace smo
