#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace smo {

/// A Dirichlet character stored as an exact exponent table: for gcd(n, q) = 1,
/// chi(n) = exp(2 pi i * exponent(n) / denominator()).
///
/// Index convention: factor q = prod p^e with primes ascending. Each odd p^e
/// contributes one cyclic component generated by the smallest primitive root
/// mod p^e. 2^2 contributes one component generated by -1; 2^e with e >= 3
/// contributes two, generated by -1 (order 2) then 5 (order 2^{e-2}). Writing
/// component j of order o_j, the character with digits (a_0, a_1, ...) sends
/// g_j to exp(2 pi i a_j / o_j), and index = a_0 + o_0 (a_1 + o_1 (a_2 + ...)).
/// Index 0 is the principal character.
class DirichletCharacter {
 public:
  /// Throws PreconditionError for modulus 0 or index >= phi(modulus).
  static DirichletCharacter from_index(std::uint32_t modulus, std::uint64_t index);

  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t denominator() const noexcept { return denominator_; }
  /// Present when built from an index.
  std::optional<std::uint64_t> index() const noexcept { return index_; }

  /// -1 when gcd(n, modulus) > 1.
  std::int32_t exponent(std::uint64_t n) const noexcept {
    return exponents_[static_cast<std::size_t>(n % modulus_)];
  }
  std::complex<double> operator()(std::uint64_t n) const;
  std::complex<double> operator()(std::int64_t n) const;

  bool is_principal() const;
  bool is_even() const { return exponent(modulus_ - 1) == 0 || modulus_ <= 2; }
  /// Smallest d | q such that chi factors through (Z/d)^*.
  std::uint32_t conductor() const;
  bool is_primitive() const { return conductor() == modulus_; }

  /// The primitive character inducing this one.
  DirichletCharacter primitive() const;
  DirichletCharacter conj() const;
  /// Product character modulo lcm of the two moduli.
  DirichletCharacter operator*(const DirichletCharacter& other) const;

  /// True when both characters take the same value at every n.
  bool operator==(const DirichletCharacter& other) const;

  /// sum_{a mod q} chi(a) e^{2 pi i a / q}.
  std::complex<double> gauss_sum() const;
  /// tau(chi) / (i^b sqrt(q)) for primitive chi with parity b. Modulus one.
  std::complex<double> root_number() const;

 private:
  DirichletCharacter(std::uint32_t modulus, std::uint32_t denominator,
                     std::vector<std::int32_t> exponents, std::optional<std::uint64_t> index);

  std::uint32_t modulus_ = 1;
  std::uint32_t denominator_ = 1;
  std::vector<std::int32_t> exponents_;
  std::optional<std::uint64_t> index_;
};

inline constexpr std::uint32_t kMaxCharacterModulus = 10'000'000;

std::uint64_t euler_phi(std::uint64_t n);

/// Indices (under the convention above) of all primitive characters mod q.
std::vector<std::uint64_t> primitive_character_indices(std::uint32_t modulus);

}  // namespace smo
