#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace smo {

using BigInt = boost::multiprecision::cpp_int;

/// Weights k for which S_k(SL2(Z)) is one-dimensional and the toolkit can
/// build the eigenform.
inline constexpr int kSupportedWeights[] = {12, 16, 18, 20, 22, 26};

bool is_supported_weight(int weight);

/// Exact q-expansion a_1..a_{n_max} of the normalized level-one cusp form of
/// weight k, written as Delta * E4^i * E6^j.
///
/// Arithmetic is done modulo several NTT primes and recombined by CRT. Enough
/// primes are used to cover |a_n| <= d(n) n^{(k-1)/2}; residues are kept so any
/// coefficient can be reconstructed exactly on demand.
class CuspFormExpansion {
 public:
  CuspFormExpansion(int weight, std::size_t n_max);

  int weight() const noexcept { return weight_; }
  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t modulus_count() const noexcept { return residues_.size(); }

  /// a_n for 1 <= n <= n_max.
  BigInt coefficient(std::size_t n) const;

 private:
  int weight_;
  std::size_t n_max_;
  std::vector<std::vector<std::uint32_t>> residues_;
  // inverse_[i][j] = p_j^{-1} mod p_i for j < i.
  std::vector<std::vector<std::uint64_t>> inverse_;
  BigInt modulus_;
};

/// Largest n_max a CuspFormExpansion accepts.
inline constexpr std::size_t kMaxExpansionLength = (std::size_t{1} << 21) - 2;

namespace detail {

/// NTT-friendly primes (p = c * 2^22 + 1) with a generator of (Z/p)^*.
struct NttPrime {
  std::uint32_t p;
  std::uint32_t generator;
};
inline constexpr NttPrime kNttPrimes[12] = {
    {2130706433u, 3},  {2113929217u, 5},  {2088763393u, 5},  {2025848833u, 10},
    {2013265921u, 31}, {1866465281u, 3},  {1811939329u, 13}, {1790967809u, 13},
    {1711276033u, 29}, {1572864001u, 13}, {1484783617u, 5},  {1438646273u, 3},
};

/// Truncated product of two series modulo kNttPrimes[prime_index].p.
std::vector<std::uint32_t> multiply_mod(std::size_t prime_index, const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b, std::size_t length);

}  // namespace detail

}  // namespace smo
