#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace smo {

/// Sorted table of every prime up to `limit()`.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  bool contains(std::uint64_t n) const;

  /// Number of primes in the closed interval [lo, hi]. Requires hi <= limit().
  std::size_t count_in(double lo, double hi) const;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

/// Largest limit accepted by sieve(); one byte per odd integer below it.
inline constexpr std::uint64_t kSieveLimitMax = 4'000'000'000ULL;

/// Sieve of Eratosthenes. Throws PreconditionError for limit < 2 or when the
/// limit exceeds the memory budget.
PrimeTable sieve(std::uint64_t limit);

/// Smallest prime factor of every n in [0, n_max]; entries 0 and 1 are 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n_max);

/// #{p prime : (x/2)^{1/m} <= p <= x^{1/m}}.
std::size_t window_count(double x, int m);
std::size_t window_count(const PrimeTable& table, double x, int m);

/// min over the grid of window_count(x, m) * log(x) / x^{1/m}.
double empirical_c(std::span<const double> x_grid, int m);

bool is_prime(std::uint64_t n);

/// Distinct prime divisors in increasing order.
std::vector<std::uint32_t> prime_divisors(std::uint64_t n);

}  // namespace smo
