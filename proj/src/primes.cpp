#include "smo/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smo/errors.hpp"

namespace smo {

namespace {

// Largest integer r with r^m <= x.
std::uint64_t integer_root_floor(double x, int m) {
  if (x < 1.0) return 0;
  auto r = static_cast<std::uint64_t>(std::pow(x, 1.0 / m));
  auto power = [m](std::uint64_t b) {
    long double v = 1.0L;
    for (int i = 0; i < m; ++i) v *= static_cast<long double>(b);
    return v;
  };
  while (r > 0 && power(r) > static_cast<long double>(x)) --r;
  while (power(r + 1) <= static_cast<long double>(x)) ++r;
  return r;
}

// Smallest integer r >= 1 with r^m >= x.
std::uint64_t integer_root_ceil(double x, int m) {
  std::uint64_t r = integer_root_floor(x, m);
  long double v = 1.0L;
  for (int i = 0; i < m; ++i) v *= static_cast<long double>(r);
  if (v < static_cast<long double>(x)) ++r;
  return std::max<std::uint64_t>(r, 1);
}

void check_window_args(double x, int m) {
  if (!(x >= 2.0)) throw PreconditionError("window_count: x must be >= 2");
  if (m < 1) throw PreconditionError("window_count: m must be >= 1");
}

}  // namespace

bool PrimeTable::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeTable::count_in(double lo, double hi) const {
  if (hi > static_cast<double>(limit_)) {
    throw PreconditionError("PrimeTable::count_in: upper end " + to_text(hi) +
                            " exceeds table limit " + std::to_string(limit_));
  }
  if (hi < lo) return 0;
  auto first = std::lower_bound(primes_.begin(), primes_.end(), std::ceil(lo),
                                [](std::uint32_t p, double v) { return p < v; });
  auto last = std::upper_bound(primes_.begin(), primes_.end(), std::floor(hi),
                               [](double v, std::uint32_t p) { return v < p; });
  return first < last ? static_cast<std::size_t>(last - first) : 0;
}

PrimeTable sieve(std::uint64_t limit) {
  if (limit < 2) throw PreconditionError("sieve: limit must be >= 2");
  if (limit > kSieveLimitMax) {
    throw PreconditionError("sieve: limit " + std::to_string(limit) +
                            " exceeds memory budget (max " + std::to_string(kSieveLimitMax) +
                            ", ~" + std::to_string(kSieveLimitMax / 2 / (1 << 20)) + " MiB)");
  }
  // composite[i] marks 2i+1.
  const std::uint64_t half = (limit + 1) / 2;
  std::vector<std::uint8_t> composite(half, 0);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = 1;
  }
  std::vector<std::uint32_t> primes;
  primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))) + 8);
  primes.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return PrimeTable(limit, std::move(primes));
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t n_max) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    if (spf[n] == 0) {
      spf[n] = n;
      primes.push_back(n);
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t q = static_cast<std::uint64_t>(p) * n;
      if (p > spf[n] || q > n_max) break;
      spf[q] = p;
    }
  }
  return spf;
}

std::size_t window_count(const PrimeTable& table, double x, int m) {
  check_window_args(x, m);
  const std::uint64_t lo = integer_root_ceil(x / 2.0, m);
  const std::uint64_t hi = integer_root_floor(x, m);
  return table.count_in(static_cast<double>(lo), static_cast<double>(hi));
}

std::size_t window_count(double x, int m) {
  check_window_args(x, m);
  const std::uint64_t hi = integer_root_floor(x, m);
  if (hi < 2) return 0;
  return window_count(sieve(hi), x, m);
}

double empirical_c(std::span<const double> x_grid, int m) {
  if (x_grid.empty()) throw PreconditionError("empirical_c: empty grid");
  double x_max = 0.0;
  for (double x : x_grid) x_max = std::max(x_max, x);
  check_window_args(x_max, m);
  const PrimeTable table = sieve(std::max<std::uint64_t>(2, integer_root_floor(x_max, m)));
  double c = INFINITY;
  for (double x : x_grid) {
    const double count = static_cast<double>(window_count(table, x, m));
    c = std::min(c, count * std::log(x) / std::pow(x, 1.0 / m));
  }
  return c;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

}  // namespace smo
