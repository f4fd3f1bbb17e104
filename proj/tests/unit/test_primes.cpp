#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "smo/errors.hpp"
#include "smo/primes.hpp"

using namespace smo;

TEST_SUITE("primes") {

TEST_CASE("small sieves") {
  const auto t10 = sieve(10);
  CHECK(std::vector<std::uint32_t>(t10.primes().begin(), t10.primes().end()) ==
        std::vector<std::uint32_t>{2, 3, 5, 7});
  const auto t2 = sieve(2);
  REQUIRE(t2.size() == 1);
  CHECK(t2.primes()[0] == 2);
  CHECK_THROWS_AS(sieve(1), PreconditionError);
  CHECK_THROWS_AS(sieve(0), PreconditionError);
  CHECK_THROWS_AS(sieve(kSieveLimitMax + 1), PreconditionError);
}

TEST_CASE("sieve agrees with trial division and a segmented sieve") {
  const auto t = sieve(5000);
  std::size_t k = 0;
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    const bool expected = oracle::is_prime(n);
    CHECK(t.contains(n) == expected);
    if (expected) CHECK(t.primes()[k++] == n);
  }
  CHECK(k == t.size());
  CHECK(sieve(1'000'000).size() == 78498);
  CHECK(oracle::segmented_prime_count(1'000'000) == 78498);
  for (std::uint64_t limit : {2ULL, 3ULL, 97ULL, 100ULL, 65536ULL, 123457ULL})
    CHECK(sieve(limit).size() == oracle::segmented_prime_count(limit));
}

TEST_CASE("smallest prime factors") {
  const auto spf = smallest_prime_factors(10000);
  CHECK(spf[0] == 0);
  CHECK(spf[1] == 0);
  for (std::uint32_t n = 2; n <= 10000; ++n) {
    std::uint32_t d = 2;
    while (n % d) ++d;
    CHECK(spf[n] == d);
  }
}

TEST_CASE("window counts") {
  CHECK(window_count(100, 1) == 10);
  CHECK(window_count(4, 2) == 1);
  const auto table = sieve(1000);
  std::size_t direct = 0;
  for (auto p : table.primes())
    if (p >= std::sqrt(5e5) && p <= 1000) ++direct;
  CHECK(window_count(1e6, 2) == direct);
  CHECK(window_count(table, 1e6, 2) == direct);
}

TEST_CASE("window count matches direct filtering of the table") {
  oracle::Gen gen(11);
  const auto table = sieve(200000);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = gen.integer(1, 3);
    const double x = std::exp(gen.uniform(std::log(4.0), std::log(m == 1 ? 2e5 : 1e9)));
    const double lo = std::pow(x / 2.0, 1.0 / m), hi = std::pow(x, 1.0 / m);
    std::size_t direct = 0;
    for (auto p : table.primes()) {
      std::uint64_t pm = 1;
      for (int i = 0; i < m; ++i) pm *= p;
      if (2.0 * static_cast<double>(pm) >= x && static_cast<double>(pm) <= x) ++direct;
    }
    INFO("x=" << x << " m=" << m << " [" << lo << ", " << hi << "]");
    CHECK(window_count(x, m) == direct);
  }
}

TEST_CASE("empirical c") {
  std::vector<double> grid;
  for (double x = 1e3; x <= 1e6 * 1.0001; x *= std::sqrt(10.0)) grid.push_back(x);
  const double c1 = empirical_c(grid, 1);
  const double c2 = empirical_c(grid, 2);
  CHECK(c1 > 0.0);
  CHECK(c2 > 0.0);
  const double degenerate[] = {4.0};
  CHECK(empirical_c(degenerate, 2) == doctest::Approx(std::log(4.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(empirical_c(std::span<const double>{}, 1), PreconditionError);

  for (int m : {1, 2}) {
    double lo = INFINITY, hi = 0.0;
    for (double x = 1e3; x <= 1e9 * 1.0001; x *= 10.0) {
      const double one[] = {x};
      const double c = empirical_c(one, m);
      if (m == 1 && x > 1e7) break;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    INFO("m=" << m);
    CHECK(hi / lo < 1.5);
  }
}

TEST_CASE("prime divisors") {
  CHECK(prime_divisors(1).empty());
  CHECK(prime_divisors(360) == std::vector<std::uint32_t>{2, 3, 5});
  CHECK(prime_divisors(97) == std::vector<std::uint32_t>{97});
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(1'000'000'007ULL));
}

}
