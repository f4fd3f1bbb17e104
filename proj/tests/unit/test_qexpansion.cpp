#include <doctest.h>

#include "../oracles.hpp"
#include "smo/errors.hpp"
#include "smo/qexpansion.hpp"

using namespace smo;

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

TEST_SUITE("qexpansion") {

TEST_CASE("NTT primes and generators") {
  for (const auto& [p, g] : detail::kNttPrimes) {
    INFO("p=" << p);
    CHECK(oracle::is_prime(p));
    CHECK((p - 1) % (1u << 22) == 0);
    // g generates (Z/p)^*: no proper divisor of p - 1 kills it.
    CHECK(pow_mod(g, (p - 1) / 2, p) == p - 1);
    std::uint64_t rest = (p - 1) >> 22;
    for (std::uint64_t q = 3; q <= rest; q += 2) {
      if (rest % q) continue;
      CHECK(pow_mod(g, (p - 1) / q, p) != 1);
      while (rest % q == 0) rest /= q;
    }
  }
}

TEST_CASE("modular multiplication matches schoolbook products") {
  oracle::Gen gen(5);
  for (std::size_t idx = 0; idx < 12; ++idx) {
    const std::uint64_t p = detail::kNttPrimes[idx].p;
    const std::size_t len = static_cast<std::size_t>(gen.integer(1, 300));
    std::vector<std::uint32_t> a(len), b(len);
    for (auto& v : a) v = static_cast<std::uint32_t>(gen.engine()() % p);
    for (auto& v : b) v = static_cast<std::uint32_t>(gen.engine()() % p);
    const auto c = detail::multiply_mod(idx, a, b, len);
    const auto sq = detail::multiply_mod(idx, a, a, len);
    REQUIRE(c.size() == len);
    for (std::size_t n = 0; n < len; ++n) {
      std::uint64_t s = 0, t = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        s = (s + static_cast<std::uint64_t>(a[i]) * b[n - i]) % p;
        t = (t + static_cast<std::uint64_t>(a[i]) * a[n - i]) % p;
      }
      CHECK(c[n] == s);
      CHECK(sq[n] == t);
    }
  }
}

TEST_CASE("frozen coefficients") {
  const CuspFormExpansion delta(12, 100);
  CHECK(delta.coefficient(1) == 1);
  CHECK(delta.coefficient(2) == -24);
  CHECK(delta.coefficient(3) == 252);
  CHECK(delta.coefficient(10) == -115920);
  const CuspFormExpansion f16(16, 10);
  CHECK(f16.coefficient(2) == 216);
}

TEST_CASE("all weights match the eta-product and Eisenstein oracle") {
  const std::size_t n = 300;
  for (int k : kSupportedWeights) {
    const auto ref = oracle::cusp_form(k, n + 1);
    const CuspFormExpansion f(k, n);
    for (std::size_t i = 1; i <= n; ++i) {
      INFO("k=" << k << " n=" << i);
      CHECK(f.coefficient(i) == ref[i]);
    }
  }
}

TEST_CASE("Hecke relations on raw coefficients") {
  for (int k : kSupportedWeights) {
    const CuspFormExpansion f(k, 19 * 19 * 19 * 19);
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
      const BigInt pk1 = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k - 1));
      BigInt prev = 1, cur = f.coefficient(p);
      std::uint64_t pr = p;
      for (int r = 1; r <= 3; ++r) {
        const BigInt next = f.coefficient(p) * cur - pk1 * prev;
        pr *= p;
        INFO("k=" << k << " p=" << p << " r=" << r);
        CHECK(f.coefficient(pr) == next);
        prev = cur;
        cur = next;
      }
    }
  }
}

TEST_CASE("multiplicativity at coprime arguments") {
  const CuspFormExpansion f(20, 2000);
  for (std::size_t m = 2; m <= 40; ++m)
    for (std::size_t n = 2; m * n <= 2000; ++n)
      if (oracle::gcd(m, n) == 1) CHECK(f.coefficient(m * n) == f.coefficient(m) * f.coefficient(n));
}

TEST_CASE("preconditions") {
  CHECK_FALSE(is_supported_weight(14));
  CHECK(is_supported_weight(26));
  CHECK_THROWS_AS(CuspFormExpansion(14, 10), PreconditionError);
  CHECK_THROWS_AS(CuspFormExpansion(12, 0), PreconditionError);
  CHECK_THROWS_AS(CuspFormExpansion(12, kMaxExpansionLength + 1), PreconditionError);
  const CuspFormExpansion f(12, 10);
  CHECK_THROWS_AS(f.coefficient(0), PreconditionError);
  CHECK_THROWS_AS(f.coefficient(11), PreconditionError);
}

}
