#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../oracles.hpp"
#include "smo/catalog.hpp"
#include "smo/distinguisher.hpp"
#include "smo/errors.hpp"
#include "smo/rankin_selberg.hpp"
#include "smo/smoothing.hpp"

using namespace smo;

TEST_SUITE("distinguisher") {

TEST_CASE("smoothed sums of the trivial pair") {
  const auto one = dirichlet_character(1, 0);
  const auto s = smoothed_sum(one, one, 10.0);
  double direct = 0.0;
  for (int n = 1; n <= 30; ++n) direct += weight(n / 10.0);
  CHECK(s.value.real() == doctest::Approx(direct).epsilon(1e-14));
  CHECK(s.value.real() > 0.0);
  CHECK(s.terms_used == 29);
  CHECK(s.error_bound > 0.0);
  CHECK(s.error_bound < 1e-12);

  const auto empty = smoothed_sum(rs_series(one, one, 5), 0.3);
  CHECK(empty.value == Complex(0.0, 0.0));
  CHECK(empty.terms_used == 0);
  CHECK(required_terms(0.3) == 0);
  CHECK(required_terms(10.0) == 29);
  CHECK(required_terms(10.1) == 30);
  CHECK_THROWS_AS(smoothed_sum(rs_series(one, one, 10), 10.0), PreconditionError);
  CHECK_THROWS_AS(smoothed_sum(rs_series(one, one, 10), -1.0), PreconditionError);
}

TEST_CASE("truncation exactness and thread independence") {
  const auto delta = eigenform(12, 100000);
  const auto f16 = eigenform(16, 100000);
  const auto longer = rs_series(delta, f16, 100000);
  for (double x : {100.0, 1234.5, 9999.0}) {
    const auto shorter = rs_series(delta, f16, required_terms(x));
    const auto a = smoothed_sum(shorter, x);
    const auto b = smoothed_sum(longer, x);
    CHECK(a.value == b.value);
    CHECK(a.terms_used == b.terms_used);
    for (unsigned threads : {2u, 3u, 8u}) CHECK(smoothed_sum(longer, x, threads).value == a.value);
  }
}

TEST_CASE("self-pair sums dominate the truncation chain") {
  const auto delta = eigenform(12, 3000);
  const auto series = rs_series(delta, delta, 3000);
  const double x = 1000.0;
  const auto s = smoothed_sum(series, x);
  double chain = 0.0;
  for (std::size_t n = 500; n <= 1000; ++n) chain += series[n].real();
  CHECK(std::abs(s.value.imag()) <= s.error_bound);
  CHECK(s.value.real() >= std::exp(-2.0) * chain);
}

TEST_CASE("main-term inequality") {
  const auto one = dirichlet_character(1, 0);
  const auto r1 = main_term_check(one, 1e4, 10.0);
  CHECK(r1.in_regime);
  CHECK(r1.margin >= 0.0);
  CHECK(r1.c_emp > 0.0);

  const auto delta = eigenform(12, 300000);
  const double q = analytic_conductor(delta).analytic;
  const auto r2 = main_term_check(delta, 1e5, q);
  CHECK(r2.m == 2);
  CHECK(r2.margin >= 0.0);
  CHECK(r2.sum >= r2.chain_bound);
  CHECK_THROWS_AS(main_term_check(delta, 1e3, q), PreconditionError);

  for (const auto& rep : {dirichlet_character(4, 1), dirichlet_character(7, 3)}) {
    const double qc = analytic_conductor(rep).analytic;
    for (double x : {1e3, 1e4, 1e5}) {
      const auto r = main_term_check(rep, x, qc);
      INFO(rep.label() << " x=" << x);
      CHECK(r.margin >= 0.0);
    }
  }
}

TEST_CASE("cross-pair decay for characters") {
  const auto a = dirichlet_character(5, 1), b = dirichlet_character(5, 3);
  std::vector<double> grid;
  for (int i = 0; i <= 24; ++i) grid.push_back(100.0 * std::pow(1000.0, i / 24.0));
  const auto fit = decay_fit(a, b, grid);
  CHECK(fit.slope <= -3.0);
  CHECK(fit.floor_x.has_value());
  CHECK_THROWS_AS(decay_fit(a, a, grid), PreconditionError);

  for (const auto& [p, q] : std::vector<std::pair<Representation, Representation>>{
           {a, b}, {dirichlet_character(7, 1), dirichlet_character(7, 2)}, {dirichlet_character(4, 1), dirichlet_character(3, 1)}}) {
    const auto series = rs_series(p, q, 300000);
    double prev = INFINITY;
    for (double x = 1e3; x <= 1e5; x *= 1.25) {
      const double v = std::abs(smoothed_sum(series, x).value);
      if (v < kPrecisionFloor) break;
      INFO(p.label() << " vs " << q.label() << " x=" << x);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("difference positivity at x >= 1e4") {
  const auto delta = eigenform(12, 30000), f16 = eigenform(16, 30000), f18 = eigenform(18, 30000);
  const std::vector<std::pair<Representation, Representation>> pairs = {
      {delta, f16}, {f16, f18}, {dirichlet_character(5, 1), dirichlet_character(5, 2)},
      {dirichlet_character(1, 0), dirichlet_character(8, primitive_character_indices(8).front())}};
  for (const auto& [a, b] : pairs) {
    for (double x : {1e4}) {
      const auto r = distinguish(a, b, x);
      INFO(a.label() << " vs " << b.label());
      CHECK(r.margin > 0.0);
      CHECK(r.verdict == Verdict::Distinct);
    }
  }
}

TEST_CASE("distinguish examples") {
  const auto chi4 = dirichlet_character(4, 1), one = dirichlet_character(1, 0);
  const auto r = distinguish(chi4, one, 100.0);
  CHECK(r.verdict == Verdict::Distinct);
  REQUIRE(r.evidence_prime);
  CHECK(*r.evidence_prime == 3);
  CHECK_FALSE(r.evidence_ramified);

  const auto delta = eigenform(12, 3000), f16 = eigenform(16, 3000);
  const auto d = distinguish(delta, f16, 1000.0);
  CHECK(d.verdict == Verdict::Distinct);
  CHECK(d.evidence_prime == std::optional<std::uint32_t>(2));
  CHECK(d.n == 2);
  CHECK(d.q == doctest::Approx(80.75));
  CHECK(d.threshold_x == doctest::Approx(std::pow(80.75, 8.0 + 0.4)));

  for (const auto& rep : {chi4, delta}) {
    const auto s = distinguish(rep, rep, 900.0);
    CHECK(s.verdict == Verdict::IndistinguishableUpTo);
    CHECK_FALSE(s.evidence_prime);
    CHECK(s.sum_self == s.sum_cross.real());
    CHECK(s.sum_cross.imag() == 0.0);
    CHECK(s.sums_agree);
  }
  CHECK_THROWS_AS(distinguish(chi4, one, 0.0), PreconditionError);
}

TEST_CASE("Distinct implies differing local data at the evidence prime") {
  std::vector<Representation> chars;
  for (std::uint32_t q = 1; q <= 12; ++q)
    for (auto i : primitive_character_indices(q)) chars.push_back(dirichlet_character(q, i));
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = 0; j < chars.size(); ++j) {
      if (i == j) continue;
      const auto r = distinguish(chars[i], chars[j], 50.0);
      REQUIRE(r.verdict == Verdict::Distinct);
      const auto ca = local_coefficient_array(chars[i], *r.evidence_prime, 1);
      const auto cb = local_coefficient_array(chars[j], *r.evidence_prime, 1);
      CHECK(std::abs(ca[0] - cb[0]) > 1e-9);
    }
  }
}

TEST_CASE("agreement implies equal sums") {
  std::vector<Representation> chars;
  for (std::uint32_t q = 1; q <= 40; ++q)
    for (auto i : primitive_character_indices(q)) chars.push_back(dirichlet_character(q, i));
  std::size_t tested = 0;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = i + 1; j < chars.size(); ++j) {
      const auto& a = chars[i];
      const auto& b = chars[j];
      const auto p = first_disagreement(a, b, 1000, true);
      if (!p || *p < 5) continue;
      const std::uint64_t g = oracle::gcd(a.character().modulus(), b.character().modulus());
      const double x = (*p - 1) / 3.0;
      bool shared_ramified = false;
      for (std::uint64_t r = 2; r <= 3 * x; ++r)
        if (oracle::is_prime(r) && g % r == 0) shared_ramified = true;
      if (shared_ramified) continue;
      const auto n = required_terms(x);
      const auto self = smoothed_sum(rs_series(a, a, n), x);
      const auto cross = smoothed_sum(rs_series(a, b, n), x);
      INFO(a.label() << " vs " << b.label() << " x=" << x);
      CHECK(std::abs(self.value - cross.value) <= self.error_bound + cross.error_bound);
      ++tested;
    }
  }
  CHECK(tested > 10);
}

TEST_CASE("threshold experiment") {
  std::vector<RepresentationPair> pairs;
  std::vector<Representation> chars;
  for (std::uint32_t q = 1; q <= 20; ++q)
    for (auto i : primitive_character_indices(q)) chars.push_back(dirichlet_character(q, i));
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i; j < chars.size(); ++j) pairs.push_back({chars[i], chars[j]});
  const auto rows = threshold_experiment(pairs, 10.0);
  CHECK(rows.size() == chars.size() * (chars.size() - 1) / 2);
  for (const auto& r : rows) {
    REQUIRE(r.first_prime);
    CHECK(static_cast<double>(*r.first_prime) <= r.threshold);
    CHECK(r.ratio < 1.0);
  }
  const auto delta = eigenform(12, 1000), f16 = eigenform(16, 1000);
  const RepresentationPair df[] = {{delta, f16}};
  const auto gl2 = threshold_experiment(df, 10.0, QRule::NextInteger, 1000);
  REQUIRE(gl2.size() == 1);
  CHECK(gl2[0].q == 81.0);
  CHECK(gl2[0].ratio < 1e-10);
  CHECK_THROWS_AS(threshold_x(10.0, 1, 0.0), PreconditionError);
}

}
