#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "smo/catalog.hpp"
#include "smo/errors.hpp"
#include "smo/primes.hpp"
#include "smo/rankin_selberg.hpp"

using namespace smo;

namespace {

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("eigenform exact coefficients and normalized eigenvalues") {
  const auto delta = eigenform(12, 1000);
  CHECK(delta.form().coefficient(2) == -24);
  CHECK(delta.form().coefficient(3) == 252);
  CHECK(delta.form().lambda(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK(eigenform(16, 100).form().coefficient(2) == 216);
  CHECK(delta.label() == "f12");
  CHECK(delta.degree() == 2);
  CHECK(delta.ramified_primes().empty());
  CHECK_THROWS_AS(delta.form().lambda(4), PreconditionError);
  CHECK_THROWS_AS(delta.form().lambda(1009), PreconditionError);
  CHECK_THROWS_AS(eigenform(14), PreconditionError);
  CHECK_THROWS_AS(eigenform(12, 1), PreconditionError);
}

TEST_CASE("Deligne bound for every catalog eigenform") {
  for (int k : kSupportedWeights) {
    const auto f = eigenform(k, 10000);
    const auto primes = sieve(10000);
    double worst = 0.0;
    for (auto p : primes.primes()) worst = std::max(worst, std::abs(f.form().lambda(p)));
    INFO("k=" << k);
    CHECK(worst <= 2.0 + 1e-9);
  }
}

TEST_CASE("Satake classes") {
  const auto delta = eigenform(12, 100);
  const auto s2 = satake_at(delta, 2);
  REQUIRE(s2.degree() == 2);
  CHECK(near(s2.alphas[0] + s2.alphas[1], delta.form().lambda(2)));
  CHECK(near(s2.alphas[0] * s2.alphas[1], 1.0));

  const auto zero = satake_from_eigenvalue(7, 0.0);
  CHECK(near(zero.alphas[0], {0.0, 1.0}));
  CHECK(near(zero.alphas[1], {0.0, -1.0}));

  const auto big = satake_from_eigenvalue(7, 2.5);
  CHECK(near(big.alphas[0] + big.alphas[1], 2.5));
  CHECK(near(big.alphas[0] * big.alphas[1], 1.0));

  const auto chi4 = dirichlet_character(4, 1);
  const auto r2 = satake_at(chi4, 2);
  REQUIRE(r2.degree() == 1);
  CHECK(r2.alphas[0] == Complex(0.0, 0.0));
  CHECK(r2.has_zero());
  CHECK(near(satake_at(chi4, 3).alphas[0], -1.0));
  CHECK_THROWS_AS(satake_at(delta, 9), PreconditionError);
}

TEST_CASE("Satake round trip reproduces prime-power coefficients") {
  for (int k : kSupportedWeights) {
    const auto f = eigenform(k, 10000);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
      const auto local = local_coefficients(satake_at(f, p), SatakeClass{p, {1.0}}, 3);
      std::uint64_t pr = 1;
      for (int r = 1; r <= 3; ++r) {
        pr *= p;
        if (pr > kExactCoefficientBound) break;
        const double scale = std::pow(static_cast<double>(pr), 0.5 * (k - 1));
        const double expected = f.form().coefficient(pr).convert_to<double>() / scale;
        INFO("k=" << k << " p=" << p << " r=" << r);
        CHECK(local.coefficients[r].real() == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        CHECK(std::abs(local.coefficients[r].imag()) < 1e-12);
      }
    }
  }
}

TEST_CASE("Luo-Rudnick-Sarnak check") {
  CHECK(lrs_check(SatakeClass{5, {std::polar(1.0, 0.3)}}) == doctest::Approx(0.0));
  CHECK(lrs_check(SatakeClass{5, {std::polar(1.0, 0.3), std::polar(1.0, -0.3)}}) == doctest::Approx(-0.3));
  const double a = std::pow(3.0, 0.6);
  CHECK(lrs_check(SatakeClass{3, {a, 1.0 / a}}) == doctest::Approx(0.3));
  CHECK(lrs_check(SatakeClass{3, {0.0}}) == 0.0);
}

TEST_CASE("characters in the catalog") {
  const auto chi = dirichlet_character(5, 1);
  CHECK(chi.label() == "chi5.1");
  CHECK(chi.ramified_primes() == std::vector<std::uint32_t>{5});
  CHECK_THROWS_AS(dirichlet_character(6, 0), PreconditionError);  // principal mod 6 is imprimitive
  CHECK_THROWS_AS(dirichlet_character(5, 4), PreconditionError);
  CHECK(dirichlet_character(1, 0, "one").label() == "one");
  const RepresentationSpec a{Gl1Character{5, 1}, "x"}, b{Gl1Character{5, 1}, "y"};
  CHECK(a.same_representation(b));
}

TEST_CASE("analytic conductors") {
  const auto triv = analytic_conductor(dirichlet_character(1, 0));
  CHECK(triv.arithmetic == 1);
  CHECK(triv.analytic == 1.0);
  CHECK(analytic_conductor(dirichlet_character(4, 1)).analytic == 8.0);
  CHECK(analytic_conductor(dirichlet_character(5, 2)).analytic == 5.0);
  CHECK(analytic_conductor(eigenform(12, 100)).analytic == doctest::Approx(6.5 * 7.5));
}

TEST_CASE("GL2 archimedean parameters split the complex gamma factor") {
  // Gamma_C(s + a) = Gamma_R(s + b1) Gamma_R(s + b2) with Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)
  // and Gamma_R(s) = pi^{-s/2} Gamma(s/2).
  for (int k : kSupportedWeights) {
    const auto b = archimedean_data(eigenform(k, 100)).b_params;
    REQUIRE(b.size() == 2);
    const double a = 0.5 * (k - 1);
    for (double s : {0.7, 1.0, 2.5, 6.0}) {
      const double lhs = std::log(2.0) - (s + a) * std::log(2.0 * M_PI) + std::lgamma(s + a);
      double rhs = 0.0;
      for (const auto& bi : b) rhs += -0.5 * (s + bi.real()) * std::log(M_PI) + std::lgamma(0.5 * (s + bi.real()));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  CHECK(archimedean_data(dirichlet_character(4, 1)).b_params[0] == Complex(1.0, 0.0));
  CHECK(archimedean_data(dirichlet_character(5, 2)).b_params[0] == Complex(0.0, 0.0));
}

}
