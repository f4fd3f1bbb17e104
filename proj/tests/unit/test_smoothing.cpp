#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "smo/errors.hpp"
#include "smo/smoothing.hpp"

using namespace smo;

namespace {

// Composite Simpson rule for int_0^3 w(x) x^{s-1} dx directly in x.
Complex simpson_mellin(Complex s, std::size_t intervals) {
  const double h = 3.0 / static_cast<double>(intervals);
  Complex sum = 0.0;
  for (std::size_t i = 1; i < intervals; ++i) {
    const double x = h * static_cast<double>(i);
    sum += (i % 2 ? 4.0 : 2.0) * weight(x) * std::pow(Complex(x, 0.0), s - 1.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_SUITE("smoothing") {

TEST_CASE("weight values") {
  CHECK(weight(0.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(weight(2.5) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(weight(3.5) == 0.0);
  CHECK(weight(0.0) == 0.0);
  CHECK(weight(3.0) == 0.0);
  CHECK(weight(-1.0) == 0.0);
  CHECK(weight(1.5) >= std::exp(-1.0));
  CHECK(weight(1.5) <= 1.0);
  CHECK(weight(1.5) == doctest::Approx(0.513417119032592).epsilon(1e-13));
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
}

TEST_CASE("support, range and the lower bound on [1/2, 1]") {
  for (int i = 0; i <= 100000; ++i) {
    const double x = -1.0 + 5.0 * i / 100000.0;
    const double w = weight(x);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    if (x <= 0.0 || x >= 3.0) CHECK(w == 0.0);
  }
  for (int i = 0; i <= 10000; ++i) {
    const double u = 0.5 + 0.5 * i / 10000.0;
    CHECK(weight(u) == std::exp(-1.0 / u));
    CHECK(weight(u) >= std::exp(-2.0));
  }
  double lo = 1.0;
  for (int i = 0; i <= 10000; ++i) lo = std::min(lo, weight(1.0 + i / 10000.0));
  CHECK(lo >= std::exp(-1.0) * (1.0 - 1e-12));
}

TEST_CASE("weight is smooth across the bridge ends") {
  // One-sided difference quotients up to third order agree at x = 1 and x = 2.
  const double h = 1e-3;
  for (double x0 : {1.0, 2.0}) {
    auto left = [&](int k) {
      switch (k) {
        case 1: return (weight(x0) - weight(x0 - h)) / h;
        case 2: return (weight(x0) - 2 * weight(x0 - h) + weight(x0 - 2 * h)) / (h * h);
        default: return (weight(x0) - 3 * weight(x0 - h) + 3 * weight(x0 - 2 * h) - weight(x0 - 3 * h)) / (h * h * h);
      }
    };
    auto right = [&](int k) {
      switch (k) {
        case 1: return (weight(x0 + h) - weight(x0)) / h;
        case 2: return (weight(x0 + 2 * h) - 2 * weight(x0 + h) + weight(x0)) / (h * h);
        default: return (weight(x0 + 3 * h) - 3 * weight(x0 + 2 * h) + 3 * weight(x0 + h) - weight(x0)) / (h * h * h);
      }
    };
    for (int k = 1; k <= 3; ++k) {
      INFO("x0=" << x0 << " order " << k);
      CHECK(std::abs(left(k) - right(k)) < 0.05 * (1.0 + std::abs(left(k))));
    }
    CHECK(std::abs(weight(x0 + 1e-12) - weight(x0 - 1e-12)) < 1e-11);
  }
}

TEST_CASE("Mellin transform against direct Simpson quadrature") {
  for (Complex s : {Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(3.5, 0.0), Complex(2.0, 5.0), Complex(1.0, -12.0)}) {
    const auto v = mellin(s);
    const Complex ref = simpson_mellin(s, 200000);
    INFO("s=" << s.real() << "+" << s.imag() << "i");
    CHECK(std::abs(v.value - ref) < 1e-10);
    CHECK(std::abs(v.value - v.fixed_value) <= 1e-9);
  }
  const auto w2 = mellin(2.0).value;
  CHECK(w2.real() > 0.0);
  CHECK(std::abs(w2.imag()) < 1e-14);
  const auto w1 = mellin(1.0).value.real();
  CHECK(w1 > 0.0);
  CHECK(w1 < 3.0);
  CHECK(std::abs(mellin(Complex(-2.0, 50.0)).value) < std::abs(mellin(Complex(-2.0, 10.0)).value));
}

TEST_CASE("Mellin transform is holomorphic") {
  oracle::Gen gen(21);
  const double h = 1e-3;
  for (int i = 0; i < 20; ++i) {
    const Complex s(gen.uniform(-2.5, 3.0), gen.uniform(-30.0, 30.0));
    const Complex d_sigma = (mellin(s + h).value - mellin(s - h).value) / (2 * h);
    const Complex d_t = (mellin(s + Complex(0, h)).value - mellin(s - Complex(0, h)).value) / (2 * h);
    INFO("s=" << s.real() << "+" << s.imag() << "i");
    CHECK(std::abs(d_t - Complex(0.0, 1.0) * d_sigma) < 1e-6);
  }
}

TEST_CASE("both quadrature rules agree") {
  oracle::Gen gen(22);
  const MellinEvaluator ev;
  for (int i = 0; i < 40; ++i) {
    const Complex s(gen.uniform(-3.0, 4.0), gen.uniform(0.0, 150.0));
    const auto v = ev.evaluate(s);
    CHECK(std::abs(v.value - v.fixed_value) <= 1e-9);
    CHECK(v.error_estimate <= 1e-10);
  }
}

TEST_CASE("decay fits") {
  std::vector<double> grid;
  for (int i = 0; i < 30; ++i) grid.push_back(std::pow(100.0, i / 29.0));
  for (double sigma : {-2.0, 2.0}) {
    const auto fit = mellin_decay_fit(sigma, grid);
    INFO("sigma=" << sigma << " slope=" << fit.slope);
    CHECK(fit.slope < -1.5);
    CHECK(fit.slope_upper_half < fit.slope_lower_half);  // decay accelerates
    CHECK(fit.dropped == 0);
  }
  // A hard cutoff has W(s) = 3^s / s, so |W| ~ 1/t.
  const MellinEvaluator cutoff([](double x) { return x > 0.0 && x < 3.0 ? 1.0 : 0.0; }, 3.0, {});
  const auto fit = mellin_decay_fit(2.0, std::vector<double>(grid.begin() + 15, grid.end()), cutoff);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(std::abs(cutoff.adaptive(Complex(2.0, 7.0)) - std::pow(Complex(3.0, 0.0), Complex(2.0, 7.0)) / Complex(2.0, 7.0)) < 1e-8);
  CHECK_THROWS_AS(mellin_decay_fit(2.0, std::vector<double>{1.0}), PreconditionError);
  CHECK_THROWS_AS(mellin_decay_fit(2.0, std::vector<double>{2.0, 1.0}), PreconditionError);
}

TEST_CASE("Mellin inversion") {
  for (double x : {0.5, 1.5, 2.5, 3.5}) {
    INFO("x=" << x);
    CHECK(mellin_inversion_check(x, 200.0) < 1e-6);
  }
  CHECK_THROWS_AS(mellin_inversion_check(-1.0, 200.0), PreconditionError);
}

TEST_CASE("least squares slope") {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
  CHECK_THROWS_AS(least_squares_slope(std::vector<double>{1, 1}, std::vector<double>{1, 2}), PreconditionError);
}

}
