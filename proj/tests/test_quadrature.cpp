#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adaptive_gauss.hpp"
#include "glassydicke/quadrature.hpp"
#include "glassydicke/rs_solver.hpp"

using namespace glassydicke;

namespace {

double moment(const QuadratureRule& r, int p) {
  double s = 0.0;
  for (int i = 0; i < r.order; ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
  return s;
}

}  // namespace

TEST_CASE("gauss-hermite weight normalization and Gaussian moments") {
  for (int order : {2, 7, 8, 40, 80, 160}) {
    auto r = gauss_hermite(order);
    CHECK(std::fabs(moment(r, 0) - 1.0) < 1e-14);
    if (order >= 3) CHECK(std::fabs(moment(r, 2) - 1.0) < 1e-12);
    if (order >= 8) CHECK(std::fabs(moment(r, 4) - 3.0) < 3e-12);
    // nodes come in exact +- pairs
    for (int i = 0; i < order / 2; ++i) {
      CHECK(r.nodes[i] == -r.nodes[order - 1 - i]);
      CHECK(r.weights[i] == r.weights[order - 1 - i]);
    }
  }
}

TEST_CASE("gauss-hermite rejects bad orders") {
  CHECK_THROWS_AS(gauss_hermite(1), std::invalid_argument);
  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_hermite(300), std::invalid_argument);
}

TEST_CASE("legendre helper integrates polynomials") {
  const auto& r = cached_legendre(16);
  double s2 = 0.0, s0 = 0.0;
  for (int i = 0; i < r.order; ++i) {
    s0 += r.weights[i];
    s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
  }
  CHECK(std::fabs(s0 - 2.0) < 1e-14);
  CHECK(std::fabs(s2 - 2.0 / 3.0) < 1e-14);
}

TEST_CASE("tanh^2 integral: order doubling self-consistency and adaptive oracle") {
  const double b = 2.0 * std::sqrt(0.5);
  auto r40 = gauss_hermite(40);
  auto r80 = gauss_hermite(80);
  const double v40 = gaussian_tanh_moments(0.0, b, r40).tanh_sq_mean;
  const double v80 = gaussian_tanh_moments(0.0, b, r80).tanh_sq_mean;
  CHECK(std::fabs(v40 - v80) < 1e-12);

  const double ref =
      test_oracle::gauss_expect([&](double z) { return std::pow(std::tanh(b * z), 2); });
  CHECK(std::fabs(v80 - ref) < 1e-12);
  CHECK(ref == doctest::Approx(0.51997574566394889).epsilon(1e-12));
}

TEST_CASE("gaussian tanh moments match the adaptive oracle across regimes") {
  auto rule = gauss_hermite(80);
  for (double a : {0.0, 0.3, 0.5, 2.0, 10.0, 40.0}) {
    for (double b : {0.0, 0.05, 0.3, 0.6, 0.65, 0.7, 0.9, 1.414, 2.0, 5.0, 10.0, 20.0}) {
      CAPTURE(a);
      CAPTURE(b);
      TanhMoments got = gaussian_tanh_moments(a, b, rule);
      double want_t, want_t2;
      if (b == 0.0) {
        want_t = std::tanh(a);
        want_t2 = want_t * want_t;
      } else {
        const double split = -a / b;
        want_t = test_oracle::gauss_expect(
            [&](double z) { return std::tanh(a + b * z); }, split);
        want_t2 = test_oracle::gauss_expect(
            [&](double z) { return std::pow(std::tanh(a + b * z), 2); }, split);
      }
      CHECK(std::fabs(got.tanh_mean - want_t) < 5e-13);
      CHECK(std::fabs(got.tanh_sq_mean - want_t2) < 5e-13);
    }
  }
}

TEST_CASE("gaussian log2cosh matches the adaptive oracle") {
  auto rule = gauss_hermite(80);
  for (double a : {0.0, 0.5, 2.0, 40.0}) {
    for (double b : {0.0, 0.3, 0.65, 1.0, 2.0, 10.0, 20.0}) {
      CAPTURE(a);
      CAPTURE(b);
      const double got = gaussian_log2cosh(a, b, rule);
      double want;
      if (b == 0.0) {
        want = std::fabs(a) + std::log1p(std::exp(-2.0 * std::fabs(a)));
      } else {
        want = test_oracle::gauss_expect(
            [&](double z) {
              const double x = std::fabs(a + b * z);
              return x + std::log1p(std::exp(-2.0 * x));
            },
            -a / b);
      }
      // the integrals grow like b; compare with a mixed tolerance
      CHECK(std::fabs(got - want) < 5e-13 * std::max(1.0, want));
    }
  }
}

TEST_CASE("odd integrand vanishes identically at a = 0") {
  auto rule = gauss_hermite(80);
  for (double b : {0.3, 1.414, 7.0}) CHECK(gaussian_tanh_moments(0.0, b, rule).tanh_mean == 0.0);
}
