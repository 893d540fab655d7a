#include <doctest.h>

#include <cmath>
#include <numbers>

#include "studentt/error.hpp"
#include "studentt/quadrature.hpp"

using namespace studentt;

TEST_CASE("polynomials and smooth integrands") {
  QuadratureConfig cfg;
  CHECK(integrate([](double x) { return x * x; }, 0, 3, cfg).value ==
        doctest::Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi, cfg).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return x; }, 2, 1, cfg).value ==
        doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("breakpoints handle a jump") {
  QuadratureConfig cfg;
  auto step = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  const double breaks[] = {0.3};
  CHECK(integrate(step, 0, 1, cfg, breaks).value == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("semi-infinite ranges") {
  QuadratureConfig cfg;
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0, cfg).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0, cfg).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(integrate_from_minus_infinity([](double x) { return std::exp(x); }, 1, cfg).value ==
        doctest::Approx(std::numbers::e).epsilon(1e-12));
}

TEST_CASE("gauss-legendre is exact for degree 2n-1") {
  auto f = [](double x) { return std::pow(x, 29) + 3 * x * x; };
  const double exact = (std::pow(2.0, 30) - 1.0) / 30.0 + 7.0;
  CHECK(gauss_legendre(f, 1, 2, 15) == doctest::Approx(exact).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre(f, 0, 1, 0), DomainError);
}

TEST_CASE("failures are reported") {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, cfg),
                  QuadratureError);
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, -1, 1, QuadratureConfig{}),
                  QuadratureError);
  QuadratureConfig bad;
  bad.rel_tol = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
