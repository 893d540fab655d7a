#include <doctest.h>

#include <cmath>
#include <numbers>

#include "studentt/chi.hpp"
#include "studentt/error.hpp"
#include "studentt/quadrature.hpp"

using namespace studentt;

TEST_CASE("chi density") {
  CHECK(chi_density(1, 1) ==
        doctest::Approx(std::sqrt(2 / std::numbers::pi) * std::exp(-0.5)).epsilon(1e-15));
  CHECK(chi_density(2, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(chi_density(3, -1) == 0.0);
  CHECK_THROWS_AS(ChiDof::finite(0.5), DomainError);
  QuadratureConfig cfg;
  for (double p : {1.0, 2.0, 3.5, 10.0, 100.0}) {
    CAPTURE(p);
    const double mass =
        integrate_to_infinity([p](double x) { return chi_density(p, x); }, 0, cfg).value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chi_moment(p, constant_fn(1)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chi_moment(p, ScalarFunction([](double x) { return x * x; })) ==
          doctest::Approx(p).epsilon(1e-8));
  }
}

TEST_CASE("centered chi and its normal limit") {
  CHECK(z_moment(ChiDof::infinite(), constant_fn(1)) == doctest::Approx(1.0).epsilon(1e-12));
  const ScalarFunction sq([](double z) { return z * z; });
  CHECK(z_moment(ChiDof::infinite(), sq) == doctest::Approx(0.5).epsilon(1e-12));
  // Z_p -> N(0, 1/2); the variance gap is O(1/p).
  const double v = z_moment(ChiDof::finite(1e4), sq);
  CHECK(std::abs(v - 0.5) < 1e-3);
  // E Z_1 = E|N(0,1)| - 0.
  CHECK(z_moment(ChiDof::finite(1), ScalarFunction([](double z) { return z; })) ==
        doctest::Approx(std::sqrt(2 / std::numbers::pi)).epsilon(1e-10));
}

TEST_CASE("proposition 2 style certifiers") {
  const GridSpec grid{1, 300, 8, Spacing::logarithmic};
  CHECK(certify_z_moment(indicator_fn(0.5), grid).certified());
  CHECK(certify_z_ratio(abs_cap_fn(1), tanh_step_fn(), grid).certified());
  CHECK_THROWS_AS(certify_z_moment(ScalarFunction([](double z) { return -z; }), grid),
                  PreconditionError);
  CHECK_THROWS_AS(certify_z_ratio(constant_fn(0), cap_fn(1), grid), PreconditionError);
}
