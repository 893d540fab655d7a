#include <doctest.h>

#include <cmath>
#include <numbers>

#include "studentt/error.hpp"
#include "studentt/functions.hpp"
#include "studentt/truncated.hpp"

using namespace studentt;
using std::numbers::pi;

TEST_CASE("function descriptors") {
  CHECK(parse_function("pow:2")(3.0) == 9.0);
  CHECK(parse_function("pow:2")(-3.0) == 0.0);
  CHECK(parse_function("cap:1")(0.4) == 0.4);
  CHECK(parse_function("cap:1")(7.0) == 1.0);
  CHECK(parse_function("ind:1")(1.0) == 0.0);
  CHECK(parse_function("ind:1")(1.01) == 1.0);
  CHECK(parse_function("abscap:2")(-1.5) == 1.5);
  CHECK(parse_function("tanhstep")(0.0) == 0.5);
  CHECK(parse_function("const:3")(-8.0) == 3.0);
  CHECK(parse_function("ind:1").breakpoints == std::vector<double>{1.0});
  CHECK(parse_function("cap:1.5").description == "cap:1.5");
  CHECK_THROWS(parse_function("wiggle"));
  CHECK(sampled_nondecreasing(cap_fn(1), 0, 5));
  CHECK_FALSE(sampled_nondecreasing(ScalarFunction([](double t) { return -t; }), 0, 5));
  CHECK(product(power_fn(1), cap_fn(1))(2.0) == 2.0);
}

TEST_CASE("Cauchy conditional expectations in closed form") {
  const Dof c = Dof::finite(1);
  CHECK(conditional_below(c, power_fn(1)) ==
        doctest::Approx(1 - std::log(4.0) / pi).epsilon(1e-10));
  // P(|T| > 2) / P(|T| > 1)
  CHECK(conditional_above(c, indicator_fn(1)) ==
        doctest::Approx(2 - 4 * std::atan(2.0) / pi).epsilon(1e-10));
  // E((|T| - 1) wedge 1 | |T| > 1) = int_1^2 G(x) dx / G(1) for the tail G.
  const double num = 0.5 - (2 * std::atan(2.0) - std::log(5.0) / 2 - (std::atan(1.0) - std::log(2.0) / 2)) / pi;
  CHECK(conditional_above(c, cap_fn(1)) == doctest::Approx(num / 0.25).epsilon(1e-9));
}

TEST_CASE("plus-part moments against direct sums") {
  const Dof p = Dof::infinite();
  // E (1 - |Z|)_+ = 2 int_0^1 (1 - x) phi(x) dx = 2 (1/2 - G(1)) - 2 (phi(0) - phi(1))
  const double phi0 = 1 / std::sqrt(2 * pi);
  const double phi1 = phi0 * std::exp(-0.5);
  const double g1 = 0.5 * std::erfc(1 / std::sqrt(2.0));
  CHECK(plus_part_moment(p, Side::below, power_fn(1)) ==
        doctest::Approx(2 * (0.5 - g1) - 2 * (phi0 - phi1)).epsilon(1e-10));
  // E (|Z| - 1)_+ = 2 (phi(1) - G(1))
  CHECK(plus_part_moment(p, Side::above, power_fn(1)) ==
        doctest::Approx(2 * (phi1 - g1)).epsilon(1e-10));
}

TEST_CASE("plus-part spec validation") {
  CHECK_THROWS_AS(PlusPartSpec(Side::below, constant_fn(1), cap_fn(1)), PreconditionError);
  CHECK_THROWS_AS(PlusPartSpec(Side::below, power_fn(1),
                               ScalarFunction([](double t) { return 1 - t; })),
                  PreconditionError);
  const PlusPartSpec spec(Side::above, cap_fn(1), cap_fn(1));
  CHECK(spec.b()(0.5) == doctest::Approx(0.25));
}

TEST_CASE("reduction of part i to part iii") {
  const PlusPartSpec spec(Side::below, indicator_fn(0), power_fn(1));
  for (double p : {0.3, 2.0, 40.0}) {
    const Dof d = Dof::finite(p);
    CHECK(plus_ratio(d, spec) == doctest::Approx(conditional_below(d, power_fn(1))).epsilon(1e-9));
  }
}

TEST_CASE("certified decrease over p") {
  const GridSpec grid{0.3, 300, 8, Spacing::logarithmic};
  CHECK(certify_conditional(Prop1Part::i, cap_fn(0.5), grid).certified());
  CHECK(certify_conditional(Prop1Part::ii, indicator_fn(2), grid).certified());
  CHECK(certify_plus_ratio(PlusPartSpec(Side::above, indicator_fn(0.5), cap_fn(2)), grid)
            .certified());
  CHECK_THROWS_AS(certify_conditional(Prop1Part::iii, cap_fn(1), grid), PreconditionError);
  // A constant b gives equal values: ties are violations.
  CHECK_FALSE(certify_conditional(Prop1Part::i, constant_fn(1), grid).certified());
}
