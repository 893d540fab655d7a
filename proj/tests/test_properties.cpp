#include <doctest.h>

#include <cmath>
#include <numbers>

#include "studentt/chi.hpp"
#include "studentt/error.hpp"
#include "studentt/moments.hpp"
#include "studentt/special_functions.hpp"
#include "studentt/truncated.hpp"

using namespace studentt;
using std::numbers::pi;

TEST_CASE("special function identities on grids") {
  for (double x : GridSpec{0.5, 1e4, 60, Spacing::logarithmic}.points()) {
    CHECK(ln_gamma(x + 1) == doctest::Approx(ln_gamma(x) + std::log(x)).epsilon(1e-12));
  }
  for (double x : GridSpec{0.1, 100, 50, Spacing::logarithmic}.points()) {
    CAPTURE(x);
    CHECK(std::abs(digamma(x + 1) - digamma(x) - 1 / x) <= 1e-12);
    CHECK(std::abs(digamma(x) - digamma_gauss_oracle(x)) <= 1e-8);
  }
  for (double a : {0.5, 1.0, 2.5}) {
    for (double b : {0.5, 1.0, 2.5}) {
      CHECK(reg_inc_beta(a, b, 0) == 0.0);
      CHECK(reg_inc_beta(a, b, 1) == 1.0);
      for (double x : GridSpec{0.01, 0.99, 25}.points()) {
        CHECK(std::abs(reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1 - x) - 1) <= 1e-12);
      }
    }
  }
  CHECK(reg_inc_beta(0.5, 0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_tail(-1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-15));
  for (double x : GridSpec{-8, 8, 33}.points()) {
    CHECK(std::abs(normal_tail(x) + normal_tail(-x) - 1) <= 1e-14);
  }
}

TEST_CASE("student core examples") {
  CHECK(log_density(Dof::finite(1), 0) == doctest::Approx(-std::log(pi)).epsilon(1e-15));
  CHECK(log_density(Dof::infinite(), 2) ==
        doctest::Approx(-0.5 * std::log(2 * pi) - 2).epsilon(1e-15));
  CHECK(density(Dof::finite(2.5), -1.7) == density(Dof::finite(2.5), 1.7));
  CHECK(dlogdensity_dp(3, -1.2) == dlogdensity_dp(3, 1.2));
  const double h = 1e-5 * 2;
  const double fd = (log_density(Dof::finite(2 + h), 1) - log_density(Dof::finite(2 - h), 1)) / (2 * h);
  CHECK(std::abs(dlogdensity_dp(2, 1) - fd) <= 1e-6);
  CHECK(rho_prime(7, 0) == 0.0);
  CHECK(dtail_dp(1, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(dtail_dp(5, 3) < 0);
  CHECK(tail_logderiv_r(2, 1) < 0);
  CHECK(tail_logderiv_r(2, 2) < tail_logderiv_r(2, 1));
  for (double p : {0.5, 30.0, 1e4}) {
    for (double x : GridSpec{0, 60, 31}.points()) {
      const auto t = tail(Dof::finite(p), x);
      if (t.tail > 1e-300) CHECK(t.tail == doctest::Approx(std::exp(t.log_tail)).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalization including p = inf") {
  QuadratureConfig cfg;
  for (Dof p : {Dof::finite(0.5), Dof::finite(1), Dof::finite(2), Dof::finite(3),
                Dof::finite(10), Dof::finite(100), Dof::infinite()}) {
    CAPTURE(p.to_string());
    auto g = [&](double u) { return std::exp(log_density_at_log_x(p, u) + u); };
    const double breaks[] = {1, 2, 4, 8, 16, 50, 200};
    const double half =
        integrate(g, -40, 0, cfg).value + integrate(g, 0, 2000, cfg, breaks).value;
    CHECK(2 * half == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("continuity at p = inf") {
  for (double x : GridSpec{0, 5, 26}.points()) {
    CHECK(std::abs(density(Dof::finite(1e4), x) - density(Dof::infinite(), x)) <= 2e-3);
    CHECK(std::abs(tail(Dof::finite(1e4), x).tail - tail(Dof::infinite(), x).tail) <= 2e-3);
  }
}

TEST_CASE("monotonicity examples") {
  const std::vector<GridValue> dec = {{0, 1}, {1, 0.5}, {2, 0.1}};
  const auto rep = check_monotone(dec, Direction::strictly_decreasing);
  CHECK(rep.certified());
  CHECK(rep.min_margin == doctest::Approx(0.4));
  const std::vector<GridValue> tie = {{0, 1}, {1, 1}};
  const auto bad = check_monotone(tie, Direction::strictly_decreasing);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].index == 0);
  const std::vector<GridValue> inc = {{0, 1}, {1, 2}, {2, 3}};
  CHECK(check_monotone(inc, Direction::strictly_increasing).certified());

  CHECK(tail_ratio(Dof::finite(0.5), Dof::finite(7), 0) == 1.0);
  CHECK(tail_ratio(Dof::finite(1), Dof::finite(2), 3) < tail_ratio(Dof::finite(1), Dof::finite(2), 2));
  CHECK(certify_mtr(Dof::finite(0.5), Dof::finite(0.6), GridSpec{0, 10, 200}).certified());
  CHECK_THROWS_AS(certify_mtr(Dof::finite(2), Dof::finite(2), GridSpec{0, 10, 200}), OrderingError);
  CHECK(certify_sm(Dof::finite(3), Dof::infinite(), GridSpec{0.08, 8, 100}).certified());
  CHECK(stp2_minor(Dof::finite(1), Dof::infinite(), -2, -1) > 0);
  CHECK(density(Dof::infinite(), 0) / density(Dof::finite(1), 0) ==
        doctest::Approx(pi / std::sqrt(2 * pi)).epsilon(1e-14));
}

TEST_CASE("moment examples") {
  CHECK(generalized_moment(Dof::finite(4), power_measure(2)).value() ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(direct_moment_oracle(Dof::finite(0.7), constant_fn(1)).value() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(direct_moment_oracle(Dof::finite(4), power_fn(2)).value() ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(direct_moment_oracle(Dof::finite(1), power_fn(1)).is_infinite());
  CHECK(power_moment(Dof::finite(4), 2).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(power_moment(Dof::finite(1), 1).is_infinite());

  const auto p2 = finiteness_threshold({MeasureFamily::Kind::power, 2});
  CHECK(p2.p_b == 2);
  CHECK_FALSE(p2.boundary_included);
  CHECK(in_finiteness_set(Dof::finite(0.01), {MeasureFamily::Kind::indicator, 1}));

  const GridSpec grid{3, 100, 12, Spacing::logarithmic};
  CHECK(certify_moment_monotone(indicator_measure(1), GridSpec{0.5, 50, 12, Spacing::logarithmic})
            .certified());
  CHECK_FALSE(certify_moment_monotone(atoms_measure({{0, 1}}), grid).certified());
  CHECK_FALSE(certify_ratio_monotone(power_measure(1), scaled(power_measure(1), 2),
                                     [](double) { return 2.0; }, grid)
                  .certified());
  CHECK(certify_ratio_monotone(power_measure(0.5), power_measure(1.5),
                               [](double x) { return 3 * x; },
                               GridSpec{2, 50, 12, Spacing::logarithmic})
            .certified());
  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(generalized_moment(Dof::finite(s + 1), power_measure(s)).value() > 0);
    CHECK(generalized_moment(Dof::finite(s + 1), power_log_measure(s)).value() > 0);
  }
  // The last finite-p value sits above the normal moment.
  const std::vector<Dof> ps = {Dof::finite(3), Dof::finite(300), Dof::infinite()};
  const auto rep = certify_power_moment_monotone(2, ps);
  CHECK(rep.certified());
}

TEST_CASE("truncated examples") {
  for (Dof p : {Dof::finite(0.4), Dof::finite(3), Dof::infinite()}) {
    CHECK(conditional_below(p, constant_fn(1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(conditional_above(p, constant_fn(1)) == doctest::Approx(1.0).epsilon(1e-12));
    const PlusPartSpec same(Side::below, power_fn(1), constant_fn(1));
    CHECK(plus_ratio(p, same) == doctest::Approx(1.0).epsilon(1e-12));
    const double g1 = tail(p, 1).tail;
    CHECK(std::abs((1 - 2 * g1) + 2 * g1 - 1) <= 1e-14);
  }
  CHECK(conditional_below(Dof::finite(1), power_fn(1)) >
        conditional_below(Dof::infinite(), power_fn(1)));
  const std::vector<Dof> ps = {Dof::finite(0.5), Dof::finite(1), Dof::finite(2), Dof::finite(5),
                               Dof::infinite()};
  double prev_cap = INFINITY, prev_iii = INFINITY, prev_iv = INFINITY;
  const PlusPartSpec iii(Side::below, power_fn(1), power_fn(1));
  const PlusPartSpec iv(Side::above, cap_fn(1), cap_fn(1));
  for (Dof p : ps) {
    const double c = conditional_above(p, cap_fn(1));
    const double r3 = plus_ratio(p, iii);
    const double r4 = plus_ratio(p, iv);
    CHECK(c < prev_cap);
    CHECK(r3 < prev_iii);
    CHECK(r4 < prev_iv);
    prev_cap = c;
    prev_iii = r3;
    prev_iv = r4;
  }
  const GridSpec grid{0.3, 100, 12, Spacing::logarithmic};
  CHECK(certify_conditional(Prop1Part::i, power_fn(1), grid).certified());
  CHECK_FALSE(certify_plus_ratio(PlusPartSpec(Side::below, power_fn(1), constant_fn(2)), grid)
                  .certified());
}

TEST_CASE("chi examples") {
  CHECK(chi_density(3.5, 0) == 0.0);
  CHECK(z_moment(ChiDof::finite(4), constant_fn(2.5)) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(z_moment(ChiDof::infinite(), indicator_fn(0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(z_moment(ChiDof::finite(1), indicator_fn(0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z_ratio(ChiDof::finite(3), abs_cap_fn(1), constant_fn(1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (double t : {-1.0, 0.0, 1.0}) {
    CHECK(std::abs(z_moment(ChiDof::finite(1e4), indicator_fn(t)) -
                   z_moment(ChiDof::infinite(), indicator_fn(t))) <= 5e-3);
  }
  const std::vector<ChiDof> ps = {ChiDof::finite(1), ChiDof::finite(2), ChiDof::finite(5),
                                  ChiDof::finite(20), ChiDof::infinite()};
  double prev_a = INFINITY, prev_b = INFINITY;
  for (ChiDof p : ps) {
    const double a = z_ratio(p, indicator_fn(0), cap_fn(1));
    const double b = z_ratio(p, abs_cap_fn(1), tanh_step_fn());
    CHECK(a < prev_a);
    CHECK(b < prev_b);
    prev_a = a;
    prev_b = b;
  }
  CHECK(certify_z_moment(indicator_fn(0.5), GridSpec{1, 200, 12, Spacing::logarithmic}).certified());
  CHECK_FALSE(certify_z_moment(constant_fn(1), GridSpec{1, 200, 12, Spacing::logarithmic}).certified());
}
