#include <doctest.h>

#include <cmath>
#include <numbers>

#include "studentt/error.hpp"
#include "studentt/quadrature.hpp"
#include "studentt/special_functions.hpp"
#include "studentt/student.hpp"

using namespace studentt;
using std::numbers::pi;

namespace {

double cauchy_tail(double x) { return 0.5 - std::atan(x) / pi; }
double t2_tail(double x) { return 0.5 * (1 - x / std::sqrt(2 + x * x)); }

}  // namespace

TEST_CASE("Dof") {
  CHECK_THROWS_AS(Dof::finite(0.0), DomainError);
  CHECK_THROWS_AS(Dof::finite(-2.0), DomainError);
  CHECK_THROWS_AS(Dof::finite(INFINITY), DomainError);
  CHECK_THROWS_AS(Dof::finite(NAN), DomainError);
  CHECK(Dof::finite(3) < Dof::infinite());
  CHECK(Dof::infinite().to_string() == "inf");
  CHECK(Dof::finite(0.1).to_string() == "0.10000000000000001");
}

TEST_CASE("density closed forms") {
  CHECK(density(Dof::finite(1), 0) == doctest::Approx(1 / pi).epsilon(1e-15));
  CHECK(log_density(Dof::finite(3), 0) ==
        doctest::Approx(std::log(2 / (pi * std::sqrt(3.0)))).epsilon(1e-15));
  CHECK(density(Dof::infinite(), 0) == doctest::Approx(1 / std::sqrt(2 * pi)).epsilon(1e-15));
  CHECK(density(Dof::finite(1), 2) == doctest::Approx(1 / (5 * pi)).epsilon(1e-15));
  CHECK(density(Dof::infinite(), 0) / density(Dof::finite(1), 0) ==
        doctest::Approx(1.2533141373155).epsilon(1e-12));
  CHECK_THROWS_AS(density(Dof::finite(1), INFINITY), DomainError);
}

TEST_CASE("density integrates to one") {
  QuadratureConfig cfg;
  for (double p : {1.0, 4.5, 200.0}) {
    CAPTURE(p);
    const Dof d = Dof::finite(p);
    const double half = integrate_to_infinity([&](double x) { return density(d, x); }, 0, cfg).value;
    CHECK(2 * half == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Heavy tails in the log variable: 2 int f(e^u) e^u du.
  for (double p : {0.1, 0.3}) {
    CAPTURE(p);
    const Dof d = Dof::finite(p);
    auto g = [&](double u) { return u > 700 ? std::exp(log_density_at_log_x(d, u) + u)
                                            : density(d, std::exp(u)) * std::exp(u); };
    const double half = integrate(g, -40, 0, cfg).value + integrate(g, 0, 7000, cfg).value;
    CHECK(2 * half == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("tail closed forms") {
  CHECK(tail(Dof::finite(1), 1).tail == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tail(Dof::finite(2), 3).tail ==
        doctest::Approx(0.5 * (1 - 3 / std::sqrt(11.0))).epsilon(1e-14));
  for (double x : {-7.0, -1.0, 0.0, 0.4, 2.0, 30.0, 1e6}) {
    CAPTURE(x);
    CHECK(tail(Dof::finite(1), x).tail == doctest::Approx(cauchy_tail(x)).epsilon(1e-13));
    CHECK(tail(Dof::finite(2), x).tail == doctest::Approx(t2_tail(x)).epsilon(1e-12));
    CHECK(tail(Dof::infinite(), x).tail == doctest::Approx(normal_tail(x)).epsilon(1e-15));
  }
  CHECK(tail(Dof::finite(5), 0).tail == 0.5);
}

TEST_CASE("tail symmetry and log consistency") {
  for (double p : {0.3, 1.0, 7.0, 1e4}) {
    for (double x : {0.1, 1.0, 4.0, 40.0}) {
      CAPTURE(p);
      CAPTURE(x);
      const auto up = tail(Dof::finite(p), x);
      const auto down = tail(Dof::finite(p), -x);
      CHECK(up.tail + down.tail == doctest::Approx(1.0).epsilon(1e-14));
      if (up.tail > 1e-300) {
        CHECK(std::log(up.tail) == doctest::Approx(up.log_tail).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("tail derivative in x is minus the density") {
  for (double p : {0.5, 3.0, 60.0}) {
    for (double x : {0.2, 1.3, 5.0}) {
      const Dof d = Dof::finite(p);
      const double h = 1e-5;
      const double fd = (tail(d, x + h).tail - tail(d, x - h).tail) / (2 * h);
      CHECK(-fd == doctest::Approx(density(d, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("tail against the quadrature oracle") {
  QuadratureConfig cfg;
  for (double p : {0.5, 1.0, 2.5, 30.0}) {
    for (double x : {0.0, 0.7, 3.0, 11.0}) {
      CAPTURE(p);
      CAPTURE(x);
      const Dof d = Dof::finite(p);
      CHECK(tail_quadrature_oracle(d, x, cfg) == doctest::Approx(tail(d, x).tail).epsilon(1e-9));
    }
  }
}

TEST_CASE("log-x evaluation reaches far tails") {
  const Dof d = Dof::finite(3);
  CHECK(log_tail_at_log_x(d, std::log(50.0)) ==
        doctest::Approx(tail(d, 50.0).log_tail).epsilon(1e-13));
  // G_p(x) ~ C_p p^{(p+1)/2} x^{-p} / p for large x.
  const double u = 500.0;
  const double log_c = ln_gamma(2.0) - ln_gamma(1.5) - 0.5 * std::log(pi * 3);
  const double expected = log_c + 2.0 * std::log(3.0) - 3.0 * u - std::log(3.0);
  CHECK(log_tail_at_log_x(d, u) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(log_density_at_log_x(d, u) ==
        doctest::Approx(log_c + 2.0 * std::log(3.0) - 4.0 * u).epsilon(1e-13));
  CHECK(std::isfinite(log_tail_at_log_x(d, 260.0)));
}

TEST_CASE("derivatives in p") {
  CHECK(dlogdensity_dp(1, 0) == doctest::Approx(std::numbers::ln2 - 0.5).epsilon(1e-14));
  CHECK(rho_prime(1, 2) == doctest::Approx(-0.24).epsilon(1e-15));
  CHECK(rho_prime(4, 1) == 0.0);
  for (double p : {0.4, 2.0, 15.0}) {
    for (double x : {0.0, 0.5, 2.0, 9.0}) {
      CAPTURE(p);
      CAPTURE(x);
      const double h = std::max(1e-5, 1e-5 * p);
      const double fd =
          (log_density(Dof::finite(p + h), x) - log_density(Dof::finite(p - h), x)) / (2 * h);
      CHECK(dlogdensity_dp(p, x) == doctest::Approx(fd).epsilon(1e-7));
      const double gfd =
          (tail(Dof::finite(p + h), x).tail - tail(Dof::finite(p - h), x).tail) / (2 * h);
      CHECK(std::abs(dtail_dp(p, x) - gfd) <= 1e-6 * std::abs(gfd) + 1e-12);
    }
  }
  CHECK(dtail_dp(3, -1.2) == doctest::Approx(-dtail_dp(3, 1.2)).epsilon(1e-14));
  CHECK(std::abs(tail_logderiv_r(2, 0)) < 1e-10);
  CHECK_THROWS_AS(tail_logderiv_r(2, -1), DomainError);
}

TEST_CASE("lemma sides") {
  const double anchor = 2 * std::numbers::ln2 - 1;
  CHECK(lemma1_lhs(1) == doctest::Approx(anchor).epsilon(1e-13));
  CHECK(lemma1_rhs(1) == doctest::Approx(anchor).epsilon(1e-12));
  // 2 p d ln f_p(0)/dp
  for (double p : {0.05, 3.0, 400.0}) {
    CHECK(lemma1_lhs(p) == doctest::Approx(2 * p * dlogdensity_dp(p, 0)).epsilon(1e-12));
    CHECK(lemma1_lhs(p) > 0);
  }
}
