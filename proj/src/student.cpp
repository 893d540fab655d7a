#include "studentt/student.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "studentt/error.hpp"
#include "studentt/special_functions.hpp"

namespace studentt {

namespace {

constexpr double kLogHalf = -std::numbers::ln2;
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Above this ln x the leading-order forms are exact in double precision.
constexpr double kAsymptoticLogX = 300.0;

void require_finite_x(double x) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
}

void require_finite_p(double p) {
  if (!std::isfinite(p) || !(p > 0.0)) {
    throw DomainError("degrees of freedom must be finite and > 0");
  }
}

// ln of Gamma((p+1)/2) / (sqrt(pi p) Gamma(p/2)).
double log_norm(double p) {
  return ln_gamma(0.5 * (p + 1.0)) - ln_gamma(0.5 * p) -
         0.5 * std::log(std::numbers::pi * p);
}

// ln G_p(e^u) through ln z = ln p - 2u - ln(1 + p e^{-2u}), for large u.
double log_upper_tail_at_log_x(double p, double u) {
  const double log_z = std::log(p) - 2.0 * u - std::log1p(p * std::exp(-2.0 * u));
  return kLogHalf + log_reg_inc_beta_small(0.5 * p, 0.5, log_z);
}

// ln G_p(ax) for finite p and ax >= 0.
double log_upper_tail(double p, double ax) {
  if (ax == 0.0) return kLogHalf;
  if (ax > 1e100) return log_upper_tail_at_log_x(p, std::log(ax));
  const double x2 = ax * ax;
  const double z = p / (p + x2);
  const double y = x2 / (p + x2);
  return kLogHalf + log_reg_inc_beta(0.5 * p, 0.5, z, y);
}

// Parts of d ln f_p(x)/dp: the p-only constant and the x-dependent rest.
double rho_constant(double p) {
  return 0.5 * digamma(0.5 * (p + 1.0)) - 0.5 * digamma(0.5 * p) -
         0.5 / p;
}

double rho_variable(double p, double x) {
  const double x2 = x * x;
  return -0.5 * std::log1p(x2 / p) + (p + 1.0) * x2 / (2.0 * p * (p + x2));
}

double rho_variable_at_log_x(double p, double u) {
  if (u < kAsymptoticLogX) return rho_variable(p, std::exp(u));
  const double w = p * std::exp(-2.0 * u);
  return -0.5 * (2.0 * u - std::log(p) + std::log1p(w)) +
         (p + 1.0) / (2.0 * p) / (1.0 + w);
}

}  // namespace

Dof Dof::finite(double p) {
  require_finite_p(p);
  return Dof(p);
}

std::string Dof::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

double log_density(Dof p, double x) {
  require_finite_x(x);
  if (p.is_infinite()) return -0.5 * x * x - kLogSqrt2Pi;
  const double v = p.value();
  return log_norm(v) - 0.5 * (v + 1.0) * std::log1p(x * x / v);
}

double density(Dof p, double x) { return std::exp(log_density(p, x)); }

double log_density_at_log_x(Dof p, double u) {
  if (std::isnan(u)) throw DomainError("log x is NaN");
  if (p.is_infinite()) {
    if (u > 400.0) return -std::numeric_limits<double>::infinity();
    return -0.5 * std::exp(2.0 * u) - kLogSqrt2Pi;
  }
  const double v = p.value();
  if (u < kAsymptoticLogX) return log_density(p, std::exp(u));
  return log_norm(v) -
         0.5 * (v + 1.0) *
             (2.0 * u - std::log(v) + std::log1p(v * std::exp(-2.0 * u)));
}

double log_tail_at_log_x(Dof p, double u) {
  if (std::isnan(u)) throw DomainError("log x is NaN");
  if (p.is_infinite()) {
    if (u > 400.0) return -std::numeric_limits<double>::infinity();
    return log_normal_tail(std::exp(u));
  }
  const double v = p.value();
  if (u < kAsymptoticLogX) return log_upper_tail(v, std::exp(u));
  return log_upper_tail_at_log_x(v, u);
}

TailEvaluation tail(Dof p, double x) {
  require_finite_x(x);
  TailEvaluation out;
  out.x = x;
  out.p = p;
  if (p.is_infinite()) {
    out.tail = normal_tail(x);
    out.log_tail = log_normal_tail(x);
    return out;
  }
  const double upper = log_upper_tail(p.value(), std::abs(x));
  if (x >= 0.0) {
    out.log_tail = upper;
    out.tail = std::exp(upper);
  } else {
    const double g = std::exp(upper);
    out.tail = 1.0 - g;
    out.log_tail = std::log1p(-g);
  }
  return out;
}

double tail_quadrature_oracle(Dof p, double x, const QuadratureConfig& cfg) {
  cfg.validate();
  require_finite_x(x);
  const QuadratureConfig rel = cfg.relative_only();
  auto f = [p](double t) { return density(p, t); };
  if (x < 0.0) {
    return integrate(f, x, -x, rel).value + tail_quadrature_oracle(p, -x, cfg);
  }

  double total = 0.0;
  double lo = x;
  if (x < 1.0) {
    total += integrate(f, x, 1.0, rel).value;
    lo = 1.0;
  }

  auto in_log_x = [p](double u) {
    return std::exp(log_density_at_log_x(p, u) + u);
  };
  // ln of the tail bound at X = e^u.
  auto log_bound = [p](double u) {
    if (p.is_infinite()) {
      const double big = std::exp(u);
      return -0.5 * big * big - kLogSqrt2Pi - u;
    }
    const double v = p.value();
    return log_norm(v) + 0.5 * (v + 1.0) * std::log(v) - v * u - std::log(v);
  };

  constexpr int kMaxPanels = 10000;
  double u = std::log(lo);
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const double next = u + 1.0;
    total += integrate(in_log_x, u, next, rel).value;
    u = next;
    const double remainder = std::exp(log_bound(u));
    if (remainder <= cfg.tail_cut_tol * total) return total + remainder;
  }
  throw QuadratureError("tail_quadrature_oracle: tail cut not reached");
}

double dlogdensity_dp(double p, double x) {
  require_finite_p(p);
  require_finite_x(x);
  return rho_constant(p) + rho_variable(p, x);
}

double rho_prime(double p, double x) {
  require_finite_p(p);
  require_finite_x(x);
  const double s = p + x * x;
  return x * (1.0 - x * x) / (s * s);
}

double dtail_dp(double p, double x, const QuadratureConfig& cfg) {
  require_finite_p(p);
  require_finite_x(x);
  cfg.validate();
  if (x < 0.0) return -dtail_dp(p, -x, cfg);

  const Dof dof = Dof::finite(p);
  const double k = rho_constant(p);
  const double scale = tail(dof, x).tail;
  const QuadratureConfig piece =
      cfg.with_abs_tol(std::max(std::numeric_limits<double>::min(),
                                std::min(cfg.abs_tol, cfg.rel_tol * scale)));

  double total = 0.0;
  double lo = x;
  if (x < 1.0) {
    auto near = [&](double t) {
      return density(dof, t) * (k + rho_variable(p, t));
    };
    total += integrate(near, x, 1.0, piece).value;
    lo = 1.0;
  }
  auto far = [&](double u) {
    const double w = std::exp(log_density_at_log_x(dof, u) + u);
    return w == 0.0 ? 0.0 : w * (k + rho_variable_at_log_x(p, u));
  };
  total += integrate_to_infinity(far, std::log(lo), piece).value;
  return total;
}

double tail_logderiv_r(double p, double x, const QuadratureConfig& cfg) {
  if (!(x >= 0.0)) throw DomainError("tail_logderiv_r: x must be >= 0");
  return dtail_dp(p, x, cfg) / tail(Dof::finite(p), x).tail;
}

double lemma1_lhs(double p) {
  require_finite_p(p);
  return -p * digamma(0.5 * p) + p * digamma(0.5 * (p + 1.0)) - 1.0;
}

double lemma1_rhs(double p, const QuadratureConfig& cfg) {
  require_finite_p(p);
  auto integrand = [p](double t) {
    const double s = 1.0 + t;
    return 2.0 * std::exp(p * std::log(t)) / (s * s);
  };
  return integrate(integrand, 0.0, 1.0, cfg.relative_only()).value;
}

}  // namespace studentt
