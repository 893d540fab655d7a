#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "studentt/quadrature.hpp"

namespace studentt {

/// Degrees of freedom of Student's t: a finite positive real, or the
/// distinguished infinite value whose members are the standard normal
/// density and tail.
class Dof {
 public:
  // Throws DomainError unless p is finite and > 0.
  static Dof finite(double p);
  static Dof infinite() { return Dof(std::numeric_limits<double>::infinity()); }

  [[nodiscard]] bool is_infinite() const { return std::isinf(value_); }
  [[nodiscard]] bool is_finite() const { return !is_infinite(); }

  // The finite value; +inf for the infinite member (usable as an abscissa).
  [[nodiscard]] double value() const { return value_; }

  // "inf" or the shortest round-trip decimal of the value.
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const Dof&, const Dof&) = default;

 private:
  explicit Dof(double v) : value_(v) {}
  double value_;
};

struct TailEvaluation {
  double x = 0.0;
  Dof p = Dof::infinite();
  double tail = 0.0;
  double log_tail = 0.0;
};

double density(Dof p, double x);
double log_density(Dof p, double x);

/// G_p(x) = P(T_p > x).
///
/// Finite p, x >= 0: G_p(x) = I_z(p/2, 1/2) / 2 with z = p / (p + x^2) and
/// 1 - z = x^2 / (p + x^2) formed directly; the logarithm is taken inside the
/// incomplete beta so log_tail stays finite far below 1e-300. Negative x goes
/// through G_p(x) = 1 - G_p(-x). The infinite member uses the normal tail.
TailEvaluation tail(Dof p, double x);

// ln f_p(e^u) and ln G_p(e^u), finite for any real u. These let integrals
// over x in [1, inf) run in the log variable without overflow.
double log_density_at_log_x(Dof p, double u);
double log_tail_at_log_x(Dof p, double u);

// G_p(x) by adaptive quadrature of the density, independent of the
// incomplete-beta route. The infinite domain is cut where the bound
// G_p(X) <= c_p p^{(p+1)/2} X^{-p} / p (Mills' bound phi(X)/X for the normal)
// falls below tail_cut_tol relative to the accumulated integral; the bound,
// which is also the leading asymptotic term, is added for the remainder.
double tail_quadrature_oracle(Dof p, double x, const QuadratureConfig& cfg = {});

// d ln f_p(x) / dp for finite p.
double dlogdensity_dp(double p, double x);

// d^2 ln f_p(x) / dp dx = x (1 - x^2) / (p + x^2)^2.
double rho_prime(double p, double x);

// dG_p(x)/dp = int_x^inf f_p(u) d ln f_p(u)/dp du, by quadrature.
double dtail_dp(double p, double x, const QuadratureConfig& cfg = {});

// r_p(x) = d ln G_p(x) / dp for x >= 0.
double tail_logderiv_r(double p, double x, const QuadratureConfig& cfg = {});

// -p psi(p/2) + p psi((p+1)/2) - 1, which equals 2p d ln f_p(0)/dp.
double lemma1_lhs(double p);

// int_0^1 2 t^p / (1 + t)^2 dt by quadrature.
double lemma1_rhs(double p, const QuadratureConfig& cfg = {});

}  // namespace studentt
