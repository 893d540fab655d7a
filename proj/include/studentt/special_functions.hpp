#pragma once

#include "studentt/quadrature.hpp"

namespace studentt {

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double ln_beta(double a, double b);

/// Digamma psi(x) = Gamma'(x) / Gamma(x) for x > 0.
///
/// Shifts the argument upward with psi(x) = psi(x + 1) - 1/x until x >= 10,
/// then sums the Bernoulli asymptotic series through the x^-16 term.
double digamma(double x);

/// psi(x) from Gauss's integral
///   psi(x) = int_0^inf ( e^-t / t - e^-xt / (1 - e^-t) ) dt,
/// evaluated by adaptive quadrature. Slow; kept as an independent check on
/// digamma().
double digamma_gauss_oracle(double x, const QuadratureConfig& cfg = {});

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// ln I_x(a, b) with y = 1 - x supplied separately, so callers that know the
// complement exactly (Student tails) avoid forming 1 - x.
double log_reg_inc_beta(double a, double b, double x, double y);

// Same, with ln x given instead of x; usable when x underflows.
double log_reg_inc_beta_small(double a, double b, double log_x);

// P(Z > x) for standard normal Z, via erfc.
double normal_tail(double x);

// ln P(Z > x); switches to a Mills-ratio continued fraction for large x.
double log_normal_tail(double x);

}  // namespace studentt
