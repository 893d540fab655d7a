#pragma once

#include <functional>
#include <span>
#include <vector>

namespace studentt {

/// Tolerances shared by every quadrature-backed routine.
///
/// `tail_cut_tol` is the mass threshold below which an infinite domain may be
/// truncated (the truncated remainder is replaced by its leading asymptotic
/// term where one is known).
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  double tail_cut_tol = 1e-14;

  // Throws DomainError when any field is out of range.
  void validate() const;

  // Copy with the absolute floor removed, for integrals whose value may be
  // arbitrarily small but whose integrand has a fixed sign.
  [[nodiscard]] QuadratureConfig relative_only() const;
  [[nodiscard]] QuadratureConfig with_abs_tol(double abs_tol) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Interior breakpoints
// (jumps, kinks) seed the initial partition. Stops once the summed error
// estimate is <= max(abs_tol, rel_tol * |I|); throws QuadratureError if
// max_subdivisions is exhausted first.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg,
                           std::span<const double> breakpoints = {});

// Integral over [a, +inf) through x = a + t / (1 - t).
QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureConfig& cfg,
                                       std::span<const double> breakpoints = {});

// Integral over (-inf, b] through x = b - t / (1 - t).
QuadratureResult integrate_from_minus_infinity(
    const Integrand& f, double b, const QuadratureConfig& cfg,
    std::span<const double> breakpoints = {});

// Fixed n-point Gauss-Legendre rule on [a, b] (n in 1..64), computed by
// Newton iteration on the Legendre recurrence.
double gauss_legendre(const Integrand& f, double a, double b, int n);

}  // namespace studentt
