#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "studentt/functions.hpp"
#include "studentt/monotonicity.hpp"
#include "studentt/quadrature.hpp"

namespace studentt {

/// Degrees of freedom for the chi family: a finite value >= 1, or infinity.
class ChiDof {
 public:
  static ChiDof finite(double p);
  static ChiDof infinite() { return ChiDof(std::numeric_limits<double>::infinity()); }

  [[nodiscard]] bool is_infinite() const { return std::isinf(value_); }
  [[nodiscard]] double value() const { return value_; }
  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const ChiDof&, const ChiDof&) = default;

 private:
  explicit ChiDof(double v) : value_(v) {}
  double value_;
};

// Density of X_p >= 0 with X_p^2 ~ chi^2_p: 2^{1-p/2} x^{p-1} e^{-x^2/2} / Gamma(p/2).
double chi_density(double p, double x);

// E g(X_p) for finite p, integrating over a window around the mode sqrt(p-1)
// wide enough that the excluded mass is below cfg.tail_cut_tol.
double chi_moment(double p, const ScalarFunction& g, const QuadratureConfig& cfg = {});

/// E b(Z_p) with Z_p = X_p - sqrt(p - 1). The shift is applied inside the
/// integrand in the chi variable. For p = inf, Z is centered normal with
/// variance 1/2.
double z_moment(ChiDof p, const ScalarFunction& b, const QuadratureConfig& cfg = {});

// E (r a)(Z_p) / E a(Z_p). Throws PreconditionError on a zero denominator.
double z_ratio(ChiDof p, const ScalarFunction& a, const ScalarFunction& r,
               const QuadratureConfig& cfg = {});

// E b(Z_p) over p_grid (inside [1, inf)) followed by p = inf.
MonotonicityReport certify_z_moment(const ScalarFunction& b, const GridSpec& p_grid,
                                    const QuadratureConfig& cfg = {});

// z_ratio over p_grid followed by p = inf. r is sample-checked nondecreasing
// on [-10, 10].
MonotonicityReport certify_z_ratio(const ScalarFunction& a, const ScalarFunction& r,
                                   const GridSpec& p_grid,
                                   const QuadratureConfig& cfg = {});

}  // namespace studentt
