#pragma once

#include "studentt/functions.hpp"
#include "studentt/monotonicity.hpp"
#include "studentt/quadrature.hpp"
#include "studentt/student.hpp"

namespace studentt {

// Which plus part of |T_p| around the threshold 1 is used.
//   below: (1 - |T_p|)_+     above: (|T_p| - 1)_+
enum class Side { below, above };

/// a (bounded, nonnegative, a(0) = 0) and r (bounded, nonnegative,
/// nondecreasing); the numerator function is b = r * a. Construction checks
/// a(0) == 0 exactly and samples a >= 0 and r nondecreasing on 1000 points
/// (over [0, 1] below, [0, 100] above); a black-box function cannot be
/// checked beyond that.
class PlusPartSpec {
 public:
  PlusPartSpec(Side side, ScalarFunction a, ScalarFunction r);

  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] const ScalarFunction& a() const { return a_; }
  [[nodiscard]] const ScalarFunction& r() const { return r_; }
  [[nodiscard]] const ScalarFunction& b() const { return b_; }

 private:
  Side side_;
  ScalarFunction a_;
  ScalarFunction r_;
  ScalarFunction b_;
};

// E( b(1 - |T_p|) | |T_p| < 1 ).
double conditional_below(Dof p, const ScalarFunction& b,
                         const QuadratureConfig& cfg = {});

// E( b(|T_p| - 1) | |T_p| > 1 ).
double conditional_above(Dof p, const ScalarFunction& b,
                         const QuadratureConfig& cfg = {});

// 2 int f_p(x) h(1 - x) dx over [0, 1] (below) or 2 int f_p(x) h(x - 1) dx
// over [1, inf) (above), i.e. E h(plus part) restricted to the open side.
double plus_part_moment(Dof p, Side side, const ScalarFunction& h,
                        const QuadratureConfig& cfg = {});

// E b(plus part) / E a(plus part). Throws PreconditionError on a zero
// denominator.
double plus_ratio(Dof p, const PlusPartSpec& spec,
                  const QuadratureConfig& cfg = {});

enum class Prop1Part { i, ii, iii, iv };

// Parts i and ii: the conditional expectation with b on the side given by
// the part, over p_grid followed by p = inf; claimed strictly decreasing.
MonotonicityReport certify_conditional(Prop1Part part, const ScalarFunction& b,
                                       const GridSpec& p_grid,
                                       const QuadratureConfig& cfg = {});

// Parts iii and iv: plus_ratio over p_grid followed by p = inf.
MonotonicityReport certify_plus_ratio(const PlusPartSpec& spec,
                                      const GridSpec& p_grid,
                                      const QuadratureConfig& cfg = {});

}  // namespace studentt
