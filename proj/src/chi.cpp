#include "studentt/chi.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <vector>

#include "studentt/error.hpp"
#include "studentt/special_functions.hpp"

namespace studentt {

namespace {

void require_chi_dof(double p) {
  if (!std::isfinite(p) || !(p >= 1.0)) {
    throw DomainError("chi degrees of freedom must be finite and >= 1");
  }
}

// Half-width of the integration window: exp(-w^2/2) stays below the cut.
double window(const QuadratureConfig& cfg) {
  return std::sqrt(2.0 * std::log(1.0 / cfg.tail_cut_tol)) + 4.0;
}

std::vector<ChiDof> with_infinity(const GridSpec& grid) {
  std::vector<ChiDof> out;
  for (double p : grid.points()) out.push_back(ChiDof::finite(p));
  out.push_back(ChiDof::infinite());
  return out;
}

}  // namespace

ChiDof ChiDof::finite(double p) {
  require_chi_dof(p);
  return ChiDof(p);
}

std::string ChiDof::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

double chi_density(double p, double x) {
  require_chi_dof(p);
  if (!std::isfinite(x)) throw DomainError("chi_density: x must be finite");
  if (x < 0.0) return 0.0;
  if (x == 0.0) return p == 1.0 ? std::sqrt(2.0 / std::numbers::pi) : 0.0;
  return std::exp((1.0 - 0.5 * p) * std::numbers::ln2 + (p - 1.0) * std::log(x) -
                  0.5 * x * x - ln_gamma(0.5 * p));
}

double chi_moment(double p, const ScalarFunction& g, const QuadratureConfig& cfg) {
  require_chi_dof(p);
  cfg.validate();
  const double mode = std::sqrt(p - 1.0);
  const double w = window(cfg);
  const double lo = std::max(0.0, mode - w);
  const double hi = mode + w;
  const double log_norm = (1.0 - 0.5 * p) * std::numbers::ln2 - ln_gamma(0.5 * p);
  auto f = [&](double x) {
    const double v = g(x);
    if (v == 0.0) return 0.0;
    return v * std::exp(log_norm + (p - 1.0) * std::log(x) - 0.5 * x * x);
  };
  return integrate(f, lo, hi, cfg.relative_only(), g.breakpoints).value;
}

double z_moment(ChiDof p, const ScalarFunction& b, const QuadratureConfig& cfg) {
  cfg.validate();
  const double w = window(cfg);
  if (p.is_infinite()) {
    auto f = [&](double z) {
      const double v = b(z);
      return v == 0.0 ? 0.0 : v * std::exp(-z * z) / std::sqrt(std::numbers::pi);
    };
    return integrate(f, -w, w, cfg.relative_only(), b.breakpoints).value;
  }
  const double shift = std::sqrt(p.value() - 1.0);
  std::vector<double> breaks;
  for (double t : b.breakpoints) breaks.push_back(t + shift);
  const ScalarFunction shifted([&](double x) { return b(x - shift); }, breaks);
  return chi_moment(p.value(), shifted, cfg);
}

double z_ratio(ChiDof p, const ScalarFunction& a, const ScalarFunction& r,
               const QuadratureConfig& cfg) {
  const double den = z_moment(p, a, cfg);
  if (!(den > 0.0)) throw PreconditionError("z_ratio: zero denominator");
  return z_moment(p, product(a, r), cfg) / den;
}

MonotonicityReport certify_z_moment(const ScalarFunction& b, const GridSpec& p_grid,
                                    const QuadratureConfig& cfg) {
  if (!sampled_nondecreasing(b, -10.0, 10.0)) {
    throw PreconditionError("b is not nondecreasing on samples");
  }
  std::vector<GridValue> values;
  for (ChiDof p : with_infinity(p_grid)) values.push_back({p.value(), z_moment(p, b, cfg)});
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.notes.push_back("b checked nondecreasing on 1000 samples of [-10, 10] only");
  return r;
}

MonotonicityReport certify_z_ratio(const ScalarFunction& a, const ScalarFunction& r,
                                   const GridSpec& p_grid, const QuadratureConfig& cfg) {
  if (!sampled_nondecreasing(r, -10.0, 10.0)) {
    throw PreconditionError("r is not nondecreasing on samples");
  }
  std::vector<GridValue> values;
  for (ChiDof p : with_infinity(p_grid)) values.push_back({p.value(), z_ratio(p, a, r, cfg)});
  auto rep = check_monotone(values, Direction::strictly_decreasing);
  rep.evaluations = 2 * values.size();
  rep.notes.push_back("r checked nondecreasing on 1000 samples of [-10, 10] only");
  return rep;
}

}  // namespace studentt
