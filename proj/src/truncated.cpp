#include "studentt/truncated.hpp"

#include <cmath>
#include <vector>

#include "studentt/error.hpp"

namespace studentt {

namespace {

std::vector<Dof> with_infinity(const GridSpec& grid) {
  std::vector<Dof> out;
  for (double p : grid.points()) out.push_back(Dof::finite(p));
  out.push_back(Dof::infinite());
  return out;
}

void require_nondecreasing(const ScalarFunction& f, double hi, const char* what) {
  if (!sampled_nondecreasing(f, 0.0, hi)) {
    throw PreconditionError(std::string(what) + " is not nondecreasing on samples");
  }
}

}  // namespace

PlusPartSpec::PlusPartSpec(Side side, ScalarFunction a, ScalarFunction r)
    : side_(side), a_(std::move(a)), r_(std::move(r)), b_(product(a_, r_)) {
  if (a_(0.0) != 0.0) throw PreconditionError("plus-part spec requires a(0) = 0");
  const double hi = side_ == Side::below ? 1.0 : 100.0;
  require_nondecreasing(r_, hi, "r");
  for (int i = 0; i < 1000; ++i) {
    if (a_(hi * i / 999.0) < 0.0) throw PreconditionError("a must be nonnegative");
    if (r_(hi * i / 999.0) < 0.0) throw PreconditionError("r must be nonnegative");
  }
}

double plus_part_moment(Dof p, Side side, const ScalarFunction& h,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  const QuadratureConfig rel = cfg.relative_only();
  if (side == Side::below) {
    std::vector<double> breaks;
    for (double t : h.breakpoints) breaks.push_back(1.0 - t);
    auto g = [&](double x) {
      const double v = h(1.0 - x);
      return v == 0.0 ? 0.0 : density(p, x) * v;
    };
    return 2.0 * integrate(g, 0.0, 1.0, rel, breaks).value;
  }
  // x = e^u on [1, inf).
  std::vector<double> breaks;
  for (double t : h.breakpoints) {
    if (t > 0.0) breaks.push_back(std::log1p(t));
  }
  auto g = [&](double u) {
    const double w = std::exp(log_density_at_log_x(p, u) + u);
    if (w == 0.0) return 0.0;
    return w * h(std::expm1(u));
  };
  return 2.0 * integrate_to_infinity(g, 0.0, rel, breaks).value;
}

double conditional_below(Dof p, const ScalarFunction& b, const QuadratureConfig& cfg) {
  const double mass = 1.0 - 2.0 * tail(p, 1.0).tail;
  return plus_part_moment(p, Side::below, b, cfg) / mass;
}

double conditional_above(Dof p, const ScalarFunction& b, const QuadratureConfig& cfg) {
  const double mass = 2.0 * tail(p, 1.0).tail;
  return plus_part_moment(p, Side::above, b, cfg) / mass;
}

double plus_ratio(Dof p, const PlusPartSpec& spec, const QuadratureConfig& cfg) {
  const double den = plus_part_moment(p, spec.side(), spec.a(), cfg);
  if (!(den > 0.0)) throw PreconditionError("plus_ratio: zero denominator");
  return plus_part_moment(p, spec.side(), spec.b(), cfg) / den;
}

MonotonicityReport certify_conditional(Prop1Part part, const ScalarFunction& b,
                                       const GridSpec& p_grid,
                                       const QuadratureConfig& cfg) {
  if (part != Prop1Part::i && part != Prop1Part::ii) {
    throw PreconditionError("certify_conditional handles parts i and ii");
  }
  const bool below = part == Prop1Part::i;
  require_nondecreasing(b, below ? 1.0 : 100.0, "b");
  std::vector<GridValue> values;
  for (Dof p : with_infinity(p_grid)) {
    const double v = below ? conditional_below(p, b, cfg) : conditional_above(p, b, cfg);
    values.push_back({p.value(), v});
  }
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.notes.push_back("b checked nondecreasing on 1000 samples only; "
                    "non-constancy is not verified beyond the sampled values");
  return r;
}

MonotonicityReport certify_plus_ratio(const PlusPartSpec& spec,
                                      const GridSpec& p_grid,
                                      const QuadratureConfig& cfg) {
  std::vector<GridValue> values;
  for (Dof p : with_infinity(p_grid)) values.push_back({p.value(), plus_ratio(p, spec, cfg)});
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.evaluations = 2 * values.size();
  r.notes.push_back("a, r validated on 1000 samples only");
  return r;
}

}  // namespace studentt
