#include "studentt/moments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "studentt/error.hpp"
#include "studentt/special_functions.hpp"

namespace studentt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest ln x at which a plain x-space callable is still evaluated.
constexpr double kMaxLogX = 700.0;

std::string describe(std::string_view name, double v) {
  std::ostringstream out;
  out.precision(17);
  out << name << ':' << v;
  return out.str();
}

void require_positive(double v, std::string_view what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(what) + ": parameter must be finite and > 0");
  }
}

// ln(e^{2/s} + e^u) without overflow.
double log_shifted(double s, double u) {
  const double c = 2.0 / s;
  return u > c ? u + std::log1p(std::exp(c - u)) : c + std::log1p(std::exp(u - c));
}

// Integral of g over [lo, hi] where either end may be infinite; the range is
// split at `mid` so each infinite piece gets its own map.
double integrate_range(const Integrand& g, double lo, double hi, double mid,
                       const QuadratureConfig& cfg,
                       std::span<const double> breaks = {}) {
  if (!(lo < hi)) return 0.0;
  mid = std::clamp(mid, lo, hi);
  if (std::isinf(mid)) mid = std::isinf(lo) ? std::min(hi, 0.0) : lo;
  double total = 0.0;
  if (lo < mid) {
    total += std::isinf(lo) ? integrate_from_minus_infinity(g, mid, cfg, breaks).value
                            : integrate(g, lo, mid, cfg, breaks).value;
  }
  if (mid < hi) {
    total += std::isinf(hi) ? integrate_to_infinity(g, mid, cfg, breaks).value
                            : integrate(g, mid, hi, cfg, breaks).value;
  }
  return total;
}

// Nonnegative integrand g(u) on (u_lo, +inf) in the log variable. Returns
// the integral up to kMaxLogX, or the divergence flag from the doubling
// screen past x0 = 1e3.
ExtendedReal integrate_screened(const Integrand& g, double u_lo,
                                const QuadratureConfig& cfg,
                                std::span<const double> breaks) {
  const double u0 = std::log(1e3);
  const double step = std::numbers::ln2;
  constexpr int kDoublings = 6;
  const double min_ratio = std::pow(2.0, -0.05);

  double partial = integrate_range(g, u_lo, u0, 0.0, cfg, breaks);
  double previous_step = 0.0;
  int growing = 0;
  double u = std::max(u0, u_lo);
  for (int k = 0; k < kDoublings; ++k) {
    const double inc = integrate(g, u, u + step, cfg, breaks).value;
    const bool grows = inc > 1e-3 * partial;
    const bool persistent = k == 0 || inc > min_ratio * previous_step;
    growing = (grows && persistent) ? growing + 1 : 0;
    partial += inc;
    previous_step = inc;
    u += step;
  }
  if (growing >= 5) return ExtendedReal::infinity();
  if (u < kMaxLogX) partial += integrate(g, u, kMaxLogX, cfg, breaks).value;
  return ExtendedReal::finite(partial);
}

}  // namespace

void StieltjesMeasure::validate() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (!std::isfinite(a.location) || a.location < 0.0) {
      throw DomainError("measure atom location must be finite and >= 0");
    }
    if (!std::isfinite(a.mass) || !(a.mass > 0.0)) {
      throw DomainError("measure atom mass must be finite and > 0");
    }
    if (i > 0 && !(atoms[i - 1].location < a.location)) {
      throw DomainError("measure atoms must be sorted with distinct locations");
    }
  }
  if (!(support_lo >= 0.0) || !(support_lo < support_hi)) {
    throw DomainError("measure support must satisfy 0 <= lo < hi");
  }
  if (log_density_at_log_x && !density) {
    throw DomainError("measure log-density given without a density");
  }
}

StieltjesMeasure power_measure(double s) {
  require_positive(s, "pow");
  StieltjesMeasure mu;
  mu.density = [s](double x) { return s * std::pow(x, s - 1.0); };
  mu.log_density_at_log_x = [s](double u) { return std::log(s) + (s - 1.0) * u; };
  mu.family = {MeasureFamily::Kind::power, s};
  mu.description = describe("pow", s);
  return mu;
}

StieltjesMeasure power_log_measure(double s) {
  require_positive(s, "powlog");
  StieltjesMeasure mu;
  // b'(x) = s x^{s-1} / L^2 * (1 - 2 x / (s L (e^{2/s} + x))), L = ln(e^{2/s} + x)
  mu.log_density_at_log_x = [s](double u) {
    const double big_l = log_shifted(s, u);
    const double share = 1.0 / (1.0 + std::exp(2.0 / s - u));
    return std::log(s) + (s - 1.0) * u - 2.0 * std::log(big_l) +
           std::log1p(-2.0 * share / (s * big_l));
  };
  mu.density = [s, log_dens = mu.log_density_at_log_x](double x) {
    return x > 0.0 ? std::exp(log_dens(std::log(x))) : 0.0;
  };
  mu.family = {MeasureFamily::Kind::power_log, s};
  mu.description = describe("powlog", s);
  return mu;
}

StieltjesMeasure indicator_measure(double c) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("ind: c must be finite and >= 0");
  StieltjesMeasure mu;
  mu.atoms = {{c, 1.0}};
  mu.family = {MeasureFamily::Kind::indicator, c};
  mu.description = describe("ind", c);
  return mu;
}

StieltjesMeasure atoms_measure(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& l, const Atom& r) { return l.location < r.location; });
  StieltjesMeasure mu;
  mu.atoms = std::move(atoms);
  mu.description = "atoms";
  mu.validate();
  return mu;
}

StieltjesMeasure measure_from_family(const MeasureFamily& family) {
  switch (family.kind) {
    case MeasureFamily::Kind::power: return power_measure(family.parameter);
    case MeasureFamily::Kind::power_log: return power_log_measure(family.parameter);
    case MeasureFamily::Kind::indicator: return indicator_measure(family.parameter);
    case MeasureFamily::Kind::custom: break;
  }
  throw UnsupportedError("custom measure family has no canonical measure");
}

StieltjesMeasure scaled(const StieltjesMeasure& mu, double factor) {
  require_positive(factor, "scaled");
  StieltjesMeasure out = mu;
  for (Atom& a : out.atoms) a.mass *= factor;
  if (mu.density) {
    out.density = [d = mu.density, factor](double x) { return factor * d(x); };
  }
  if (mu.log_density_at_log_x) {
    out.log_density_at_log_x = [d = mu.log_density_at_log_x,
                                shift = std::log(factor)](double u) {
      return d(u) + shift;
    };
  }
  out.description = describe("scaled", factor) + "*" + mu.description;
  return out;
}

ScalarFunction cumulative_function(const MeasureFamily& family) {
  const double s = family.parameter;
  switch (family.kind) {
    case MeasureFamily::Kind::power:
      return {[s](double x) { return std::pow(std::max(x, 0.0), s); }, {}, describe("pow", s)};
    case MeasureFamily::Kind::power_log:
      return {[s](double x) {
                if (x <= 0.0) return 0.0;
                const double big_l = log_shifted(s, std::log(x));
                return std::exp(s * std::log(x) - 2.0 * std::log(big_l));
              },
              {},
              describe("powlog", s)};
    case MeasureFamily::Kind::indicator:
      return {[s](double x) { return x >= s ? 1.0 : 0.0; }, {s}, describe("ind", s)};
    case MeasureFamily::Kind::custom: break;
  }
  throw UnsupportedError("custom measure family has no closed-form b(x)");
}

std::vector<Atom> read_atoms_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open atoms file '" + path + "'");
  std::vector<Atom> atoms;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    Atom a;
    if (!(fields >> a.location >> a.mass)) {
      if (line_no == 1) continue;
      throw DomainError("atoms file '" + path + "': bad line " + std::to_string(line_no));
    }
    atoms.push_back(a);
  }
  StieltjesMeasure mu = atoms_measure(std::move(atoms));
  return mu.atoms;
}

StieltjesMeasure parse_measure(std::string_view descriptor) {
  const std::string text(descriptor);
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("unknown measure descriptor '" + text + "'");
  }
  const std::string name = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (name == "atoms") {
    StieltjesMeasure mu = atoms_measure(read_atoms_csv(arg));
    mu.description = text;
    return mu;
  }
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::logic_error&) {
    throw DomainError("bad numeric parameter in '" + text + "'");
  }
  if (name == "pow") return power_measure(v);
  if (name == "powlog") return power_log_measure(v);
  if (name == "ind") return indicator_measure(v);
  throw DomainError("unknown measure descriptor '" + text + "'");
}

FinitenessThreshold finiteness_threshold(const MeasureFamily& family) {
  switch (family.kind) {
    case MeasureFamily::Kind::power: return {family.parameter, false};
    case MeasureFamily::Kind::power_log: return {family.parameter, true};
    case MeasureFamily::Kind::indicator: return {0.0, false};
    case MeasureFamily::Kind::custom: break;
  }
  throw UnsupportedError("finiteness threshold is only known for named families");
}

bool in_finiteness_set(Dof p, const MeasureFamily& family) {
  if (p.is_infinite()) return true;
  const FinitenessThreshold t = finiteness_threshold(family);
  return t.boundary_included ? p.value() >= t.p_b : p.value() > t.p_b;
}

ExtendedReal generalized_moment(Dof p, const StieltjesMeasure& mu,
                                const QuadratureConfig& cfg) {
  mu.validate();
  cfg.validate();
  const bool named = mu.family.kind != MeasureFamily::Kind::custom;
  if (named && !in_finiteness_set(p, mu.family)) return ExtendedReal::infinity();

  double sum = 0.0;
  for (const Atom& a : mu.atoms) sum += a.mass * tail(p, a.location).tail;
  if (!mu.has_density()) return ExtendedReal::finite(2.0 * sum);

  auto log_dens = [&mu](double u) {
    if (mu.log_density_at_log_x) return mu.log_density_at_log_x(u);
    // x = e^u underflowing to 0 carries no mass.
    const double x = std::exp(u);
    if (x == 0.0) return -kInf;
    const double d = mu.density(x);
    return d > 0.0 ? std::log(d) : -kInf;
  };
  auto g = [&](double u) {
    const double log_value = log_tail_at_log_x(p, u) + log_dens(u) + u;
    return std::isnan(log_value) ? 0.0 : std::exp(log_value);
  };

  const QuadratureConfig rel = cfg.relative_only();
  const double u_lo = mu.support_lo > 0.0 ? std::log(mu.support_lo) : -kInf;
  double u_hi = std::isfinite(mu.support_hi) ? std::log(mu.support_hi) : kInf;
  if (!mu.log_density_at_log_x) u_hi = std::min(u_hi, kMaxLogX);

  if (!named && std::isinf(mu.support_hi)) {
    const ExtendedReal part = integrate_screened(g, u_lo, rel, {});
    if (part.is_infinite()) return part;
    return ExtendedReal::finite(2.0 * (sum + part.value()));
  }
  sum += integrate_range(g, u_lo, u_hi, 0.0, rel);
  return ExtendedReal::finite(2.0 * sum);
}

ExtendedReal direct_moment_oracle(Dof p, const ScalarFunction& b,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  auto g = [&](double u) {
    const double w = std::exp(log_density_at_log_x(p, u) + u);
    return w == 0.0 ? 0.0 : w * b(std::exp(u));
  };
  std::vector<double> breaks;
  for (double x : b.breakpoints) {
    if (x > 0.0) breaks.push_back(std::log(x));
  }
  const ExtendedReal half = integrate_screened(g, -kInf, cfg.relative_only(), breaks);
  if (half.is_infinite()) return half;
  return ExtendedReal::finite(2.0 * half.value());
}

ExtendedReal power_moment(Dof p, double s) {
  require_positive(s, "power_moment");
  const double log_pi = std::log(std::numbers::pi);
  if (p.is_infinite()) {
    return ExtendedReal::finite(
        std::exp(0.5 * s * std::numbers::ln2 + ln_gamma(0.5 * (s + 1.0)) - 0.5 * log_pi));
  }
  const double v = p.value();
  if (v <= s) return ExtendedReal::infinity();
  return ExtendedReal::finite(std::exp(0.5 * s * std::log(v) + ln_gamma(0.5 * (s + 1.0)) +
                                       ln_gamma(0.5 * (v - s)) - 0.5 * log_pi -
                                       ln_gamma(0.5 * v)));
}

namespace {

std::vector<Dof> p_values_of(const GridSpec& grid, bool append_infinite) {
  std::vector<Dof> out;
  for (double p : grid.points()) out.push_back(Dof::finite(p));
  if (append_infinite) out.push_back(Dof::infinite());
  return out;
}

double finite_or_throw(const ExtendedReal& v, Dof p, std::string_view what) {
  if (v.is_infinite()) {
    throw PreconditionError(std::string(what) + " diverges at p = " + p.to_string());
  }
  return v.value();
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

MonotonicityReport certify_moment_monotone(const StieltjesMeasure& mu,
                                           const GridSpec& p_grid,
                                           bool append_infinite,
                                           const QuadratureConfig& cfg) {
  std::vector<GridValue> values;
  for (Dof p : p_values_of(p_grid, append_infinite)) {
    values.push_back({p.value(), finite_or_throw(generalized_moment(p, mu, cfg), p,
                                                 "generalized moment")});
  }
  return check_monotone(values, Direction::strictly_decreasing);
}

void validate_density_ratio(const StieltjesMeasure& mu_a,
                            const StieltjesMeasure& mu_b,
                            const std::function<double(double)>& rho) {
  mu_a.validate();
  mu_b.validate();
  constexpr double kRel = 1e-9;
  if (mu_a.atoms.size() != mu_b.atoms.size()) {
    throw ConsistencyError("rho check: mu_a and mu_b have different atoms");
  }
  for (std::size_t i = 0; i < mu_a.atoms.size(); ++i) {
    const Atom& a = mu_a.atoms[i];
    const Atom& b = mu_b.atoms[i];
    if (a.location != b.location || !close(b.mass, rho(a.location) * a.mass, kRel)) {
      throw ConsistencyError("rho check: atom masses violate mass_b = rho * mass_a");
    }
  }
  if (mu_a.has_density() != mu_b.has_density()) {
    throw ConsistencyError("rho check: only one measure has a density part");
  }
  if (mu_a.has_density()) {
    const double lo = std::max(mu_a.support_lo, 1e-3);
    const double hi = std::min(mu_a.support_hi, 1e3);
    for (int i = 0; i < 50; ++i) {
      const double x = lo * std::pow(hi / lo, i / 49.0);
      if (!close(mu_b.density(x), rho(x) * mu_a.density(x), kRel)) {
        throw ConsistencyError("rho check: density_b != rho * density_a at x = " +
                               std::to_string(x));
      }
    }
  }
  double prev = rho(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double x = 1e3 * i / 1000.0;
    const double v = rho(x);
    if (v < prev) throw ConsistencyError("rho is not nondecreasing on samples");
    prev = v;
  }
}

MonotonicityReport certify_ratio_monotone(const StieltjesMeasure& mu_a,
                                          const StieltjesMeasure& mu_b,
                                          const std::function<double(double)>& rho,
                                          const GridSpec& p_grid,
                                          bool append_infinite,
                                          const QuadratureConfig& cfg) {
  validate_density_ratio(mu_a, mu_b, rho);
  std::vector<GridValue> values;
  for (Dof p : p_values_of(p_grid, append_infinite)) {
    const double num = finite_or_throw(generalized_moment(p, mu_b, cfg), p, "b-moment");
    const double den = finite_or_throw(generalized_moment(p, mu_a, cfg), p, "a-moment");
    if (!(den > 0.0)) throw PreconditionError("a-moment is not positive");
    values.push_back({p.value(), num / den});
  }
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.evaluations = 2 * values.size();
  return r;
}

MonotonicityReport certify_power_moment_monotone(double s,
                                                 std::span<const Dof> p_values) {
  std::vector<GridValue> values;
  for (Dof p : p_values) {
    values.push_back({p.value(), finite_or_throw(power_moment(p, s), p, "power moment")});
  }
  return check_monotone(values, Direction::strictly_decreasing);
}

MonotonicityReport certify_power_ratio_monotone(double s, double t,
                                                std::span<const Dof> p_values) {
  if (!(0.0 < s && s < t)) throw OrderingError("require 0 < s < t");
  std::vector<GridValue> values;
  for (Dof p : p_values) {
    const double num = finite_or_throw(power_moment(p, t), p, "power moment");
    const double den = finite_or_throw(power_moment(p, s), p, "power moment");
    values.push_back({p.value(), num / den});
  }
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.evaluations = 2 * values.size();
  return r;
}

IdentitySides ratio_difference_identity(Dof p, Dof q,
                                        std::span<const Atom> atoms_a,
                                        const std::function<double(double)>& rho) {
  if (!(p < q)) throw OrderingError("require p < q");
  const std::size_t n = atoms_a.size();
  std::vector<double> gp(n), gq(n), r(n);
  double a_p = 0.0, a_q = 0.0, b_p = 0.0, b_q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& at = atoms_a[i];
    gp[i] = tail(p, at.location).tail;
    gq[i] = tail(q, at.location).tail;
    r[i] = rho(at.location);
    a_p += 2.0 * at.mass * gp[i];
    a_q += 2.0 * at.mass * gq[i];
    b_p += 2.0 * r[i] * at.mass * gp[i];
    b_q += 2.0 * r[i] * at.mass * gq[i];
  }
  IdentitySides out;
  out.lhs = (b_q / a_q - b_p / a_p) * a_p * a_q;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      out.rhs += 2.0 * (r[v] - r[u]) * (gq[v] / gp[v] - gq[u] / gp[u]) * gp[u] *
                 gp[v] * atoms_a[u].mass * atoms_a[v].mass;
    }
  }
  return out;
}

}  // namespace studentt
