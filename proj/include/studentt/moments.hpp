#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "studentt/functions.hpp"
#include "studentt/monotonicity.hpp"
#include "studentt/quadrature.hpp"
#include "studentt/student.hpp"

namespace studentt {

/// A value in [0, +inf]: either finite or the divergence flag.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity(), true);
  }

  [[nodiscard]] bool is_infinite() const { return infinite_; }
  [[nodiscard]] bool is_finite() const { return !infinite_; }
  // The finite value, or +inf when flagged.
  [[nodiscard]] double value() const { return value_; }

 private:
  ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Named measure families with known finiteness sets.
///   power(s):     b(x) = x^s
///   power_log(s): b(x) = x^s / ln^2(e^{2/s} + x)
///   indicator(c): b(x) = 1{x >= c}, a unit atom at c
struct MeasureFamily {
  enum class Kind { power, power_log, indicator, custom };
  Kind kind = Kind::custom;
  double parameter = 0.0;
};

/// Lebesgue-Stieltjes measure mu with mu([0, x]) = b(x) for a nondecreasing
/// right-continuous b: atoms at the jumps of b (b(0) is an atom at 0) plus a
/// density part on (0, inf).
struct StieltjesMeasure {
  std::vector<Atom> atoms;
  // d mu / dx on (support_lo, support_hi); empty when there is no density.
  std::function<double(double)> density;
  // Optional ln(d mu / dx) at x = e^u, finite for all u. When present the
  // density part is integrated to +inf in the log variable.
  std::function<double(double)> log_density_at_log_x;
  double support_lo = 0.0;
  double support_hi = std::numeric_limits<double>::infinity();
  MeasureFamily family;
  // Mini-language descriptor ("pow:2", "atoms:file.csv", ...).
  std::string description = "custom";

  // Atoms sorted, distinct, location >= 0, mass > 0; support bounds sane.
  void validate() const;
  [[nodiscard]] bool has_density() const { return static_cast<bool>(density); }
};

StieltjesMeasure power_measure(double s);
StieltjesMeasure power_log_measure(double s);
StieltjesMeasure indicator_measure(double c);
StieltjesMeasure atoms_measure(std::vector<Atom> atoms);
StieltjesMeasure measure_from_family(const MeasureFamily& family);
// c * mu for c > 0.
StieltjesMeasure scaled(const StieltjesMeasure& mu, double factor);

// b(x) = mu([0, x]) for the named families.
ScalarFunction cumulative_function(const MeasureFamily& family);

// CSV with one "location,mass" pair per line; a non-numeric first line is
// treated as a header.
std::vector<Atom> read_atoms_csv(const std::string& path);

// "pow:s", "powlog:s", "ind:c", "atoms:<path>".
StieltjesMeasure parse_measure(std::string_view descriptor);

/// E b(|T_p|) computed as 2 int_[0,inf) G_p d mu_b.
///
/// Named families are classified exactly by finiteness_threshold(). A custom
/// density reaching infinity is screened heuristically: partial integrals
/// over [0, 2^k 10^3] are flagged divergent when, over 5 consecutive
/// doublings, each step grows the partial sum by more than 0.1% and the steps
/// themselves shrink by less than a factor 2^-0.05.
ExtendedReal generalized_moment(Dof p, const StieltjesMeasure& mu,
                                const QuadratureConfig& cfg = {});

// 2 int_0^inf f_p(x) b(x) dx by quadrature, with the same divergence screen.
ExtendedReal direct_moment_oracle(Dof p, const ScalarFunction& b,
                                  const QuadratureConfig& cfg = {});

// E|T_p|^s; +inf for finite p <= s.
ExtendedReal power_moment(Dof p, double s);

struct FinitenessThreshold {
  double p_b = 0.0;
  bool boundary_included = false;
};

// power(s) -> (s, excluded); power_log(s) -> (s, included);
// indicator(c) -> (0, excluded), i.e. finite for every p > 0.
// Throws UnsupportedError for custom measures.
FinitenessThreshold finiteness_threshold(const MeasureFamily& family);
bool in_finiteness_set(Dof p, const MeasureFamily& family);

// Corollary-style certifiers over a p-grid (optionally followed by p = inf).
MonotonicityReport certify_moment_monotone(const StieltjesMeasure& mu,
                                           const GridSpec& p_grid,
                                           bool append_infinite = false,
                                           const QuadratureConfig& cfg = {});

// Throws ConsistencyError unless d mu_b = rho d mu_a: atoms must coincide
// with mass_b = rho(x) mass_a, densities must satisfy the same relation at
// 50 log-spaced sample points, both to 1e-9 relative; rho must be
// nondecreasing on samples.
void validate_density_ratio(const StieltjesMeasure& mu_a,
                            const StieltjesMeasure& mu_b,
                            const std::function<double(double)>& rho);

MonotonicityReport certify_ratio_monotone(
    const StieltjesMeasure& mu_a, const StieltjesMeasure& mu_b,
    const std::function<double(double)>& rho, const GridSpec& p_grid,
    bool append_infinite = false, const QuadratureConfig& cfg = {});

// p -> E|T_p|^s over p_values (all must exceed s), claimed decreasing.
MonotonicityReport certify_power_moment_monotone(double s,
                                                 std::span<const Dof> p_values);

// p -> E|T_p|^t / E|T_p|^s for 0 < s < t, p > t, claimed decreasing.
MonotonicityReport certify_power_ratio_monotone(double s, double t,
                                                std::span<const Dof> p_values);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the correlation identity for a purely atomic mu_a and
/// mu_b = rho mu_a:
///   lhs = (B_q/A_q - B_p/A_p) A_p A_q, with A = E a(|T|), B = E b(|T|),
///   rhs = 2 sum_u sum_v [rho(v) - rho(u)] [R(v) - R(u)] G_p(u) G_p(v) m_u m_v,
/// where R = G_q / G_p.
IdentitySides ratio_difference_identity(Dof p, Dof q,
                                        std::span<const Atom> atoms_a,
                                        const std::function<double(double)>& rho);

}  // namespace studentt
