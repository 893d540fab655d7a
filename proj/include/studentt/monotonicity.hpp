#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "studentt/student.hpp"

namespace studentt {

enum class Spacing { linear, logarithmic };

/// A 1-D evaluation grid with both endpoints included.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  // Throws DomainError: lo < hi, count >= 2, lo > 0 for log spacing.
  void validate() const;
  [[nodiscard]] std::vector<double> points() const;

  // "lo:hi:count" or "lo:hi:count:log".
  [[nodiscard]] std::string to_string() const;
  static GridSpec parse(const std::string& text);
};

// What a report claims about its values.
//   strictly_decreasing / strictly_increasing: consecutive differences.
//   strictly_positive: each value on its own.
//   within_tolerance: each value is an error that must not exceed a bound.
enum class Direction {
  strictly_decreasing,
  strictly_increasing,
  strictly_positive,
  within_tolerance
};

enum class Status { certified, violated };

struct Violation {
  std::size_t index = 0;
  double left = 0.0;
  double right = 0.0;
};

/// Verdict of a grid certification. `min_margin` is the smallest signed
/// slack in the claimed direction; status is `certified` exactly when
/// `violations` is empty.
struct MonotonicityReport {
  Direction direction = Direction::strictly_decreasing;
  Status status = Status::certified;
  double min_margin = 0.0;
  std::vector<Violation> violations;
  std::size_t evaluations = 0;
  std::vector<std::string> notes;

  [[nodiscard]] bool certified() const { return status == Status::certified; }
};

std::string to_string(Direction d);
std::string to_string(Status s);

struct GridValue {
  double point = 0.0;
  double value = 0.0;
};

// Pair i violates when the signed step in `direction` is not greater than
// margin_floor, so with the default floor of 0 a tie is a violation.
// Requires >= 2 points with strictly increasing abscissae (PreconditionError).
MonotonicityReport check_monotone(std::span<const GridValue> values,
                                  Direction direction,
                                  double margin_floor = 0.0);

// Each value must exceed margin_floor; the margin is the value itself.
MonotonicityReport check_positive(std::span<const GridValue> values,
                                  double margin_floor = 0.0);

// Each value is an error; violation when |value| > tolerance.
// The margin is tolerance - |value|.
MonotonicityReport check_within(std::span<const GridValue> errors,
                                double tolerance);

// Folds several reports for the same claim into one (margins min-combined,
// violation indices kept as given).
MonotonicityReport combine(std::span<const MonotonicityReport> reports);

// G_q(x) / G_p(x) and its logarithm. Requires p < q (OrderingError).
double tail_ratio(Dof p, Dof q, double x);
double log_tail_ratio(Dof p, Dof q, double x);

// log(G_q/G_p) strictly decreasing over a grid in [0, inf).
MonotonicityReport certify_mtr(Dof p, Dof q, const GridSpec& grid,
                               double margin_floor = 0.0);

// G_p(x) - G_q(x) > 0 at every grid point.
MonotonicityReport certify_sm(Dof p, Dof q, const GridSpec& grid,
                              double margin_floor = 0.0);

// G_{p1}(-y1) G_{p2}(-y2) - G_{p1}(-y2) G_{p2}(-y1) for p1 < p2, y1 < y2 <= 0.
double stp2_minor(Dof p1, Dof p2, double y1, double y2);

// For fixed 0 <= u < v, p -> G_p(v) / G_p(u) over increasing p (the last
// entry may be infinite); claimed strictly decreasing.
MonotonicityReport certify_tail_ratio_in_p(double u, double v,
                                           std::span<const Dof> p_values);

// ln f_q - ln f_p: strictly increasing over grid_lo (inside [0, 1]) and
// strictly decreasing over grid_hi (inside [1, inf)).
std::pair<MonotonicityReport, MonotonicityReport> certify_partial_mlr(
    Dof p, Dof q, const GridSpec& grid_lo, const GridSpec& grid_hi);

}  // namespace studentt
