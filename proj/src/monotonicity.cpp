#include "studentt/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "studentt/error.hpp"

namespace studentt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_ordered(Dof p, Dof q) {
  if (!(p < q)) throw OrderingError("require p < q");
}

// NaN slack never certifies anything.
double slack(double v) { return std::isnan(v) ? -kInf : v; }

MonotonicityReport finish(MonotonicityReport r) {
  r.status = r.violations.empty() ? Status::certified : Status::violated;
  return r;
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("grid requires finite lo < hi");
  }
  if (count < 2) throw DomainError("grid requires count >= 2");
  if (spacing == Spacing::logarithmic && !(lo > 0.0)) {
    throw DomainError("logarithmic grid requires lo > 0");
  }
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(count));
  const double n = count - 1;
  for (int i = 0; i < count; ++i) {
    if (spacing == Spacing::linear) {
      out[i] = lo + (hi - lo) * (i / n);
    } else {
      out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * (i / n));
    }
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string GridSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << lo << ':' << hi << ':' << count;
  if (spacing == Spacing::logarithmic) out << ":log";
  return out.str();
}

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) {
    throw DomainError("grid must look like lo:hi:count[:log], got '" + text + "'");
  }
  GridSpec g;
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::logic_error&) {
    throw DomainError("grid must look like lo:hi:count[:log], got '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "lin") {
      throw DomainError("grid spacing must be 'log' or 'lin', got '" + parts[3] + "'");
    }
    g.spacing = parts[3] == "log" ? Spacing::logarithmic : Spacing::linear;
  }
  g.validate();
  return g;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::strictly_decreasing: return "strictly_decreasing";
    case Direction::strictly_increasing: return "strictly_increasing";
    case Direction::strictly_positive: return "strictly_positive";
    case Direction::within_tolerance: return "within_tolerance";
  }
  return "unknown";
}

std::string to_string(Status s) {
  return s == Status::certified ? "certified" : "violated";
}

MonotonicityReport check_monotone(std::span<const GridValue> values,
                                  Direction direction, double margin_floor) {
  if (direction != Direction::strictly_decreasing &&
      direction != Direction::strictly_increasing) {
    throw PreconditionError("check_monotone: direction must be increasing or decreasing");
  }
  if (values.size() < 2) throw PreconditionError("check_monotone: need at least 2 points");
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i].point < values[i + 1].point)) {
      throw PreconditionError("check_monotone: abscissae must be strictly increasing");
    }
  }
  MonotonicityReport r;
  r.direction = direction;
  r.min_margin = kInf;
  r.evaluations = values.size();
  const double sign = direction == Direction::strictly_decreasing ? -1.0 : 1.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double step = slack(sign * (values[i + 1].value - values[i].value));
    r.min_margin = std::min(r.min_margin, step);
    if (!(step > margin_floor)) {
      r.violations.push_back({i, values[i].value, values[i + 1].value});
    }
  }
  return finish(std::move(r));
}

MonotonicityReport check_positive(std::span<const GridValue> values,
                                  double margin_floor) {
  if (values.empty()) throw PreconditionError("check_positive: no values");
  MonotonicityReport r;
  r.direction = Direction::strictly_positive;
  r.min_margin = kInf;
  r.evaluations = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = slack(values[i].value);
    r.min_margin = std::min(r.min_margin, v);
    if (!(v > margin_floor)) r.violations.push_back({i, values[i].value, margin_floor});
  }
  return finish(std::move(r));
}

MonotonicityReport check_within(std::span<const GridValue> errors,
                                double tolerance) {
  if (errors.empty()) throw PreconditionError("check_within: no values");
  MonotonicityReport r;
  r.direction = Direction::within_tolerance;
  r.min_margin = kInf;
  r.evaluations = errors.size();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double m = slack(tolerance - std::abs(errors[i].value));
    r.min_margin = std::min(r.min_margin, m);
    if (!(m >= 0.0)) r.violations.push_back({i, errors[i].value, tolerance});
  }
  return finish(std::move(r));
}

MonotonicityReport combine(std::span<const MonotonicityReport> reports) {
  if (reports.empty()) throw PreconditionError("combine: no reports");
  MonotonicityReport out;
  out.direction = reports.front().direction;
  out.min_margin = kInf;
  for (const auto& r : reports) {
    out.min_margin = std::min(out.min_margin, r.min_margin);
    out.evaluations += r.evaluations;
    out.violations.insert(out.violations.end(), r.violations.begin(), r.violations.end());
    out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
  }
  return finish(std::move(out));
}

double log_tail_ratio(Dof p, Dof q, double x) {
  require_ordered(p, q);
  return tail(q, x).log_tail - tail(p, x).log_tail;
}

double tail_ratio(Dof p, Dof q, double x) {
  return std::exp(log_tail_ratio(p, q, x));
}

MonotonicityReport certify_mtr(Dof p, Dof q, const GridSpec& grid,
                               double margin_floor) {
  require_ordered(p, q);
  grid.validate();
  if (grid.lo < 0.0) throw PreconditionError("certify_mtr: grid must lie in [0, inf)");
  std::vector<GridValue> values;
  for (double x : grid.points()) values.push_back({x, log_tail_ratio(p, q, x)});
  auto r = check_monotone(values, Direction::strictly_decreasing, margin_floor);
  r.evaluations = 2 * values.size();
  return r;
}

MonotonicityReport certify_sm(Dof p, Dof q, const GridSpec& grid,
                              double margin_floor) {
  require_ordered(p, q);
  grid.validate();
  std::vector<GridValue> values;
  for (double x : grid.points()) {
    values.push_back({x, tail(p, x).tail - tail(q, x).tail});
  }
  auto r = check_positive(values, margin_floor);
  r.evaluations = 2 * values.size();
  return r;
}

double stp2_minor(Dof p1, Dof p2, double y1, double y2) {
  if (!(p1 < p2)) throw OrderingError("require p1 < p2");
  if (!(y1 <= y2)) throw OrderingError("require y1 <= y2");
  if (!(y2 <= 0.0)) throw OrderingError("require y2 <= 0");
  return tail(p1, -y1).tail * tail(p2, -y2).tail -
         tail(p1, -y2).tail * tail(p2, -y1).tail;
}

MonotonicityReport certify_tail_ratio_in_p(double u, double v,
                                           std::span<const Dof> p_values) {
  if (!(u >= 0.0 && u < v && std::isfinite(v))) {
    throw OrderingError("require 0 <= u < v < inf");
  }
  std::vector<GridValue> values;
  for (Dof p : p_values) {
    values.push_back({p.value(), tail(p, v).log_tail - tail(p, u).log_tail});
  }
  auto r = check_monotone(values, Direction::strictly_decreasing);
  r.evaluations = 2 * values.size();
  return r;
}

std::pair<MonotonicityReport, MonotonicityReport> certify_partial_mlr(
    Dof p, Dof q, const GridSpec& grid_lo, const GridSpec& grid_hi) {
  require_ordered(p, q);
  grid_lo.validate();
  grid_hi.validate();
  if (grid_lo.lo < 0.0 || grid_lo.hi > 1.0) {
    throw PreconditionError("certify_partial_mlr: lower grid must lie in [0, 1]");
  }
  if (grid_hi.lo < 1.0) {
    throw PreconditionError("certify_partial_mlr: upper grid must lie in [1, inf)");
  }
  auto run = [&](const GridSpec& g, Direction d) {
    std::vector<GridValue> values;
    for (double x : g.points()) {
      values.push_back({x, log_density(q, x) - log_density(p, x)});
    }
    auto r = check_monotone(values, d);
    r.evaluations = 2 * values.size();
    return r;
  };
  return {run(grid_lo, Direction::strictly_increasing),
          run(grid_hi, Direction::strictly_decreasing)};
}

}  // namespace studentt
