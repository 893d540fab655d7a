#include "studentt/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "studentt/error.hpp"

namespace studentt {

namespace {

std::string describe(std::string_view name, double v) {
  std::ostringstream out;
  out.precision(17);
  out << name << ':' << v;
  return out.str();
}

double positive_part(double t) { return t > 0.0 ? t : 0.0; }

void require_positive(double v, std::string_view name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(name) + ": parameter must be finite and > 0");
  }
}

void require_finite(double v, std::string_view name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + ": parameter must be finite");
  }
}

}  // namespace

ScalarFunction power_fn(double s) {
  require_positive(s, "pow");
  return {[s](double t) { return std::pow(positive_part(t), s); },
          {0.0},
          describe("pow", s)};
}

ScalarFunction cap_fn(double c) {
  require_positive(c, "cap");
  return {[c](double t) { return std::min(positive_part(t), c); },
          {0.0, c},
          describe("cap", c)};
}

ScalarFunction indicator_fn(double c) {
  require_finite(c, "ind");
  return {[c](double t) { return t > c ? 1.0 : 0.0; }, {c}, describe("ind", c)};
}

ScalarFunction shift_indicator_fn(double c) {
  ScalarFunction f = indicator_fn(c);
  f.description = describe("shiftind", c);
  return f;
}

ScalarFunction constant_fn(double c) {
  require_finite(c, "const");
  return {[c](double) { return c; }, {}, describe("const", c)};
}

ScalarFunction abs_cap_fn(double c) {
  require_positive(c, "abscap");
  return {[c](double t) { return std::min(std::abs(t), c); },
          {-c, 0.0, c},
          describe("abscap", c)};
}

ScalarFunction tanh_step_fn() {
  return {[](double t) { return 0.5 * (std::tanh(t) + 1.0); }, {}, "tanhstep"};
}

ScalarFunction parse_function(std::string_view descriptor) {
  const std::string text(descriptor);
  if (text == "tanhstep") return tanh_step_fn();
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw DomainError("unknown function descriptor '" + text + "'");
  }
  const std::string name = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::logic_error&) {
    throw DomainError("bad numeric parameter in '" + text + "'");
  }
  if (name == "pow") return power_fn(v);
  if (name == "cap") return cap_fn(v);
  if (name == "ind") return indicator_fn(v);
  if (name == "shiftind") return shift_indicator_fn(v);
  if (name == "const") return constant_fn(v);
  if (name == "abscap") return abs_cap_fn(v);
  throw DomainError("unknown function descriptor '" + text + "'");
}

ScalarFunction product(const ScalarFunction& f, const ScalarFunction& g) {
  std::vector<double> breaks = f.breakpoints;
  breaks.insert(breaks.end(), g.breakpoints.begin(), g.breakpoints.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return {[f, g](double t) { return f(t) * g(t); },
          std::move(breaks),
          "(" + f.description + ")*(" + g.description + ")"};
}

bool sampled_nondecreasing(const ScalarFunction& f, double lo, double hi,
                           int samples) {
  double prev = f(lo);
  for (int i = 1; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    const double v = f(t);
    if (v < prev) return false;
    prev = v;
  }
  return true;
}

}  // namespace studentt
