#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace studentt {

/// A real function of one variable together with the points where it jumps
/// or has a kink (used to seed quadrature partitions) and a descriptor that
/// round-trips through the CLI mini-language.
struct ScalarFunction {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
  std::string description = "custom";

  ScalarFunction() = default;
  ScalarFunction(std::function<double(double)> f,
                 std::vector<double> breaks = {},
                 std::string desc = "custom")
      : eval(std::move(f)), breakpoints(std::move(breaks)),
        description(std::move(desc)) {}

  double operator()(double t) const { return eval(t); }
};

// Named families. All are defined on the whole real line.
ScalarFunction power_fn(double s);        // pow:s       (t_+)^s
ScalarFunction cap_fn(double c);          // cap:c       min(t_+, c)
ScalarFunction indicator_fn(double c);    // ind:c       1{t > c}
ScalarFunction shift_indicator_fn(double c);  // shiftind:c, same as ind:c
ScalarFunction constant_fn(double c);     // const:c
ScalarFunction abs_cap_fn(double c);      // abscap:c    min(|t|, c)
ScalarFunction tanh_step_fn();            // tanhstep    (tanh t + 1) / 2

// Parses "pow:s", "cap:c", "ind:c", "shiftind:c", "const:c", "abscap:c",
// "tanhstep". Throws DomainError on anything else.
ScalarFunction parse_function(std::string_view descriptor);

// Product t -> f(t) g(t), breakpoints merged.
ScalarFunction product(const ScalarFunction& f, const ScalarFunction& g);

// True when f is nondecreasing on `samples` equally spaced points of [lo, hi].
bool sampled_nondecreasing(const ScalarFunction& f, double lo, double hi,
                           int samples = 1000);

}  // namespace studentt
