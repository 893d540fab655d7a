#include "studentt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "studentt/error.hpp"

namespace studentt {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1 ||
      !(tail_cut_tol > 0.0)) {
    throw DomainError(
        "QuadratureConfig requires abs_tol > 0, rel_tol > 0, "
        "max_subdivisions >= 1, tail_cut_tol > 0");
  }
}

QuadratureConfig QuadratureConfig::relative_only() const {
  return with_abs_tol(std::numeric_limits<double>::min());
}

QuadratureConfig QuadratureConfig::with_abs_tol(double tol) const {
  QuadratureConfig out = *this;
  out.abs_tol = tol;
  return out;
}

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208063315339, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const {
    return l.error < r.error;
  }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    throw QuadratureError(msg.str());
  }
  return y;
}

Segment kronrod21(const Integrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 10> left{};
  std::array<double, 10> right{};

  const double fc = checked(f, center);
  double gauss = 0.0;
  double kronrod = kKronrodWeights[10] * fc;
  double abs_sum = std::abs(kronrod);

  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    left[j] = checked(f, center - dx);
    right[j] = checked(f, center + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] *
           (std::abs(left[j] - mean) + std::abs(right[j] - mean));
  }

  const double scale = std::abs(half);
  const double result = kronrod * half;
  abs_sum *= scale;
  asc *= scale;
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) {
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  }
  if (abs_sum > uflow / (50.0 * eps)) err = std::max(50.0 * eps * abs_sum, err);
  return {a, b, result, err};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg,
                           std::span<const double> breakpoints) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, cfg, breakpoints);
    r.value = -r.value;
    return r;
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  QuadratureResult out;
  double frozen_value = 0.0;
  double frozen_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    heap.push(kronrod21(f, cuts[i], cuts[i + 1]));
    out.evaluations += 21;
  }

  auto totals = [&] {
    double value = frozen_value;
    double error = frozen_error;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (true) {
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
    if (error <= tol) break;
    if (heap.empty() || out.subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature on [" << a << ", " << b << "] did not converge: error "
          << error << " > tolerance " << tol << " after " << out.subdivisions
          << " subdivisions";
      throw QuadratureError(msg.str());
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    const Segment lhs = kronrod21(f, worst.a, mid);
    const Segment rhs = kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    ++out.subdivisions;
    value += lhs.value + rhs.value - worst.value;
    error += lhs.error + rhs.error - worst.error;
    heap.push(lhs);
    heap.push(rhs);
    // Resum periodically so incremental drift never decides convergence.
    if (out.subdivisions % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(out.value, out.error) = totals();
  return out;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureConfig& cfg,
                                       std::span<const double> breakpoints) {
  auto mapped = [&](double t) {
    const double s = 1.0 - t;
    const double x = a + t / s;
    const double y = f(x);
    return y == 0.0 ? 0.0 : y / (s * s);
  };
  std::vector<double> cuts;
  for (double p : breakpoints) {
    if (p > a && std::isfinite(p)) cuts.push_back((p - a) / (1.0 + p - a));
  }
  return integrate(mapped, 0.0, 1.0, cfg, cuts);
}

QuadratureResult integrate_from_minus_infinity(
    const Integrand& f, double b, const QuadratureConfig& cfg,
    std::span<const double> breakpoints) {
  auto mirrored = [&](double x) { return f(2.0 * b - x); };
  std::vector<double> cuts;
  for (double p : breakpoints) cuts.push_back(2.0 * b - p);
  return integrate_to_infinity(mirrored, b, cfg, cuts);
}

double gauss_legendre(const Integrand& f, double a, double b, int n) {
  if (n < 1 || n > 64) throw DomainError("gauss_legendre: n must be in 1..64");
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    sum += w * f(center + half * x);
  }
  return sum * half;
}

}  // namespace studentt
