#include "studentt/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "studentt/chi.hpp"
#include "studentt/error.hpp"
#include "studentt/functions.hpp"
#include "studentt/moments.hpp"
#include "studentt/truncated.hpp"

namespace studentt {

using nlohmann::json;

namespace {

json dof_json(Dof p) { return p.is_infinite() ? json("inf") : json(p.value()); }

template <class F>
TargetResult timed(std::string target, json params, std::string grid, F&& run) {
  const auto start = std::chrono::steady_clock::now();
  TargetResult out;
  out.target = std::move(target);
  out.params = std::move(params);
  out.grid = std::move(grid);
  out.report = run();
  out.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

// A yes/no check expressed as a report: error 0 passes, 1 fails.
MonotonicityReport boolean_check(const std::vector<std::pair<double, bool>>& outcomes) {
  std::vector<GridValue> errors;
  for (const auto& [point, ok] : outcomes) errors.push_back({point, ok ? 0.0 : 1.0});
  return check_within(errors, 0.0);
}

std::vector<Dof> dofs(std::initializer_list<double> values, bool with_inf) {
  std::vector<Dof> out;
  for (double v : values) out.push_back(Dof::finite(v));
  if (with_inf) out.push_back(Dof::infinite());
  return out;
}

// Log-spaced p from lo to hi, then p = inf.
std::vector<Dof> p_ladder(double lo, double hi, int count) {
  std::vector<Dof> out;
  for (double p : GridSpec{lo, hi, count, Spacing::logarithmic}.points()) {
    out.push_back(Dof::finite(p));
  }
  out.push_back(Dof::infinite());
  return out;
}

std::vector<std::pair<Dof, Dof>> ordered_pairs(const std::vector<Dof>& set) {
  std::vector<std::pair<Dof, Dof>> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (set[i] < set[j]) out.emplace_back(set[i], set[j]);
    }
  }
  return out;
}

json pair_params(Dof p, Dof q) { return {{"p", dof_json(p)}, {"q", dof_json(q)}}; }

std::vector<std::pair<Dof, Dof>> pairs_for(const Bindings& b, const Defaults& d,
                                           bool explicit_only) {
  if (b.p && b.q) {
    if (!(*b.p < *b.q)) throw OrderingError("require p < q");
    return {{*b.p, *b.q}};
  }
  if (b.p || b.q || explicit_only) throw PreconditionError("target requires both --p and --q");
  return ordered_pairs(d.tail_p_set);
}

// ---------------------------------------------------------------- tail ratio

std::vector<TargetResult> run_mtr(const Bindings& b, const Defaults& d,
                                  const QuadratureConfig& cfg, bool matrix) {
  const GridSpec grid = b.x_grid.value_or(d.mtr_grid);
  std::vector<TargetResult> out;
  for (auto [p, q] : pairs_for(b, d, !matrix)) {
    out.push_back(timed("mtr", pair_params(p, q), grid.to_string(),
                        [&] { return certify_mtr(p, q, grid, b.margin_floor); }));
  }
  if (!matrix) return out;

  const std::vector<std::pair<double, double>> uv = {{0.0, 1.0}, {0.5, 2.0}, {1.0, 5.0}};
  for (auto [u, v] : uv) {
    out.push_back(timed("mtr", {{"check", "ratio-in-p"}, {"u", u}, {"v", v}}, "tail p-set",
                        [&] { return certify_tail_ratio_in_p(u, v, d.tail_p_set); }));
  }
  out.push_back(timed(
      "mtr", {{"check", "log-ratio-integral"}, {"p", 1.0}, {"q", 2.0}, {"x", 1.5}},
      "gauss-legendre-15", [&] {
        const double lhs = log_tail_ratio(Dof::finite(1.0), Dof::finite(2.0), 1.5);
        const double rhs = gauss_legendre(
            [&](double s) { return tail_logderiv_r(s, 1.5, cfg); }, 1.0, 2.0, 15);
        const std::vector<GridValue> err = {{1.5, lhs - rhs}};
        return check_within(err, 1e-6);
      }));
  return out;
}

std::vector<TargetResult> run_sm(const Bindings& b, const Defaults& d, bool matrix) {
  const GridSpec grid = b.x_grid.value_or(d.sm_grid);
  const auto pairs = pairs_for(b, d, !matrix);
  std::vector<TargetResult> out;
  for (auto [p, q] : pairs) {
    out.push_back(timed("sm", pair_params(p, q), grid.to_string(),
                        [&] { return certify_sm(p, q, grid, b.margin_floor); }));
  }
  if (!matrix) return out;
  out.push_back(timed("sm", {{"check", "equality-at-zero"}}, "x=0", [&] {
    std::vector<GridValue> err;
    for (Dof p : d.tail_p_set) err.push_back({p.value(), tail(p, 0.0).tail - 0.5});
    return check_within(err, 1e-14);
  }));
  return out;
}

std::vector<TargetResult> run_stp2(const Bindings& b, const Defaults& d, bool matrix) {
  if (b.p || b.q || b.y1 || b.y2) {
    if (!(b.p && b.q && b.y1 && b.y2)) {
      throw PreconditionError("stp2 requires all of --p, --q, --y1, --y2 (or none)");
    }
    json params = pair_params(*b.p, *b.q);
    params["y1"] = *b.y1;
    params["y2"] = *b.y2;
    return {timed("stp2", params, "single", [&] {
      const std::vector<GridValue> v = {{0.0, stp2_minor(*b.p, *b.q, *b.y1, *b.y2)}};
      return check_positive(v, b.margin_floor);
    })};
  }
  const int n = b.tuples.value_or(d.stp2_tuples);
  const std::uint64_t seed = b.seed.value_or(d.stp2_seed);
  std::vector<TargetResult> out;
  out.push_back(timed("stp2", {{"tuples", n}, {"seed", seed}}, "random", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_p(std::log(0.1), std::log(100.0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> y(-10.0, 0.0);
    std::vector<GridValue> values;
    for (int i = 0; i < n; ++i) {
      Dof p1 = Dof::finite(std::exp(log_p(rng)));
      Dof p2 = unit(rng) < 0.2 ? Dof::infinite() : Dof::finite(std::exp(log_p(rng)));
      double y1 = y(rng);
      double y2 = y(rng);
      if (p2 < p1) std::swap(p1, p2);
      if (y2 < y1) std::swap(y1, y2);
      if (!(p1 < p2) || !(y1 < y2)) {
        --i;
        continue;
      }
      values.push_back({static_cast<double>(i), stp2_minor(p1, p2, y1, y2)});
    }
    return check_positive(values, b.margin_floor);
  }));
  if (matrix) {
    out.push_back(timed("stp2", {{"check", "hand-value"}, {"p", 1.0}, {"q", 2.0}, {"y1", -1.0},
                                 {"y2", 0.0}},
                        "single", [&] {
                          const double v = stp2_minor(Dof::finite(1), Dof::finite(2), -1.0, 0.0);
                          const std::vector<GridValue> err = {{0.0, v - 0.0193376}};
                          return check_within(err, 1e-6);
                        }));
  }
  return out;
}

std::vector<TargetResult> run_mlr(const Bindings& b, const Defaults& d, bool matrix) {
  std::vector<std::pair<Dof, Dof>> pairs;
  if (b.p || b.q || !matrix) {
    pairs = pairs_for(b, d, true);
  } else {
    pairs = d.mlr_pairs;
  }
  const GridSpec lo = b.grid_lo.value_or(d.mlr_grid_lo);
  const GridSpec hi = b.grid_hi.value_or(d.mlr_grid_hi);
  std::vector<TargetResult> out;
  for (auto [p, q] : pairs) {
    std::pair<MonotonicityReport, MonotonicityReport> reports;
    auto first = timed("mlr-shape", pair_params(p, q), lo.to_string(), [&] {
      reports = certify_partial_mlr(p, q, lo, hi);
      return reports.first;
    });
    first.params["segment"] = "increasing";
    out.push_back(first);
    TargetResult second = first;
    second.params["segment"] = "decreasing";
    second.grid = hi.to_string();
    second.report = reports.second;
    out.push_back(second);
  }
  return out;
}

// ---------------------------------------------------------------- moments

std::function<double(double)> power_rho(double s, double t) {
  return [s, t](double x) { return (t / s) * std::pow(std::max(x, 0.0), t - s); };
}

GridSpec default_moment_grid(const StieltjesMeasure& mu, const Defaults& d) {
  if (mu.family.kind == MeasureFamily::Kind::custom) return d.moment_p_grid;
  const double pb = finiteness_threshold(mu.family).p_b;
  if (pb <= 0.0) return {0.5, 50.0, d.moment_p_grid.count, Spacing::logarithmic};
  const double lo = pb + std::max(1.0, pb);
  return {lo, lo + 100.0, d.moment_p_grid.count, Spacing::logarithmic};
}

std::vector<TargetResult> run_cor1(const Bindings& b, const Defaults& d,
                                   const QuadratureConfig& cfg, bool matrix) {
  std::vector<TargetResult> out;
  if (!matrix) {
    if (!b.measure) throw PreconditionError("cor1 requires --measure");
    const StieltjesMeasure mu = parse_measure(*b.measure);
    const GridSpec grid = b.p_grid.value_or(default_moment_grid(mu, d));
    out.push_back(timed("cor1", {{"measure", mu.description}, {"include_inf", b.include_infinite}},
                        grid.to_string(), [&] {
                          return certify_moment_monotone(mu, grid, b.include_infinite, cfg);
                        }));
    return out;
  }

  for (double s : d.power_s) {
    const auto ps = p_ladder(s + 0.05, s + 100.0, d.power_p_count);
    out.push_back(timed("cor1", {{"check", "power-moment"}, {"s", s}},
                        "ladder s+0.05..s+100 + inf",
                        [&] { return certify_power_moment_monotone(s, ps); }));
    out.push_back(timed("cor1", {{"check", "divergence-flag"}, {"s", s}}, "p in {s/2, s}", [&] {
      std::vector<std::pair<double, bool>> ok;
      for (double p : {0.5 * s, s}) {
        const Dof dof = Dof::finite(p);
        ok.emplace_back(p, power_moment(dof, s).is_infinite() &&
                               generalized_moment(dof, power_measure(s), cfg).is_infinite());
      }
      return boolean_check(ok);
    }));
  }
  out.push_back(timed("cor1", {{"check", "second-moment-closed-form"}}, "p in {2.5,3,4,10,100}",
                      [&] {
                        std::vector<GridValue> err;
                        for (double p : {2.5, 3.0, 4.0, 10.0, 100.0}) {
                          err.push_back({p, power_moment(Dof::finite(p), 2.0).value() -
                                                p / (p - 2.0)});
                        }
                        return check_within(err, 1e-9);
                      }));
  const GridSpec grid = d.moment_p_grid;
  out.push_back(timed("cor1", {{"measure", "pow:2"}}, grid.to_string(), [&] {
    return certify_moment_monotone(power_measure(2.0), grid, false, cfg);
  }));
  const GridSpec ind_grid{0.5, 50.0, grid.count, Spacing::logarithmic};
  out.push_back(timed("cor1", {{"measure", "ind:1"}}, ind_grid.to_string(), [&] {
    return certify_moment_monotone(indicator_measure(1.0), ind_grid, false, cfg);
  }));
  out.push_back(timed("cor1", {{"check", "powlog-boundary-finite"}}, "p = s in {1, 2}", [&] {
    std::vector<std::pair<double, bool>> ok;
    for (double s : {1.0, 2.0}) {
      const ExtendedReal m = generalized_moment(Dof::finite(s), power_log_measure(s), cfg);
      ok.emplace_back(s, m.is_finite() && m.value() > 0.0);
    }
    return boolean_check(ok);
  }));
  return out;
}

std::vector<TargetResult> run_cor2(const Bindings& b, const Defaults& d,
                                   const QuadratureConfig& cfg, bool matrix) {
  std::vector<TargetResult> out;
  if (!matrix) {
    if (!b.measure_a || !b.measure_b) {
      throw PreconditionError("cor2 requires --measure-a and --measure-b");
    }
    const StieltjesMeasure mu_a = parse_measure(*b.measure_a);
    const StieltjesMeasure mu_b = parse_measure(*b.measure_b);
    if (mu_a.family.kind != MeasureFamily::Kind::power ||
        mu_b.family.kind != MeasureFamily::Kind::power) {
      throw UnsupportedError("cor2 on the command line derives rho only for pow:s / pow:t");
    }
    const double s = mu_a.family.parameter;
    const double t = mu_b.family.parameter;
    if (!(s < t)) throw OrderingError("require s < t for pow:s / pow:t");
    const GridSpec grid = b.p_grid.value_or(default_moment_grid(mu_b, d));
    out.push_back(timed("cor2",
                        {{"measure_a", mu_a.description},
                         {"measure_b", mu_b.description},
                         {"include_inf", b.include_infinite}},
                        grid.to_string(), [&] {
                          return certify_ratio_monotone(mu_a, mu_b, power_rho(s, t), grid,
                                                        b.include_infinite, cfg);
                        }));
    return out;
  }

  for (auto [s, t] : d.power_ratio_st) {
    const auto ps = p_ladder(t + 0.05, t + 100.0, d.power_p_count);
    out.push_back(timed("cor2", {{"check", "power-ratio"}, {"s", s}, {"t", t}},
                        "ladder t+0.05..t+100 + inf",
                        [&] { return certify_power_ratio_monotone(s, t, ps); }));
  }
  const GridSpec grid = d.moment_p_grid;
  out.push_back(timed("cor2", {{"measure_a", "pow:1"}, {"measure_b", "pow:2"}},
                      grid.to_string(), [&] {
                        return certify_ratio_monotone(power_measure(1.0), power_measure(2.0),
                                                      power_rho(1.0, 2.0), grid, false, cfg);
                      }));
  out.push_back(timed("cor2", {{"check", "correlation-identity"}}, "3 atoms", [&] {
    const std::vector<Atom> atoms = {{0.5, 1.0}, {1.5, 0.7}, {3.0, 0.3}};
    auto rho = [](double x) { return x * x; };
    std::vector<GridValue> err;
    const std::vector<std::pair<Dof, Dof>> pairs = {
        {Dof::finite(1.0), Dof::finite(2.0)},
        {Dof::finite(0.5), Dof::infinite()},
        {Dof::finite(3.0), Dof::finite(10.0)}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto sides = ratio_difference_identity(pairs[i].first, pairs[i].second, atoms, rho);
      err.push_back({static_cast<double>(i), sides.lhs - sides.rhs});
    }
    return check_within(err, 1e-10);
  }));
  return out;
}

// ---------------------------------------------------------------- prop 1 and 2

std::vector<TargetResult> run_prop1(Prop1Part part, const Bindings& b, const Defaults& d,
                                    const QuadratureConfig& cfg, bool matrix) {
  const GridSpec grid = b.p_grid.value_or(d.prop1_p_grid);
  const std::string label = grid.to_string() + " + inf";
  std::vector<TargetResult> out;
  if (part == Prop1Part::i || part == Prop1Part::ii) {
    const bool below = part == Prop1Part::i;
    const std::string name = below ? "prop1-i" : "prop1-ii";
    const ScalarFunction fn = parse_function(b.fn.value_or(below ? "pow:1" : "cap:1"));
    out.push_back(timed(name, {{"b", fn.description}}, label,
                        [&] { return certify_conditional(part, fn, grid, cfg); }));
    if (matrix && below) {
      out.push_back(timed(name, {{"check", "reduction-to-iii"}, {"b", fn.description}}, label,
                          [&] {
                            const PlusPartSpec spec(Side::below, indicator_fn(0.0), fn);
                            std::vector<GridValue> err;
                            auto ps = grid.points();
                            for (double p : ps) {
                              const Dof dof = Dof::finite(p);
                              err.push_back({p, conditional_below(dof, fn, cfg) -
                                                    plus_ratio(dof, spec, cfg)});
                            }
                            return check_within(err, 1e-9);
                          }));
    }
    return out;
  }

  const bool below = part == Prop1Part::iii;
  const std::string name = below ? "prop1-iii" : "prop1-iv";
  std::vector<std::pair<std::string, std::string>> specs;
  if (b.a || b.r) {
    if (!(b.a && b.r)) throw PreconditionError(name + " requires both --a and --r");
    specs.emplace_back(*b.a, *b.r);
  } else if (below) {
    specs.emplace_back("pow:1", "pow:1");
  } else {
    specs.emplace_back("cap:1", "cap:1");
    specs.emplace_back("ind:0.5", "cap:2");
  }
  for (const auto& [a_text, r_text] : specs) {
    const PlusPartSpec spec(below ? Side::below : Side::above, parse_function(a_text),
                            parse_function(r_text));
    out.push_back(timed(name, {{"a", spec.a().description}, {"r", spec.r().description}}, label,
                        [&] { return certify_plus_ratio(spec, grid, cfg); }));
  }
  return out;
}

std::vector<TargetResult> run_prop2(int part, const Bindings& b, const Defaults& d,
                                    const QuadratureConfig& cfg, bool matrix) {
  const GridSpec grid = b.p_grid.value_or(d.prop2_p_grid);
  if (grid.lo < 1.0) throw PreconditionError("prop2 p-grid must lie in [1, inf)");
  const std::string label = grid.to_string() + " + inf";
  std::vector<TargetResult> out;
  if (part == 1) {
    std::vector<std::string> fns;
    if (b.fn) {
      fns.push_back(*b.fn);
    } else {
      fns = {"shiftind:0.5", "cap:1", "tanhstep"};
    }
    for (const auto& text : fns) {
      const ScalarFunction fn = parse_function(text);
      out.push_back(timed("prop2-i", {{"b", fn.description}}, label,
                          [&] { return certify_z_moment(fn, grid, cfg); }));
    }
    if (matrix) {
      const std::vector<double> ps = {1.0, 2.0, 3.5, 10.0, 100.0};
      out.push_back(timed("prop2-i", {{"check", "chi-normalization"}}, "p in {1,2,3.5,10,100}",
                          [&] {
                            std::vector<GridValue> err;
                            for (double p : ps) {
                              err.push_back({p, chi_moment(p, constant_fn(1.0), cfg) - 1.0});
                            }
                            return check_within(err, 1e-9);
                          }));
      out.push_back(timed("prop2-i", {{"check", "chi-second-moment"}}, "p in {1,2,3.5,10,100}",
                          [&] {
                            std::vector<GridValue> err;
                            const ScalarFunction square([](double x) { return x * x; });
                            for (double p : ps) err.push_back({p, chi_moment(p, square, cfg) - p});
                            return check_within(err, 1e-8);
                          }));
    }
    return out;
  }
  std::vector<std::pair<std::string, std::string>> specs;
  if (b.a || b.r) {
    if (!(b.a && b.r)) throw PreconditionError("prop2-ii requires both --a and --r");
    specs.emplace_back(*b.a, *b.r);
  } else {
    specs = {{"ind:0", "cap:1"}, {"abscap:1", "tanhstep"}};
  }
  for (const auto& [a_text, r_text] : specs) {
    const ScalarFunction a = parse_function(a_text);
    const ScalarFunction r = parse_function(r_text);
    out.push_back(timed("prop2-ii", {{"a", a.description}, {"r", r.description}}, label,
                        [&] { return certify_z_ratio(a, r, grid, cfg); }));
  }
  return out;
}

// ---------------------------------------------------------------- proof steps

std::vector<TargetResult> run_lemma1(const Bindings& b, const Defaults& d,
                                     const QuadratureConfig& cfg) {
  const GridSpec grid = b.p_grid.value_or(d.lemma_p_grid);
  std::vector<double> lhs, rhs;
  const auto ps = grid.points();
  std::vector<TargetResult> out;
  out.push_back(timed("lemma1", {{"check", "identity"}}, grid.to_string(), [&] {
    std::vector<GridValue> err;
    for (double p : ps) {
      lhs.push_back(lemma1_lhs(p));
      rhs.push_back(lemma1_rhs(p, cfg));
      err.push_back({p, lhs.back() - rhs.back()});
    }
    return check_within(err, 1e-9);
  }));
  out.push_back(timed("lemma1", {{"check", "positivity"}}, grid.to_string(), [&] {
    std::vector<GridValue> v;
    for (std::size_t i = 0; i < ps.size(); ++i) v.push_back({ps[i], std::min(lhs[i], rhs[i])});
    return check_positive(v);
  }));
  out.push_back(timed("lemma1", {{"check", "anchor-p1"}}, "p=1", [&] {
    const double exact = 2.0 * std::numbers::ln2 - 1.0;
    const std::vector<GridValue> err = {{1.0, lemma1_lhs(1.0) - exact},
                                        {1.0, lemma1_rhs(1.0, cfg) - exact}};
    return check_within(err, 1e-10);
  }));
  return out;
}

std::vector<TargetResult> run_rho_prime(const Bindings& b, const Defaults& d) {
  const GridSpec grid = b.x_grid.value_or(d.rho_prime_x_grid);
  std::vector<double> ps = d.rho_prime_p;
  if (b.p) ps = {b.p->value()};
  std::vector<TargetResult> out;
  for (double p : ps) {
    if (!std::isfinite(p)) throw PreconditionError("rho-prime requires finite p");
    out.push_back(timed("rho-prime", {{"p", p}, {"check", "finite-difference"}},
                        grid.to_string(), [&] {
                          std::vector<GridValue> err;
                          const double h = 1e-5;
                          for (double x : grid.points()) {
                            const double fd =
                                (dlogdensity_dp(p, x + h) - dlogdensity_dp(p, x - h)) / (2 * h);
                            err.push_back({x, rho_prime(p, x) - fd});
                          }
                          return check_within(err, 1e-6);
                        }));
    out.push_back(timed("rho-prime", {{"p", p}, {"check", "sign-pattern"}}, grid.to_string(),
                        [&] {
                          // rho'(x) (1 - x) > 0 off x = 1 and rho'(1) == 0.
                          std::vector<GridValue> v;
                          for (double x : grid.points()) {
                            if (x != 1.0) v.push_back({x, rho_prime(p, x) * (1.0 - x)});
                          }
                          auto rep = check_positive(v);
                          const std::vector<GridValue> at_one = {{1.0, rho_prime(p, 1.0)}};
                          const std::vector<MonotonicityReport> parts = {rep,
                                                                         check_within(at_one, 0.0)};
                          auto combined = combine(parts);
                          combined.direction = Direction::strictly_positive;
                          return combined;
                        }));
  }
  return out;
}

std::vector<TargetResult> run_r_decreasing(const Bindings& b, const Defaults& d,
                                           const QuadratureConfig& cfg) {
  const GridSpec grid = b.x_grid.value_or(d.r_x_grid);
  std::vector<double> ps = d.r_p;
  if (b.p) ps = {b.p->value()};
  std::vector<TargetResult> out;
  for (double p : ps) {
    if (!std::isfinite(p)) throw PreconditionError("r-decreasing requires finite p");
    double r0 = 0.0;
    double r1 = 0.0;
    out.push_back(timed("r-decreasing", {{"p", p}}, grid.to_string(), [&] {
      std::vector<GridValue> v;
      for (double x : grid.points()) v.push_back({x, tail_logderiv_r(p, x, cfg)});
      r0 = tail_logderiv_r(p, 0.0, cfg);
      r1 = v.front().value;
      return check_monotone(v, Direction::strictly_decreasing, b.margin_floor);
    }));
    out.push_back(timed("r-decreasing", {{"p", p}, {"check", "r-at-zero"}}, "x=0", [&] {
      const std::vector<GridValue> err = {{0.0, r0}};
      return check_within(err, 1e-8);
    }));
    out.push_back(timed("r-decreasing", {{"p", p}, {"check", "initial-slope"}},
                        "x in {0, grid.lo}", [&] {
                          const std::vector<GridValue> v = {{grid.lo, r0 - r1}};
                          return check_positive(v);
                        }));
  }
  return out;
}

// ---------------------------------------------------------------- oracles

std::vector<TargetResult> run_oracle_tail(const Defaults& d, const QuadratureConfig& cfg) {
  std::vector<TargetResult> out;
  for (double p : d.oracle_p) {
    out.push_back(timed("oracle-tail", {{"p", p}}, d.oracle_x_grid.to_string(), [&] {
      const Dof dof = Dof::finite(p);
      std::vector<GridValue> err;
      for (double x : d.oracle_x_grid.points()) {
        const double closed = tail(dof, x).tail;
        if (closed < 1e-12) continue;
        err.push_back({x, (tail_quadrature_oracle(dof, x, cfg) - closed) / closed});
      }
      return check_within(err, 1e-9);
    }));
  }
  return out;
}

std::vector<TargetResult> run_oracle_moment(const QuadratureConfig& cfg) {
  std::vector<TargetResult> out;
  auto compare = [&](const MeasureFamily& fam, const std::vector<Dof>& ps) {
    const StieltjesMeasure mu = measure_from_family(fam);
    const ScalarFunction b = cumulative_function(fam);
    out.push_back(timed("oracle-moment", {{"measure", mu.description}}, "p set", [&] {
      std::vector<GridValue> err;
      for (Dof p : ps) {
        const ExtendedReal lhs = generalized_moment(p, mu, cfg);
        const ExtendedReal rhs = direct_moment_oracle(p, b, cfg);
        const double rel = (lhs.is_finite() && rhs.is_finite())
                               ? (lhs.value() - rhs.value()) / rhs.value()
                               : 1.0;
        err.push_back({p.value(), rel});
      }
      return check_within(err, 1e-8);
    }));
  };
  for (double s : {0.5, 1.0, 2.0, 3.0}) {
    compare({MeasureFamily::Kind::power, s},
            {Dof::finite(s + 1.0), Dof::finite(2.0 * s + 2.0), Dof::infinite()});
  }
  for (double c : {0.5, 1.0, 2.0}) {
    compare({MeasureFamily::Kind::indicator, c}, {Dof::finite(1.0), Dof::finite(5.0)});
  }
  return out;
}

std::vector<TargetResult> dispatch(std::string_view target, const Bindings& b,
                                   const Defaults& d, const QuadratureConfig& cfg,
                                   bool matrix) {
  if (target == "mtr") return run_mtr(b, d, cfg, matrix);
  if (target == "sm") return run_sm(b, d, matrix);
  if (target == "stp2") return run_stp2(b, d, matrix);
  if (target == "mlr-shape") return run_mlr(b, d, matrix);
  if (target == "cor1") return run_cor1(b, d, cfg, matrix);
  if (target == "cor2") return run_cor2(b, d, cfg, matrix);
  if (target == "prop1-i") return run_prop1(Prop1Part::i, b, d, cfg, matrix);
  if (target == "prop1-ii") return run_prop1(Prop1Part::ii, b, d, cfg, matrix);
  if (target == "prop1-iii") return run_prop1(Prop1Part::iii, b, d, cfg, matrix);
  if (target == "prop1-iv") return run_prop1(Prop1Part::iv, b, d, cfg, matrix);
  if (target == "prop2-i") return run_prop2(1, b, d, cfg, matrix);
  if (target == "prop2-ii") return run_prop2(2, b, d, cfg, matrix);
  if (target == "lemma1") return run_lemma1(b, d, cfg);
  if (target == "rho-prime") return run_rho_prime(b, d);
  if (target == "r-decreasing") return run_r_decreasing(b, d, cfg);
  if (target == "oracle-tail") return run_oracle_tail(d, cfg);
  if (target == "oracle-moment") return run_oracle_moment(cfg);
  throw PreconditionError("unknown target '" + std::string(target) + "'");
}

GridSpec densify(GridSpec g, int factor) {
  g.count *= factor;
  return g;
}

}  // namespace

Profile parse_profile(std::string_view text) {
  if (text == "quick") return Profile::quick;
  if (text == "full") return Profile::full;
  throw PreconditionError("profile must be 'quick' or 'full'");
}

std::string to_string(Profile p) { return p == Profile::quick ? "quick" : "full"; }

Defaults Defaults::for_profile(Profile profile) {
  Defaults d;
  d.tail_p_set = dofs({0.3, 0.5, 1, 2, 3, 5, 10, 50}, true);
  d.mtr_grid = {0.0, 10.0, 200, Spacing::linear};
  d.sm_grid = {0.08, 8.0, 100, Spacing::linear};
  d.mlr_pairs = {{Dof::finite(1), Dof::finite(2)},
                 {Dof::finite(1), Dof::infinite()},
                 {Dof::finite(2), Dof::finite(7)}};
  d.mlr_grid_lo = {0.0, 1.0, 50, Spacing::linear};
  d.mlr_grid_hi = {1.0, 6.0, 100, Spacing::linear};
  d.power_s = {0.5, 1.0, 2.0};
  d.power_ratio_st = {{0.5, 1.0}, {1.0, 2.0}, {1.0, 3.0}};
  d.moment_p_grid = {3.0, 100.0, 12, Spacing::logarithmic};
  d.prop1_p_grid = {0.3, 300.0, 12, Spacing::logarithmic};
  d.prop2_p_grid = {1.0, 300.0, 12, Spacing::logarithmic};
  d.lemma_p_grid = {0.01, 1000.0, 40, Spacing::logarithmic};
  d.rho_prime_p = {1.0, 3.0, 10.0};
  d.rho_prime_x_grid = {0.1, 5.0, 50, Spacing::linear};
  d.r_p = {0.5, 1.0, 2.0, 5.0, 50.0};
  d.r_x_grid = {0.1, 10.0, 100, Spacing::linear};
  d.oracle_p = {0.5, 1.0, 2.5, 4.0, 30.0};
  d.oracle_x_grid = {0.0, 12.0, 25, Spacing::linear};
  if (profile == Profile::quick) return d;

  constexpr int k = 5;
  const auto extra = dofs({0.4, 0.75, 1.5, 2.5, 4, 7, 20, 100, 200}, false);
  d.tail_p_set.insert(d.tail_p_set.end() - 1, extra.begin(), extra.end());
  std::sort(d.tail_p_set.begin(), d.tail_p_set.end());
  d.mtr_grid = densify(d.mtr_grid, k);
  d.sm_grid = {0.016, 8.0, 500, Spacing::linear};
  d.stp2_tuples *= 2;
  d.mlr_pairs.push_back({Dof::finite(0.5), Dof::finite(3)});
  d.mlr_pairs.push_back({Dof::finite(3), Dof::infinite()});
  d.mlr_pairs.push_back({Dof::finite(5), Dof::finite(50)});
  d.mlr_grid_lo = densify(d.mlr_grid_lo, k);
  d.mlr_grid_hi = densify(d.mlr_grid_hi, k);
  d.power_s.insert(d.power_s.end(), {0.75, 1.5, 3.0});
  d.power_ratio_st.insert(d.power_ratio_st.end(), {{0.25, 0.75}, {1.5, 2.5}, {2.0, 4.0}});
  d.power_p_count *= k;
  d.moment_p_grid = densify(d.moment_p_grid, k);
  d.prop1_p_grid = densify(d.prop1_p_grid, k);
  d.prop2_p_grid = densify(d.prop2_p_grid, k);
  d.lemma_p_grid = densify(d.lemma_p_grid, k);
  d.rho_prime_p.insert(d.rho_prime_p.end(), {0.5, 2.0, 30.0});
  d.rho_prime_x_grid = densify(d.rho_prime_x_grid, k);
  d.r_p.insert(d.r_p.end(), {0.3, 1.5, 3.0, 10.0, 100.0});
  d.r_x_grid = densify(d.r_x_grid, k);
  d.oracle_p.insert(d.oracle_p.end(), {0.7, 1.5, 3.0, 6.0, 12.0});
  d.oracle_x_grid = densify(d.oracle_x_grid, k);
  return d;
}

const std::vector<std::string>& target_names() {
  static const std::vector<std::string> names = {
      "mtr",      "sm",        "stp2",     "mlr-shape", "cor1",         "cor2",
      "prop1-i",  "prop1-ii",  "prop1-iii", "prop1-iv", "prop2-i",      "prop2-ii",
      "lemma1",   "rho-prime", "r-decreasing", "oracle-tail", "oracle-moment"};
  return names;
}

std::vector<TargetResult> certify_target(std::string_view target, const Bindings& bindings,
                                         const Defaults& defaults,
                                         const QuadratureConfig& cfg) {
  return dispatch(target, bindings, defaults, cfg, false);
}

std::vector<TargetResult> run_matrix(const Defaults& defaults, const QuadratureConfig& cfg) {
  std::vector<TargetResult> out;
  for (const auto& name : target_names()) {
    auto part = dispatch(name, Bindings{}, defaults, cfg, true);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

int exit_status(const std::vector<TargetResult>& results) {
  for (const auto& r : results) {
    if (!r.report.certified()) return 2;
  }
  return 0;
}

}  // namespace studentt
