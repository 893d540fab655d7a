#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "studentt/certify.hpp"
#include "studentt/chi.hpp"
#include "studentt/error.hpp"
#include "studentt/moments.hpp"
#include "studentt/student.hpp"
#include "studentt/version.hpp"

using namespace studentt;
using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"eval", "certify", "moments", "report-all"};

Dof parse_dof(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "+inf") return Dof::infinite();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse degrees of freedom '" + text + "'");
  }
  if (used != text.size()) throw DomainError("cannot parse degrees of freedom '" + text + "'");
  return Dof::finite(v);
}

json dof_json(Dof p) { return p.is_infinite() ? json("inf") : json(p.value()); }

json extended_json(const ExtendedReal& v) {
  return v.is_finite() ? json(v.value()) : json(nullptr);
}

// Flat "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    for (auto& c : key) {
      if (c == '_') c = '-';
    }
    out.emplace_back(key, value);
  }
  return out;
}

// Splices config-file settings in front of the real arguments so that flags
// given on the command line win.
std::vector<std::string> expand_args(int argc, char** argv) {
  std::vector<std::string> user(argv + 1, argv + argc);
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (user[i] == "--config" && i + 1 < user.size()) {
      config_path = user[i + 1];
      user.erase(user.begin() + static_cast<long>(i), user.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (user[i].rfind("--config=", 0) == 0) {
      config_path = user[i].substr(9);
      user.erase(user.begin() + static_cast<long>(i));
      break;
    }
  }
  if (!config_path) return user;

  std::optional<std::string> command;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (std::find(kCommands.begin(), kCommands.end(), user[i]) != kCommands.end()) {
      command = user[i];
      user.erase(user.begin() + static_cast<long>(i));
      break;
    }
  }
  std::vector<std::string> flags;
  for (const auto& [key, value] : read_config(*config_path)) {
    if (key == "command") {
      if (!command) command = value;
    } else {
      flags.push_back("--" + key + "=" + value);
    }
  }
  if (!command) throw PreconditionError("config file does not name a command");
  std::vector<std::string> out = {*command};
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), user.begin(), user.end());
  return out;
}

void emit(const json& doc) { std::cout << canonical_dump(doc) << '\n'; }

void emit_csv_row(const std::vector<std::pair<std::string, std::string>>& cells) {
  std::string header, row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      header += ',';
      row += ',';
    }
    header += cells[i].first;
    row += cells[i].second;
  }
  std::cout << header << '\n' << row << '\n';
}

std::string number_text(const json& v) { return v.is_null() ? "" : canonical_dump(v); }

struct EvalArgs {
  std::string dist = "student";
  std::string p = "inf";
  std::string what = "tail";
  double x = 0.0;
};

double evaluate(const EvalArgs& a, const QuadratureConfig& cfg) {
  if (a.dist == "chi") {
    const ChiDof p = ChiDof::finite(parse_dof(a.p).value());
    if (a.what != "density") throw UnsupportedError("chi supports --what density only");
    return chi_density(p.value(), a.x);
  }
  const Dof p = a.dist == "normal" ? Dof::infinite() : parse_dof(a.p);
  if (a.what == "density") return density(p, a.x);
  if (a.what == "log-density") return log_density(p, a.x);
  if (a.what == "tail") return tail(p, a.x).tail;
  if (a.what == "log-tail") return tail(p, a.x).log_tail;
  if (a.what == "tail-oracle") return tail_quadrature_oracle(p, a.x, cfg);
  if (p.is_infinite()) throw UnsupportedError("'" + a.what + "' requires finite p");
  if (a.what == "dlogdensity-dp") return dlogdensity_dp(p.value(), a.x);
  if (a.what == "rho-prime") return rho_prime(p.value(), a.x);
  if (a.what == "dtail-dp") return dtail_dp(p.value(), a.x, cfg);
  if (a.what == "r") return tail_logderiv_r(p.value(), a.x, cfg);
  throw UnsupportedError("unknown quantity '" + a.what + "'");
}

struct CertifyArgs {
  std::string target;
  std::string p, q;
  std::string x_grid, p_grid, grid_lo, grid_hi;
  std::optional<double> y1, y2;
  std::optional<int> tuples;
  std::optional<std::uint64_t> seed;
  std::string measure, measure_a, measure_b, fn, a, r;
  double margin_floor = 0.0;
  bool include_inf = false;
};

Bindings to_bindings(const CertifyArgs& c) {
  Bindings b;
  if (!c.p.empty()) b.p = parse_dof(c.p);
  if (!c.q.empty()) b.q = parse_dof(c.q);
  auto grid = [](const std::string& s) -> std::optional<GridSpec> {
    if (s.empty()) return std::nullopt;
    return GridSpec::parse(s);
  };
  auto text = [](const std::string& s) -> std::optional<std::string> {
    if (s.empty()) return std::nullopt;
    return s;
  };
  b.x_grid = grid(c.x_grid);
  b.p_grid = grid(c.p_grid);
  b.grid_lo = grid(c.grid_lo);
  b.grid_hi = grid(c.grid_hi);
  b.y1 = c.y1;
  b.y2 = c.y2;
  b.tuples = c.tuples;
  b.seed = c.seed;
  b.measure = text(c.measure);
  b.measure_a = text(c.measure_a);
  b.measure_b = text(c.measure_b);
  b.fn = text(c.fn);
  b.a = text(c.a);
  b.r = text(c.r);
  b.margin_floor = c.margin_floor;
  b.include_infinite = c.include_inf;
  return b;
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical certification of monotonicity properties of Student's t family",
               "studentt"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.footer("Grids: lo:hi:count[:log]. Degrees of freedom accept 'inf'.\n"
             "--config FILE reads flat 'key = value' lines (command = ..., p = ..., ...).");

  std::string output = "json";
  QuadratureConfig cfg;
  app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--abs-tol", cfg.abs_tol, "absolute quadrature tolerance")
      ->envname("STUDENTT_ABS_TOL");
  app.add_option("--rel-tol", cfg.rel_tol, "relative quadrature tolerance")
      ->envname("STUDENTT_REL_TOL");
  app.add_option("--max-subdivisions", cfg.max_subdivisions, "quadrature subdivision budget")
      ->envname("STUDENTT_MAX_SUBDIVISIONS");
  app.add_option("--tail-cut-tol", cfg.tail_cut_tol, "mass below which infinite ranges are cut")
      ->envname("STUDENTT_TAIL_CUT_TOL");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate one quantity at one point");
  eval->add_option("--dist", ev.dist)->check(CLI::IsMember({"student", "normal", "chi"}));
  eval->add_option("--p", ev.p, "degrees of freedom (number or inf)");
  eval->add_option("--what", ev.what,
                   "density|log-density|tail|log-tail|tail-oracle|dlogdensity-dp|rho-prime|"
                   "dtail-dp|r");
  eval->add_option("--x", ev.x)->required();

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "certify one target");
  certify->add_option("--target", ca.target)->required()->check(CLI::IsMember(target_names()));
  certify->add_option("--p", ca.p);
  certify->add_option("--q", ca.q);
  certify->add_option("--x-grid", ca.x_grid);
  certify->add_option("--p-grid", ca.p_grid);
  certify->add_option("--grid-lo", ca.grid_lo);
  certify->add_option("--grid-hi", ca.grid_hi);
  certify->add_option("--y1", ca.y1);
  certify->add_option("--y2", ca.y2);
  certify->add_option("--tuples", ca.tuples);
  certify->add_option("--seed", ca.seed);
  certify->add_option("--measure", ca.measure, "pow:s|powlog:s|ind:c|atoms:<csv>");
  certify->add_option("--measure-a", ca.measure_a);
  certify->add_option("--measure-b", ca.measure_b);
  certify->add_option("--fn", ca.fn, "function descriptor, e.g. pow:1, cap:1, tanhstep");
  certify->add_option("--a", ca.a);
  certify->add_option("--r", ca.r);
  certify->add_option("--margin-floor", ca.margin_floor);
  certify->add_flag("--include-inf", ca.include_inf, "append p = inf to the p-grid");

  std::string moment_p, moment_measure;
  auto* moments = app.add_subcommand("moments", "generalized moment E b(|T_p|)");
  moments->add_option("--p", moment_p)->required();
  moments->add_option("--measure", moment_measure)->required();

  std::string profile_text = "quick";
  auto* report_all = app.add_subcommand("report-all", "run the whole certification matrix");
  report_all->add_option("--profile", profile_text)->check(CLI::IsMember({"quick", "full"}));

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  std::vector<std::string> args = expand_args(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  cfg.validate();
  const bool csv = output == "csv";

  if (*eval) {
    const double value = evaluate(ev, cfg);
    const std::string p_text = ev.dist == "normal" ? "inf" : parse_dof(ev.p).to_string();
    if (csv) {
      emit_csv_row({{"dist", ev.dist}, {"p", p_text}, {"what", ev.what},
                    {"x", number_text(json(ev.x))}, {"value", number_text(json(value))}});
    } else {
      emit({{"dist", ev.dist},
            {"p", p_text == "inf" ? json("inf") : json(std::stod(p_text))},
            {"what", ev.what},
            {"x", ev.x},
            {"value", std::isfinite(value) ? json(value) : json(nullptr)},
            {"library_version", kLibraryVersion}});
    }
    return 0;
  }

  if (*certify) {
    const auto results = certify_target(ca.target, to_bindings(ca),
                                        Defaults::for_profile(Profile::quick), cfg);
    if (csv) {
      std::cout << to_csv(results);
    } else if (results.size() == 1) {
      emit(to_json(results.front()));
    } else {
      json all = json::array();
      for (const auto& r : results) all.push_back(to_json(r));
      emit(all);
    }
    return exit_status(results);
  }

  if (*moments) {
    const Dof p = parse_dof(moment_p);
    const StieltjesMeasure mu = parse_measure(moment_measure);
    const ExtendedReal value = generalized_moment(p, mu, cfg);
    json doc = {{"p", dof_json(p)},
                {"measure", mu.description},
                {"finite", value.is_finite()},
                {"generalized_moment", extended_json(value)},
                {"library_version", kLibraryVersion}};
    if (mu.family.kind != MeasureFamily::Kind::custom) {
      doc["direct_oracle"] = extended_json(
          direct_moment_oracle(p, cumulative_function(mu.family), cfg));
    }
    if (mu.family.kind == MeasureFamily::Kind::power) {
      doc["power_moment"] = extended_json(power_moment(p, mu.family.parameter));
    }
    if (csv) {
      emit_csv_row({{"p", p.to_string()},
                    {"measure", mu.description},
                    {"finite", value.is_finite() ? "true" : "false"},
                    {"generalized_moment", number_text(doc["generalized_moment"])}});
    } else {
      emit(doc);
    }
    return 0;
  }

  const Profile profile = parse_profile(profile_text);
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_matrix(Defaults::for_profile(profile), cfg);
  const double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (csv) {
    std::cout << to_csv(results);
  } else {
    emit(aggregate_json(results, profile, wall));
  }
  return exit_status(results);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "studentt: error: " << e.what() << '\n';
    return 1;
  }
}
