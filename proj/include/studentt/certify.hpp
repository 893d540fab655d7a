#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "studentt/monotonicity.hpp"
#include "studentt/quadrature.hpp"
#include "studentt/student.hpp"

namespace studentt {

enum class Profile { quick, full };

Profile parse_profile(std::string_view text);
std::string to_string(Profile p);

/// Every default used by the certification matrix, in one place.
///
/// quick                                   full
///   tail pairs: all p < q from             the quick set plus
///     {0.3,0.5,1,2,3,5,10,50,inf}            {0.4,0.75,1.5,2.5,4,7,20,100,200}
///   MTR x-grid 0:10:200                    0:10:1000
///   SM x-grid 0.08:8:100 (x = 0 separate)  0.016:8:500
///   STP2: 100 tuples, seed 20130101        200 tuples, same seed
///   MLR pairs (1,2),(1,inf),(2,7);         plus (0.5,3),(3,inf),(5,50)
///     grids 0:1:50 and 1:6:100               0:1:250 and 1:6:500
///   Cor. 1/2 power s in {0.5,1,2};         plus {0.75,1.5,3}
///     (s,t) in {(0.5,1),(1,2),(1,3)}         plus {(0.25,0.75),(1.5,2.5),(2,4)}
///     p-grid per s: s+0.05 .. s+100, 20      100 points
///     log points, then inf
///   moment p-grid 3:100:12:log             3:100:60:log
///   Prop. 1 p-grid 0.3:300:12:log + inf    0.3:300:60:log + inf
///   Prop. 2 p-grid 1:300:12:log + inf      1:300:60:log + inf
///   Lemma p-grid 0.01:1000:40:log          0.01:1000:200:log
///   rho' p in {1,3,10}, x 0.1:5:50         plus {0.5,2,30}, x 0.1:5:250
///   r p in {0.5,1,2,5,50}, x 0.1:10:100    plus {0.3,1.5,3,10,100}, 0.1:10:500
struct Defaults {
  std::vector<Dof> tail_p_set;
  GridSpec mtr_grid;
  GridSpec sm_grid;
  int stp2_tuples = 100;
  std::uint64_t stp2_seed = 20130101;
  std::vector<std::pair<Dof, Dof>> mlr_pairs;
  GridSpec mlr_grid_lo;
  GridSpec mlr_grid_hi;
  std::vector<double> power_s;
  std::vector<std::pair<double, double>> power_ratio_st;
  int power_p_count = 20;
  GridSpec moment_p_grid;
  GridSpec prop1_p_grid;
  GridSpec prop2_p_grid;
  GridSpec lemma_p_grid;
  std::vector<double> rho_prime_p;
  GridSpec rho_prime_x_grid;
  std::vector<double> r_p;
  GridSpec r_x_grid;
  std::vector<double> oracle_p;
  GridSpec oracle_x_grid;

  static Defaults for_profile(Profile profile);
};

// Target identifiers accepted by certify.
const std::vector<std::string>& target_names();

/// Optional parameter bindings for a single certify run. Targets that need a
/// binding (p and q for mtr, a measure for cor1, ...) throw PreconditionError
/// when it is missing; everything else falls back to Defaults.
struct Bindings {
  std::optional<Dof> p;
  std::optional<Dof> q;
  std::optional<GridSpec> x_grid;
  std::optional<GridSpec> p_grid;
  std::optional<GridSpec> grid_lo;
  std::optional<GridSpec> grid_hi;
  std::optional<double> y1;
  std::optional<double> y2;
  std::optional<int> tuples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> measure;
  std::optional<std::string> measure_a;
  std::optional<std::string> measure_b;
  std::optional<std::string> fn;
  std::optional<std::string> a;
  std::optional<std::string> r;
  double margin_floor = 0.0;
  bool include_infinite = false;
};

struct TargetResult {
  std::string target;
  nlohmann::json params = nlohmann::json::object();
  std::string grid;
  MonotonicityReport report;
  double wall_time_ms = 0.0;
};

// One certify run with explicit bindings.
std::vector<TargetResult> certify_target(std::string_view target, const Bindings& bindings,
                                         const Defaults& defaults,
                                         const QuadratureConfig& cfg = {});

// The whole matrix: every target over its default parameter sets.
std::vector<TargetResult> run_matrix(const Defaults& defaults,
                                     const QuadratureConfig& cfg = {});

// 0 when every report is certified, 2 otherwise.
int exit_status(const std::vector<TargetResult>& results);

// Serialization (report.cpp).
nlohmann::json to_json(const TargetResult& result);
nlohmann::json aggregate_json(const std::vector<TargetResult>& results, Profile profile,
                              double wall_time_ms);

/// Canonical JSON text: keys sorted, no whitespace, floats printed with 17
/// significant digits (always with a '.' or exponent), non-finite as null.
/// Parsing the output and dumping again reproduces it byte for byte.
std::string canonical_dump(const nlohmann::json& value);

// One row per (target, parameter tuple).
std::string to_csv(const std::vector<TargetResult>& results);

}  // namespace studentt
