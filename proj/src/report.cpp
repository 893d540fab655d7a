#include <cmath>
#include <cstdio>
#include <sstream>

#include "studentt/certify.hpp"
#include "studentt/version.hpp"

namespace studentt {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

json to_json(const TargetResult& result) {
  const auto& rep = result.report;
  json violations = json::array();
  for (const auto& v : rep.violations) {
    violations.push_back(
        {{"index", v.index}, {"left", finite_or_null(v.left)}, {"right", finite_or_null(v.right)}});
  }
  return {{"target", result.target},
          {"params", result.params},
          {"grid", result.grid},
          {"status", to_string(rep.status)},
          {"direction", to_string(rep.direction)},
          {"min_margin", finite_or_null(rep.min_margin)},
          {"violations", violations},
          {"evaluations", rep.evaluations},
          {"wall_time_ms", result.wall_time_ms},
          {"library_version", kLibraryVersion},
          {"notes", rep.notes}};
}

json aggregate_json(const std::vector<TargetResult>& results, Profile profile,
                    double wall_time_ms) {
  json reports = json::array();
  std::size_t violated = 0;
  json targets = json::array();
  for (const auto& r : results) {
    reports.push_back(to_json(r));
    if (!r.report.certified()) ++violated;
    if (targets.empty() || targets.back() != r.target) targets.push_back(r.target);
  }
  return {{"profile", to_string(profile)},
          {"library_version", kLibraryVersion},
          {"status", violated == 0 ? "certified" : "violated"},
          {"targets", targets},
          {"report_count", results.size()},
          {"violated_count", violated},
          {"wall_time_ms", wall_time_ms},
          {"reports", reports}};
}

std::string canonical_dump(const json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

std::string to_csv(const std::vector<TargetResult>& results) {
  std::ostringstream os;
  os << "target,params,grid,status,direction,min_margin,violations,evaluations,"
        "wall_time_ms,library_version\n";
  for (const auto& r : results) {
    os << csv_field(r.target) << ',' << csv_field(canonical_dump(r.params)) << ','
       << csv_field(r.grid) << ',' << to_string(r.report.status) << ','
       << to_string(r.report.direction) << ',' << format_double(r.report.min_margin) << ','
       << r.report.violations.size() << ',' << r.report.evaluations << ','
       << format_double(r.wall_time_ms) << ',' << kLibraryVersion << '\n';
  }
  return os.str();
}

}  // namespace studentt
