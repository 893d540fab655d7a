#include <doctest.h>

#include <json.hpp>

#include "studentt/certify.hpp"
#include "studentt/error.hpp"

using namespace studentt;
using nlohmann::json;

TEST_CASE("defaults table") {
  const Defaults q = Defaults::for_profile(Profile::quick);
  CHECK(q.tail_p_set.size() == 9);
  CHECK(q.tail_p_set.back() == Dof::infinite());
  CHECK(q.mtr_grid.to_string() == "0:10:200");
  CHECK(q.lemma_p_grid.to_string() == "0.01:1000:40:log");
  CHECK(q.stp2_tuples == 100);
  const Defaults f = Defaults::for_profile(Profile::full);
  CHECK(f.tail_p_set.size() == 18);
  CHECK(f.mtr_grid.count == 5 * q.mtr_grid.count);
  CHECK(f.prop1_p_grid.count == 5 * q.prop1_p_grid.count);
  CHECK(std::is_sorted(f.tail_p_set.begin(), f.tail_p_set.end()));
  CHECK(parse_profile("full") == Profile::full);
  CHECK_THROWS_AS(parse_profile("huge"), PreconditionError);
}

TEST_CASE("single-target bindings") {
  const Defaults d = Defaults::for_profile(Profile::quick);
  Bindings b;
  b.p = Dof::finite(1);
  b.q = Dof::infinite();
  auto r = certify_target("mtr", b, d);
  REQUIRE(r.size() == 1);
  CHECK(r[0].report.certified());
  CHECK(exit_status(r) == 0);

  b.p = Dof::finite(2);
  b.q = Dof::finite(1);
  CHECK_THROWS_AS(certify_target("mtr", b, d), OrderingError);
  CHECK_THROWS_AS(certify_target("cor1", Bindings{}, d), PreconditionError);
  CHECK_THROWS_AS(certify_target("bogus", Bindings{}, d), PreconditionError);

  Bindings tie;
  tie.p = Dof::finite(1);
  tie.q = Dof::finite(2);
  tie.x_grid = GridSpec{0, 8, 10};
  const auto sm = certify_target("sm", tie, d);
  CHECK(exit_status(sm) == 2);
  CHECK(sm[0].report.violations.front().index == 0);

  Bindings cor2;
  cor2.measure_a = "ind:1";
  cor2.measure_b = "pow:2";
  CHECK_THROWS_AS(certify_target("cor2", cor2, d), UnsupportedError);
}

TEST_CASE("canonical json") {
  CHECK(canonical_dump(json(1.0)) == "1.0");
  CHECK(canonical_dump(json(0.1)) == "0.10000000000000001");
  CHECK(canonical_dump(json(1e300)) == "1.0000000000000001e+300");
  CHECK(canonical_dump(json(std::numeric_limits<double>::infinity())) == "null");
  CHECK(canonical_dump(json{{"b", 1}, {"a", "x"}}) == "{\"a\":\"x\",\"b\":1}");

  const auto results = run_matrix(Defaults::for_profile(Profile::quick));
  const std::string text = canonical_dump(aggregate_json(results, Profile::quick, 12.5));
  CHECK(canonical_dump(json::parse(text)) == text);
  for (const auto& r : results) {
    const std::string one = canonical_dump(to_json(r));
    CHECK(canonical_dump(json::parse(one)) == one);
  }
  const json doc = json::parse(text);
  for (const char* key : {"target", "params", "grid", "status", "min_margin", "violations",
                          "evaluations", "wall_time_ms", "library_version"}) {
    CHECK(doc["reports"][0].contains(key));
  }

  const std::string csv = to_csv(results);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) ==
        results.size() + 1);
}
