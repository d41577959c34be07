#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "a2bench/model.hpp"

using namespace a2bench;

namespace {

bool has_violation(const Violations& vs, const std::string& rule_fragment) {
  for (const auto& v : vs)
    if (v.rule.find(rule_fragment) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("TrainingCurve invariants") {
  TrainingCurve c;
  c.run_id = "s0";
  c.points = {{0, 1.0, {}}, {10, 2.0, {}}, {10, 3.0, {}}};
  CHECK(has_violation(validate(c), "strictly increasing"));

  c.points = {{0, 1.0, {}}, {10, 2.0, {}}};
  CHECK(validate(c).empty());

  c.points[1].value = std::nan("");
  CHECK(has_violation(validate(c), "finite"));
}

TEST_CASE("RunSet invariants") {
  RunSet rs;
  rs.task_id = "t";
  rs.algorithm_id = "a";
  CHECK(has_violation(validate(rs), "n >= 1"));

  rs.runs.push_back({"s0", {{0, 1.0, {}}}});
  rs.runs.push_back({"s0", {{0, 2.0, {}}}});
  CHECK(has_violation(validate(rs), "unique"));
}

TEST_CASE("RolloutSet invariants") {
  RolloutSet rs{"t", "a", {-1.0, -1.1}};
  CHECK(validate(rs).empty());

  rs.returns.push_back(INFINITY);
  CHECK(has_violation(validate(rs), "finite"));

  CHECK(has_violation(validate(RolloutSet{"t", "a", {}}), "m >= 1"));
}

TEST_CASE("TelemetryTrace invariants") {
  TelemetryTrace tr;
  tr.samples = {{0.0, 100.0, 0.0, 1000}, {1.0, 100.0, 0.0, 1000}};
  tr.wall_clock_s = 1.0;
  CHECK(validate(tr).empty());

  tr.wall_clock_s = 0.5;
  CHECK(has_violation(validate(tr), ">= sample span"));

  tr.wall_clock_s = 1.0;
  tr.samples[1].t_s = -0.5;
  CHECK(has_violation(validate(tr), "non-decreasing"));
}

TEST_CASE("SubmissionBundle invariants") {
  SubmissionBundle b;
  b.gpu_model = "g";
  b.framework = "f";
  b.runtime_version = "v";
  b.os = "o";
  b.num_seeds = 1;
  const auto vs = validate(b);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].field == "cpu_model");
  CHECK(vs[0].rule == "non-empty");

  b.cpu_model = "c";
  CHECK(validate(b).empty());

  b.num_seeds = 0;
  CHECK(has_violation(validate(b), ">= 1"));
}

TEST_CASE("WebsiteSpec invariants") {
  WebsiteSpec w;
  w.website_id = "w0";
  PageSpec page;
  page.primitives = {{"text_field", PrimitiveKind::active},
                     {"ad_banner", PrimitiveKind::passive}};
  w.pages = {page};
  w.difficulty_nats = std::log(2.0);
  CHECK(validate(w).empty());

  SECTION("difficulty must match the page sum") {
    w.difficulty_nats = 1.0;
    CHECK(has_violation(validate(w), "sum of page difficulties"));
  }
  SECTION("control primitives are not stored on pages") {
    w.pages[0].primitives.push_back({"stop", PrimitiveKind::control});
    CHECK(has_violation(validate(w), "not stored"));
  }
  SECTION("pages need at least one content primitive") {
    w.pages[0].primitives.clear();
    CHECK(has_violation(validate(w), "n_active + n_passive >= 1"));
  }
}

TEST_CASE("validation is deterministic") {
  TrainingCurve c;
  c.run_id = "s0";
  c.points = {{5, 1.0, {}}, {5, 2.0, {}}};
  const auto first = validate(c);
  const auto second = validate(c);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].field == second[i].field);
    CHECK(first[i].rule == second[i].rule);
  }
}
