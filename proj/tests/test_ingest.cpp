#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "a2bench/ingest.hpp"
#include "a2bench/prng.hpp"

using namespace a2bench;

TEST_CASE("parse_training_curves: minimal valid file") {
  std::istringstream in(
      "{\"run_id\":\"s0\",\"step\":0,\"value\":1.0}\n"
      "{\"run_id\":\"s0\",\"step\":1,\"value\":2.0}\n");
  auto rs = parse_training_curves(in, "runs.jsonl");
  REQUIRE(rs.runs.size() == 1);
  REQUIRE(rs.runs[0].points.size() == 2);
  CHECK(rs.runs[0].points[1].value == 2.0);
  CHECK(validate(rs).empty());
}

TEST_CASE("parse_training_curves: rejections carry line numbers") {
  SECTION("non-finite value") {
    std::istringstream in(
        "{\"run_id\":\"s0\",\"step\":0,\"value\":1.0}\n"
        "{\"run_id\":\"s0\",\"step\":1,\"value\":\"NaN\"}\n");
    try {
      parse_training_curves(in, "runs.jsonl");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.path() == "runs.jsonl");
      CHECK_THAT(e.message(), Catch::Matchers::ContainsSubstring("value"));
    }
  }
  SECTION("duplicate (run_id, step)") {
    std::istringstream in(
        "{\"run_id\":\"s0\",\"step\":3,\"value\":1.0}\n"
        "{\"run_id\":\"s0\",\"step\":3,\"value\":1.5}\n");
    try {
      parse_training_curves(in, "runs.jsonl");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK_THAT(e.message(), Catch::Matchers::ContainsSubstring("duplicate"));
    }
  }
  SECTION("malformed JSON") {
    std::istringstream in("{\"run_id\":\n");
    CHECK_THROWS_AS(parse_training_curves(in, "runs.jsonl"), ParseError);
  }
  SECTION("negative step") {
    std::istringstream in("{\"run_id\":\"s0\",\"step\":-1,\"value\":1.0}\n");
    CHECK_THROWS_AS(parse_training_curves(in, "runs.jsonl"), ParseError);
  }
}

TEST_CASE("parse_training_curves: out-of-order steps are sorted per run") {
  std::istringstream in(
      "{\"run_id\":\"s0\",\"step\":5,\"value\":2.0}\n"
      "{\"run_id\":\"s0\",\"step\":1,\"value\":1.0}\n");
  auto rs = parse_training_curves(in, "runs.jsonl");
  CHECK(rs.runs[0].points[0].step == 1);
  CHECK(rs.runs[0].points[1].step == 5);
}

TEST_CASE("training curves: synthetic round-trip") {
  auto rs = generate_fixture_runset({10, 100, CurveShape::logistic, 0.1, 42});
  REQUIRE(rs.runs.size() == 10);
  for (const auto& run : rs.runs) REQUIRE(run.points.size() == 100);
  CHECK(validate(rs).empty());

  std::ostringstream first;
  write_training_curves(rs, first);
  std::istringstream in(first.str());
  auto reparsed = parse_training_curves(in, "mem");
  std::ostringstream second;
  write_training_curves(reparsed, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("parse_rollouts") {
  SECTION("file order and count") {
    std::ostringstream file;
    for (int i = 0; i < 100; ++i) file << "{\"return\":-1.0}\n";
    std::istringstream in(file.str());
    auto rs = parse_rollouts(in, "r.jsonl");
    REQUIRE(rs.returns.size() == 100);
    CHECK(rs.returns.front() == -1.0);
  }
  SECTION("empty file") {
    std::istringstream in("");
    try {
      parse_rollouts(in, "r.jsonl");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK_THAT(e.message(),
                 Catch::Matchers::ContainsSubstring("empty rollout file"));
    }
  }
  SECTION("parsed mean equals generator mean") {
    SplitMix64 rng(99);
    std::ostringstream file;
    double sum = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double r = rng.next_gaussian();
      sum += r;
      file << "{\"return\":" << format_double_17(r) << "}\n";
    }
    std::istringstream in(file.str());
    auto rs = parse_rollouts(in, "r.jsonl");
    double parsed_sum = 0.0;
    for (double r : rs.returns) parsed_sum += r;
    CHECK(std::abs(parsed_sum / 500.0 - sum / 500.0) < 1e-12);
  }
  SECTION("rollout_id is tolerated without warnings") {
    std::istringstream in("{\"return\":1.0,\"rollout_id\":\"e0\"}\n");
    ParseSummary summary;
    auto rs = parse_rollouts(in, "r.jsonl", "", "", &summary);
    CHECK(rs.returns.size() == 1);
    CHECK(summary.unknown_field_warnings == 0);
  }
}

TEST_CASE("parse_telemetry") {
  SECTION("wall clock defaults to the sample span") {
    std::istringstream in(
        "{\"t_s\":0,\"cpu_power_w\":100,\"gpu_power_w\":0,\"ram_bytes\":1}\n"
        "{\"t_s\":1,\"cpu_power_w\":100,\"gpu_power_w\":0,\"ram_bytes\":1}\n"
        "{\"t_s\":2,\"cpu_power_w\":100,\"gpu_power_w\":0,\"ram_bytes\":1}\n");
    auto tr = parse_telemetry(in, "t.jsonl");
    CHECK(tr.samples.size() == 3);
    CHECK(tr.wall_clock_s == 2.0);
  }
  SECTION("trailer overrides wall clock") {
    std::istringstream in(
        "{\"t_s\":0,\"cpu_power_w\":1,\"gpu_power_w\":0,\"ram_bytes\":1}\n"
        "{\"trailer\":true,\"wall_clock_s\":9.5}\n");
    auto tr = parse_telemetry(in, "t.jsonl");
    CHECK(tr.wall_clock_s == 9.5);
  }
  SECTION("negative RAM rejected") {
    std::istringstream in(
        "{\"t_s\":0,\"cpu_power_w\":1,\"gpu_power_w\":0,\"ram_bytes\":-1}\n");
    CHECK_THROWS_AS(parse_telemetry(in, "t.jsonl"), ParseError);
  }
  SECTION("decreasing t_s rejected with the line") {
    std::istringstream in(
        "{\"t_s\":5,\"cpu_power_w\":1,\"gpu_power_w\":0,\"ram_bytes\":1}\n"
        "{\"t_s\":4,\"cpu_power_w\":1,\"gpu_power_w\":0,\"ram_bytes\":1}\n");
    try {
      parse_telemetry(in, "t.jsonl");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK_THAT(e.message(),
                 Catch::Matchers::ContainsSubstring("decreasing"));
    }
  }
  SECTION("round-trip is byte-identical") {
    TelemetryTrace tr;
    tr.samples = {{0.0, 100.25, 12.5, 1u << 20}, {1.5, 99.75, 13.0, 1u << 21}};
    tr.wall_clock_s = 2.25;
    std::ostringstream first;
    write_telemetry(tr, first);
    std::istringstream in(first.str());
    auto reparsed = parse_telemetry(in, "mem");
    std::ostringstream second;
    write_telemetry(reparsed, second);
    CHECK(first.str() == second.str());
    CHECK(reparsed.wall_clock_s == 2.25);
  }
}

TEST_CASE("parse_dataset_manifest") {
  SECTION("single descriptor") {
    std::istringstream in(
        "{\"datasets\":[{\"dataset_id\":\"d1\","
        "\"policy_train_energies_kwh\":[10,20]}]}");
    auto ds = parse_dataset_manifest(in, "m.json");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].dataset_id == "d1");
    CHECK(ds[0].policy_train_energies_kwh == std::vector<double>{10, 20});
    CHECK(validate(ds[0]).empty());
  }
  SECTION("singleton energy list") {
    std::istringstream in(
        "{\"datasets\":[{\"dataset_id\":\"ariane-intermediate\","
        "\"policy_train_energies_kwh\":[48.28],"
        "\"expertise\":\"intermediate\"}]}");
    auto ds = parse_dataset_manifest(in, "m.json");
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].policy_train_energies_kwh == std::vector<double>{48.28});
    CHECK(ds[0].expertise == Expertise::intermediate);
  }
  SECTION("negative energy rejected") {
    std::istringstream in(
        "{\"datasets\":[{\"dataset_id\":\"d1\","
        "\"policy_train_energies_kwh\":[-1]}]}");
    CHECK_THROWS_AS(parse_dataset_manifest(in, "m.json"), ParseError);
  }
  SECTION("manifest round-trip") {
    std::vector<DatasetDescriptor> ds;
    ds.push_back({"d1", {10.0, 20.5}, Expertise::expert});
    ds.push_back({"d2", {0.125}, {}});
    std::ostringstream first;
    write_dataset_manifest(ds, first);
    std::istringstream in(first.str());
    auto reparsed = parse_dataset_manifest(in, "mem");
    std::ostringstream second;
    write_dataset_manifest(reparsed, second);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("unknown fields are counted, not fatal") {
  std::istringstream in(
      "{\"run_id\":\"s0\",\"step\":0,\"value\":1.0,\"extra\":1}\n"
      "{\"run_id\":\"s0\",\"step\":1,\"value\":2.0,\"more\":{},\"x\":3}\n");
  ParseSummary summary;
  auto rs = parse_training_curves(in, "runs.jsonl", "", "", &summary);
  CHECK(rs.runs.size() == 1);
  CHECK(summary.records == 2);
  CHECK(summary.unknown_field_warnings == 3);
}

TEST_CASE("generate_fixture_runset") {
  SECTION("flat curve") {
    auto rs = generate_fixture_runset({1, 5, CurveShape::constant, 0.0, 0});
    REQUIRE(rs.runs.size() == 1);
    for (const auto& p : rs.runs[0].points) CHECK(p.value == 0.0);
  }
  SECTION("determinism") {
    FixtureProfile profile{4, 20, CurveShape::logistic, 0.25, 1234};
    auto a = generate_fixture_runset(profile);
    auto b = generate_fixture_runset(profile);
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t r = 0; r < a.runs.size(); ++r)
      for (std::size_t t = 0; t < a.runs[r].points.size(); ++t)
        CHECK(a.runs[r].points[t].value == b.runs[r].points[t].value);
  }
  SECTION("profile validation") {
    CHECK_THROWS_AS(generate_fixture_runset({0, 5, CurveShape::linear, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_fixture_runset({1, 1, CurveShape::linear, 0, 0}),
                    std::invalid_argument);
  }
}
