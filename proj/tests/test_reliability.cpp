#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "a2bench/ingest.hpp"
#include "a2bench/prng.hpp"
#include "a2bench/reliability.hpp"
#include "oracle.hpp"

using namespace a2bench;

namespace {

TrainingCurve curve_of(const std::vector<double>& values) {
  TrainingCurve c;
  c.run_id = "r";
  for (std::size_t i = 0; i < values.size(); ++i)
    c.points.push_back({i, values[i], {}});
  return c;
}

RunSet runset_of(const std::vector<std::vector<double>>& runs) {
  RunSet rs;
  rs.task_id = "t";
  rs.algorithm_id = "a";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto c = curve_of(runs[i]);
    c.run_id = "r" + std::to_string(i);
    rs.runs.push_back(std::move(c));
  }
  return rs;
}

// Random RunSet with optionally ragged step grids (exercises alignment).
RunSet random_runset(SplitMix64& rng, bool ragged_steps) {
  RunSet rs;
  rs.task_id = "t";
  rs.algorithm_id = "a";
  const auto n = 2 + rng.next_below(9);   // 2..10 runs
  const auto T = 6 + rng.next_below(45);  // 6..50 checkpoints
  for (std::uint64_t r = 0; r < n; ++r) {
    TrainingCurve c;
    c.run_id = "r" + std::to_string(r);
    std::uint64_t step = 0;
    for (std::uint64_t t = 0; t < T; ++t) {
      step += ragged_steps ? 1 + rng.next_below(3) : 1;
      c.points.push_back({step, rng.next_gaussian() * 3.0, {}});
    }
    rs.runs.push_back(std::move(c));
  }
  return rs;
}

RolloutSet random_rolloutset(SplitMix64& rng) {
  RolloutSet rs;
  rs.task_id = "t";
  rs.algorithm_id = "a";
  const auto m = 1 + rng.next_below(200);
  for (std::uint64_t i = 0; i < m; ++i)
    rs.returns.push_back(rng.next_gaussian() * 2.0 - 1.0);
  return rs;
}

bool close_rel(double a, double b, double tol = 1e-9) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace

TEST_CASE("iqr: order statistics with linear interpolation") {
  CHECK(iqr({5.0}) == 0.0);
  CHECK(iqr({1.0, 2.0, 3.0, 4.0}) == Catch::Approx(1.5).epsilon(1e-12));
  SECTION("shift invariance") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> xs, shifted;
      const auto len = 1 + rng.next_below(40);
      const double c = rng.next_gaussian() * 10.0;
      for (std::uint64_t i = 0; i < len; ++i) {
        xs.push_back(rng.next_gaussian());
        shifted.push_back(xs.back() + c);
      }
      CHECK(close_rel(iqr(xs), iqr(shifted)));
    }
  }
  CHECK_THROWS_AS(iqr({}), std::invalid_argument);
}

TEST_CASE("cvar_lower: mean of the alpha tail") {
  CHECK(cvar_lower({-3.0, -1.0, 0.0, 2.0, 5.0}, 0.4) ==
        Catch::Approx(-2.0).epsilon(1e-12));
  CHECK(cvar_lower({7.5, 7.5, 7.5}, 0.3) == 7.5);
  SECTION("k = len degenerates to the arithmetic mean") {
    const std::vector<double> xs = {4.0, -2.0, 1.0, 9.0};
    CHECK(cvar_lower(xs, 0.99) ==
          Catch::Approx(oracle::naive_mean(xs)).epsilon(1e-12));
  }
  SECTION("monotone non-decreasing in alpha") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> xs;
      const auto len = 1 + rng.next_below(30);
      for (std::uint64_t i = 0; i < len; ++i)
        xs.push_back(rng.next_gaussian());
      double prev = -1e300;
      for (double alpha : {0.05, 0.1, 0.25, 0.5, 0.75, 0.95}) {
        const double v = cvar_lower(xs, alpha);
        CHECK(v >= prev - 1e-12);
        prev = v;
      }
    }
  }
  CHECK_THROWS_AS(cvar_lower({}, 0.5), std::invalid_argument);
}

TEST_CASE("detrend: consecutive checkpoint differences") {
  CHECK(detrend(curve_of({1, 1, 1})) == std::vector<double>{0, 0});
  CHECK(detrend(curve_of({0, 1, 3})) == std::vector<double>{1, 2});
  SECTION("linear curves detrend to a constant") {
    auto d = detrend(curve_of({0, 2, 4, 6, 8}));
    for (double x : d) CHECK(x == 2.0);
  }
  CHECK_THROWS_AS(detrend(curve_of({1})), std::invalid_argument);
}

TEST_CASE("dispersion_within_runs") {
  SECTION("constant and linear runs give exactly zero") {
    auto constant = runset_of({{1, 1, 1, 1, 1, 1, 1}, {2, 2, 2, 2, 2, 2, 2}});
    auto res = dispersion_within_runs(constant);
    CHECK(res.value == 0.0);
    CHECK(*res.spread == 0.0);

    auto linear = runset_of({{0, 1, 2, 3, 4, 5, 6}, {5, 6, 7, 8, 9, 10, 11}});
    res = dispersion_within_runs(linear);
    CHECK(res.value == 0.0);
    CHECK(*res.spread == 0.0);
  }
  SECTION("strictly increasing in noise scale") {
    double prev = -1.0;
    for (double noise : {0.0, 0.1, 0.2}) {
      auto rs = generate_fixture_runset(
          {10, 100, CurveShape::logistic, noise, 7});
      const double v = dispersion_within_runs(rs).value;
      CHECK(v > prev);
      prev = v;
    }
  }
  SECTION("invariant under adding a linear-in-index trend") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      auto rs = random_runset(rng, false);
      auto trended = rs;
      const double slope = rng.next_gaussian() * 5.0;
      for (auto& run : trended.runs)
        for (std::size_t t = 0; t < run.points.size(); ++t)
          run.points[t].value += slope * static_cast<double>(t);
      CHECK(close_rel(dispersion_within_runs(rs).value,
                      dispersion_within_runs(trended).value));
    }
  }
  SECTION("run shorter than window+1 checkpoints is an error") {
    auto rs = runset_of({{1, 2, 3, 4, 5}});
    CHECK_THROWS_AS(dispersion_within_runs(rs), std::invalid_argument);
  }
}

TEST_CASE("short_term_risk") {
  CHECK(short_term_risk(runset_of({{3, 3, 3, 3}})) == 0.0);
  SECTION("worst single drop with k = 1") {
    auto rs = runset_of({{0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                          0, 0, 0, 0}});
    // 20 detrended values, alpha 0.05 -> k = 1
    CHECK(short_term_risk(rs, {.alpha = 0.05}) == 1.0);
  }
  SECTION("monotone improvement yields a negative value") {
    auto rs = runset_of({{0, 2, 4, 6, 8, 10}});
    CHECK(short_term_risk(rs, {.alpha = 0.1}) == -2.0);
  }
}

TEST_CASE("long_term_risk") {
  SECTION("monotone nondecreasing run has zero drawdowns") {
    CHECK(long_term_risk(runset_of({{0, 1, 1, 2, 5}})) == 0.0);
  }
  SECTION("largest drawdown with k = 1") {
    auto rs = runset_of({{0, 5, 2, 4}});
    CHECK(long_term_risk(rs, {.alpha = 0.1}) == 3.0);
  }
  SECTION("appending a fresh running maximum keeps the value when k = 1") {
    auto rs = runset_of({{0, 5, 2, 4}});
    auto extended = runset_of({{0, 5, 2, 4, 6}});
    const ReliabilityConfig cfg{.alpha = 0.1};
    CHECK(long_term_risk(rs, cfg) == long_term_risk(extended, cfg));
  }
}

TEST_CASE("dispersion_across_runs") {
  SECTION("identical runs") {
    auto rs = runset_of({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    auto res = dispersion_across_runs(rs);
    CHECK(res.value == 0.0);
    CHECK(*res.spread == 0.0);
  }
  SECTION("two constant runs at 0 and 1") {
    auto rs = runset_of({{0, 0, 0, 0}, {1, 1, 1, 1}});
    auto res = dispersion_across_runs(rs);
    CHECK(res.value == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(*res.spread == 0.0);
  }
  SECTION("invariant under a common constant offset") {
    SplitMix64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
      auto rs = random_runset(rng, true);
      auto shifted = rs;
      const double c = rng.next_gaussian() * 20.0;
      for (auto& run : shifted.runs)
        for (auto& p : run.points) p.value += c;
      CHECK(close_rel(dispersion_across_runs(rs).value,
                      dispersion_across_runs(shifted).value));
    }
  }
}

TEST_CASE("risk_across_runs") {
  SECTION("finals 1..10 at alpha 0.2") {
    std::vector<std::vector<double>> runs;
    for (int f = 1; f <= 10; ++f)
      runs.push_back({0.0, static_cast<double>(f)});
    CHECK(risk_across_runs(runset_of(runs), {.alpha = 0.2}) ==
          Catch::Approx(1.5).epsilon(1e-12));
  }
  SECTION("single run returns its final performance") {
    CHECK(risk_across_runs(runset_of({{7, 9, 4}})) == 4.0);
  }
  SECTION("all-equal finals") {
    CHECK(risk_across_runs(runset_of({{0, 2}, {1, 2}, {5, 2}})) == 2.0);
  }
  SECTION("final_tail_k averages trailing checkpoints") {
    auto rs = runset_of({{0, 0, 2, 4}});
    CHECK(risk_across_runs(rs, {.final_tail_k = 2}) == 3.0);
  }
}

TEST_CASE("rollout metrics") {
  RolloutSet flat{"t", "a", std::vector<double>(100, -1.0)};
  CHECK(dispersion_across_rollouts(flat) == 0.0);
  CHECK(risk_across_rollouts(flat) == -1.0);

  RolloutSet small{"t", "a", {1, 2, 3, 4}};
  CHECK(dispersion_across_rollouts(small) ==
        Catch::Approx(1.5).epsilon(1e-12));

  RolloutSet tail{"t", "a", {0, 0, 0, -10}};
  CHECK(risk_across_rollouts(tail, {.alpha = 0.25}) == -10.0);

  SECTION("shuffle invariance of dispersion") {
    SplitMix64 rng(15);
    auto rs = random_rolloutset(rng);
    auto shuffled = rs;
    for (std::size_t i = shuffled.returns.size(); i > 1; --i)
      std::swap(shuffled.returns[i - 1],
                shuffled.returns[rng.next_below(i)]);
    CHECK(close_rel(dispersion_across_rollouts(rs),
                    dispersion_across_rollouts(shuffled)));
  }
  SECTION("risk never exceeds the arithmetic mean") {
    SplitMix64 rng(16);
    for (int trial = 0; trial < 50; ++trial) {
      auto rs = random_rolloutset(rng);
      CHECK(risk_across_rollouts(rs) <=
            oracle::naive_mean(rs.returns) + 1e-12);
    }
  }
}

TEST_CASE("align_runs") {
  SECTION("identical step sets are returned untouched") {
    auto rs = runset_of({{1, 2, 3}, {4, 5, 6}});
    auto aligned = align_runs(rs, ReliabilityConfig::Alignment::strict);
    CHECK(aligned.grid == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(aligned.values[0] == std::vector<double>{1, 2, 3});
    CHECK(aligned.values[1] == std::vector<double>{4, 5, 6});
  }
  SECTION("interpolate fills missing steps at the midpoint") {
    RunSet rs;
    rs.task_id = "t";
    rs.algorithm_id = "a";
    TrainingCurve a;
    a.run_id = "A";
    a.points = {{0, 0.0, {}}, {2, 2.0, {}}};
    TrainingCurve b;
    b.run_id = "B";
    b.points = {{0, 5.0, {}}, {1, 6.0, {}}, {2, 7.0, {}}};
    rs.runs = {a, b};
    auto aligned = align_runs(rs, ReliabilityConfig::Alignment::interpolate);
    CHECK(aligned.grid == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(aligned.values[0] == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(aligned.values[1] == std::vector<double>{5.0, 6.0, 7.0});

    CHECK_THROWS_WITH(align_runs(rs, ReliabilityConfig::Alignment::strict),
                      Catch::Matchers::ContainsSubstring("step mismatch"));
  }
}

TEST_CASE("shift behavior splits between invariant and equivariant metrics") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto rs = random_runset(rng, false);
    auto ro = random_rolloutset(rng);
    const double c = rng.next_gaussian() * 10.0;

    auto rs_shift = rs;
    for (auto& run : rs_shift.runs)
      for (auto& p : run.points) p.value += c;
    auto ro_shift = ro;
    for (auto& r : ro_shift.returns) r += c;

    const ReliabilityConfig cfg;
    CHECK(close_rel(dispersion_within_runs(rs, cfg).value,
                    dispersion_within_runs(rs_shift, cfg).value));
    CHECK(close_rel(short_term_risk(rs, cfg), short_term_risk(rs_shift, cfg)));
    CHECK(close_rel(long_term_risk(rs, cfg), long_term_risk(rs_shift, cfg)));
    CHECK(close_rel(dispersion_across_runs(rs, cfg).value,
                    dispersion_across_runs(rs_shift, cfg).value));
    CHECK(close_rel(dispersion_across_rollouts(ro),
                    dispersion_across_rollouts(ro_shift)));
    // risk metrics shift by exactly c
    CHECK(close_rel(risk_across_runs(rs, cfg) + c,
                    risk_across_runs(rs_shift, cfg)));
    CHECK(close_rel(risk_across_rollouts(ro, cfg) + c,
                    risk_across_rollouts(ro_shift, cfg)));
  }
}

TEST_CASE("non-negativity of dispersion, drawdowns and long-term risk") {
  SplitMix64 rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    auto rs = random_runset(rng, trial % 2 == 0);
    CHECK(dispersion_within_runs(rs).value >= 0.0);
    CHECK(dispersion_across_runs(rs).value >= 0.0);
    CHECK(long_term_risk(rs) >= 0.0);
    for (const auto& run : rs.runs)
      for (double d : drawdowns(run)) CHECK(d >= 0.0);
  }
}

TEST_CASE("oracle equivalence on random fixtures") {
  SplitMix64 rng(19);
  const ReliabilityConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    auto rs = random_runset(rng, trial % 3 == 0);
    auto ro = random_rolloutset(rng);

    const auto dw = dispersion_within_runs(rs, cfg);
    const auto dw_o = oracle::naive_dispersion_within_runs(rs, cfg.window);
    CHECK(close_rel(dw.value, dw_o.mean));
    CHECK(close_rel(*dw.spread, dw_o.std));

    CHECK(close_rel(short_term_risk(rs, cfg),
                    oracle::naive_short_term_risk(rs, cfg.alpha)));
    CHECK(close_rel(long_term_risk(rs, cfg),
                    oracle::naive_long_term_risk(rs, cfg.alpha)));

    const auto da = dispersion_across_runs(rs, cfg);
    const auto da_o = oracle::naive_dispersion_across_runs(rs);
    CHECK(close_rel(da.value, da_o.mean));
    CHECK(close_rel(*da.spread, da_o.std));

    CHECK(close_rel(
        risk_across_runs(rs, cfg),
        oracle::naive_risk_across_runs(rs, cfg.alpha, cfg.final_tail_k)));
    CHECK(close_rel(dispersion_across_rollouts(ro),
                    oracle::naive_dispersion_across_rollouts(ro)));
    CHECK(close_rel(risk_across_rollouts(ro, cfg),
                    oracle::naive_risk_across_rollouts(ro, cfg.alpha)));
  }
}

TEST_CASE("config validation") {
  auto rs = runset_of({{1, 2, 3, 4, 5, 6, 7}});
  CHECK_THROWS_AS(dispersion_within_runs(rs, {.window = 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(short_term_risk(rs, {.alpha = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(short_term_risk(rs, {.alpha = 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(risk_across_runs(rs, {.final_tail_k = 0}),
                  std::invalid_argument);
}
