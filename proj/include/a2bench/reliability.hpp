// Reliability metrics over training curves and rollout returns, plus the
// robust-statistics kernel they share (IQR, lower/upper CVaR, detrending,
// run alignment).
//
// Conventions, pinned so that independent implementations can agree:
//  - Quantiles interpolate linearly between order statistics at positions
//    (len-1)*q, 0-indexed.
//  - cvar_lower averages the k = ceil(alpha*len) smallest values; the upper
//    variant averages the k largest.
//  - Detrending is per checkpoint: delta[i] = P[i+1] - P[i], length T-1.
//  - dispersion_within_runs slides a full window of `window` consecutive
//    detrended values (never a clipped partial window), so a run needs at
//    least window+1 checkpoints.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "a2bench/model.hpp"

namespace a2bench {

struct ReliabilityConfig {
  double alpha = 0.05;       // CVaR tail fraction, in (0, 1)
  int window = 5;            // sliding-window length, odd and >= 3
  int final_tail_k = 1;      // checkpoints averaged to form final performance
  enum class Alignment { strict, interpolate };
  Alignment alignment = Alignment::interpolate;

  void check() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must be in (0, 1)");
    if (window < 3 || window % 2 == 0)
      throw std::invalid_argument("window must be an odd integer >= 3");
    if (final_tail_k < 1)
      throw std::invalid_argument("final_tail_k must be >= 1");
  }
};

// value + optional spread (one standard deviation across runs/grid points)
struct MetricOutcome {
  double value = 0.0;
  std::optional<double> spread;
};

using ReliabilityResult = std::map<std::string, MetricOutcome>;

namespace stats {

inline double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty list");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Population standard deviation; the sets summarized here (runs in an
// experiment, grid points of a curve) are complete populations, not samples.
inline double stddev(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 0) throw std::invalid_argument("quantile of empty list");
  const double pos = static_cast<double>(n - 1) * q;
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace stats

// Q3 - Q1 with linear interpolation between order statistics.
inline double iqr(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("iqr of empty list");
  std::sort(values.begin(), values.end());
  return stats::quantile_sorted(values, 0.75) -
         stats::quantile_sorted(values, 0.25);
}

// Mean of the k = ceil(alpha*len) smallest values (left-tail CVaR, sign
// preserved).
inline double cvar_lower(std::vector<double> values, double alpha) {
  if (values.empty()) throw std::invalid_argument("cvar of empty list");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must be in (0, 1)");
  const auto n = values.size();
  auto k = static_cast<std::size_t>(
      std::ceil(alpha * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n);
  std::sort(values.begin(), values.end());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += values[i];
  return s / static_cast<double>(k);
}

// Mean of the k = ceil(alpha*len) largest values (upper-tail CVaR, used for
// drawdowns where larger means worse).
inline double cvar_upper(std::vector<double> values, double alpha) {
  for (double& v : values) v = -v;
  return -cvar_lower(std::move(values), alpha);
}

// delta[i] = P[i+1] - P[i]; steps are ignored, differences are per
// checkpoint.
inline std::vector<double> detrend(const TrainingCurve& curve) {
  if (curve.points.size() < 2)
    throw std::invalid_argument("detrend requires at least 2 points");
  std::vector<double> d;
  d.reserve(curve.points.size() - 1);
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    d.push_back(curve.points[i].value - curve.points[i - 1].value);
  return d;
}

// Running-maximum drawdowns, max_{t'<=t} P_t' - P_t, pointwise >= 0.
inline std::vector<double> drawdowns(const TrainingCurve& curve) {
  if (curve.points.empty())
    throw std::invalid_argument("drawdowns of empty curve");
  std::vector<double> d;
  d.reserve(curve.points.size());
  double peak = curve.points.front().value;
  for (const auto& p : curve.points) {
    peak = std::max(peak, p.value);
    d.push_back(peak - p.value);
  }
  return d;
}

struct AlignedRuns {
  std::vector<std::uint64_t> grid;          // common evaluation steps
  std::vector<std::vector<double>> values;  // [run][grid point]
};

// Puts every run onto a common evaluation grid. strict mode demands
// identical step sets; interpolate mode uses the sorted union of steps
// clipped to the overlapping range and fills gaps by linear interpolation.
inline AlignedRuns align_runs(const RunSet& rs,
                              ReliabilityConfig::Alignment mode) {
  if (rs.runs.size() < 2)
    throw std::invalid_argument("align_runs requires n >= 2");
  for (const auto& run : rs.runs)
    if (run.points.empty())
      throw std::invalid_argument("align_runs: empty run " + run.run_id);

  AlignedRuns out;
  if (mode == ReliabilityConfig::Alignment::strict) {
    const auto& ref = rs.runs.front().points;
    for (const auto& run : rs.runs) {
      if (run.points.size() != ref.size())
        throw std::invalid_argument("step mismatch in run " + run.run_id);
      for (std::size_t i = 0; i < ref.size(); ++i)
        if (run.points[i].step != ref[i].step)
          throw std::invalid_argument("step mismatch in run " + run.run_id);
    }
    for (const auto& p : ref) out.grid.push_back(p.step);
    for (const auto& run : rs.runs) {
      std::vector<double> vals;
      vals.reserve(run.points.size());
      for (const auto& p : run.points) vals.push_back(p.value);
      out.values.push_back(std::move(vals));
    }
    return out;
  }

  std::uint64_t lo = 0, hi = std::numeric_limits<std::uint64_t>::max();
  std::set<std::uint64_t> steps;
  for (const auto& run : rs.runs) {
    lo = std::max(lo, run.points.front().step);
    hi = std::min(hi, run.points.back().step);
    for (const auto& p : run.points) steps.insert(p.step);
  }
  for (std::uint64_t s : steps)
    if (s >= lo && s <= hi) out.grid.push_back(s);
  if (out.grid.empty())
    throw std::invalid_argument("align_runs: empty overlap between runs");

  for (const auto& run : rs.runs) {
    std::vector<double> vals;
    vals.reserve(out.grid.size());
    std::size_t j = 0;
    for (std::uint64_t g : out.grid) {
      while (j + 1 < run.points.size() && run.points[j + 1].step <= g) ++j;
      const auto& a = run.points[j];
      if (a.step == g || j + 1 == run.points.size()) {
        vals.push_back(a.value);
      } else {
        const auto& b = run.points[j + 1];
        const double frac = static_cast<double>(g - a.step) /
                            static_cast<double>(b.step - a.step);
        vals.push_back(a.value + frac * (b.value - a.value));
      }
    }
    out.values.push_back(std::move(vals));
  }
  return out;
}

// Mean (over full sliding windows along the detrended curve) of the window
// IQR, averaged per run; reported as mean +/- std across runs.
inline MetricOutcome dispersion_within_runs(const RunSet& rs,
                                            const ReliabilityConfig& cfg = {}) {
  cfg.check();
  const auto w = static_cast<std::size_t>(cfg.window);
  std::vector<double> per_run;
  for (const auto& run : rs.runs) {
    if (run.points.size() < w + 1)
      throw std::invalid_argument("run " + run.run_id + " shorter than " +
                                  std::to_string(w + 1) + " checkpoints");
    const auto d = detrend(run);
    std::vector<double> window_iqrs;
    for (std::size_t start = 0; start + w <= d.size(); ++start)
      window_iqrs.push_back(iqr(std::vector<double>(
          d.begin() + static_cast<std::ptrdiff_t>(start),
          d.begin() + static_cast<std::ptrdiff_t>(start + w))));
    per_run.push_back(stats::mean(window_iqrs));
  }
  return {stats::mean(per_run), stats::stddev(per_run)};
}

// -CVaR_alpha of detrended values pooled across runs: positive when the
// worst checkpoint-to-checkpoint changes are drops, negative for curves
// that only ever improve.
inline double short_term_risk(const RunSet& rs,
                              const ReliabilityConfig& cfg = {}) {
  cfg.check();
  std::vector<double> pooled;
  for (const auto& run : rs.runs) {
    const auto d = detrend(run);
    pooled.insert(pooled.end(), d.begin(), d.end());
  }
  return -cvar_lower(std::move(pooled), cfg.alpha);
}

// Upper-tail CVaR of drawdowns pooled across runs; >= 0 by construction.
inline double long_term_risk(const RunSet& rs,
                             const ReliabilityConfig& cfg = {}) {
  cfg.check();
  std::vector<double> pooled;
  for (const auto& run : rs.runs) {
    const auto d = drawdowns(run);
    pooled.insert(pooled.end(), d.begin(), d.end());
  }
  return cvar_upper(std::move(pooled), cfg.alpha);
}

// Per grid point, IQR across runs; reported as mean +/- std over grid
// points.
inline MetricOutcome dispersion_across_runs(const RunSet& rs,
                                            const ReliabilityConfig& cfg = {}) {
  cfg.check();
  const auto aligned = align_runs(rs, cfg.alignment);
  std::vector<double> per_point;
  for (std::size_t g = 0; g < aligned.grid.size(); ++g) {
    std::vector<double> column;
    column.reserve(aligned.values.size());
    for (const auto& run_vals : aligned.values) column.push_back(run_vals[g]);
    per_point.push_back(iqr(std::move(column)));
  }
  return {stats::mean(per_point), stats::stddev(per_point)};
}

// Left-tail CVaR of final performances P_{T,j} (mean of the last
// final_tail_k checkpoints per run). Higher is better; sign preserved.
inline double risk_across_runs(const RunSet& rs,
                               const ReliabilityConfig& cfg = {}) {
  cfg.check();
  const auto k = static_cast<std::size_t>(cfg.final_tail_k);
  std::vector<double> finals;
  for (const auto& run : rs.runs) {
    if (run.points.size() < k)
      throw std::invalid_argument("run " + run.run_id +
                                  " shorter than final_tail_k");
    double s = 0.0;
    for (std::size_t i = run.points.size() - k; i < run.points.size(); ++i)
      s += run.points[i].value;
    finals.push_back(s / static_cast<double>(k));
  }
  return cvar_lower(std::move(finals), cfg.alpha);
}

inline double dispersion_across_rollouts(const RolloutSet& rs) {
  return iqr(rs.returns);
}

inline double risk_across_rollouts(const RolloutSet& rs,
                                   const ReliabilityConfig& cfg = {}) {
  cfg.check();
  return cvar_lower(rs.returns, cfg.alpha);
}

// Registry-facing names (report.hpp keys by these).
inline ReliabilityResult training_reliability(const RunSet& rs,
                                              const ReliabilityConfig& cfg = {}) {
  ReliabilityResult r;
  r["Dispersion Within Runs (IQR)"] = dispersion_within_runs(rs, cfg);
  r["Short Term Risk (CVaR)"] = {short_term_risk(rs, cfg), std::nullopt};
  r["Long Term Risk (CVaR)"] = {long_term_risk(rs, cfg), std::nullopt};
  if (rs.runs.size() >= 2)
    r["Dispersion Across Runs (IQR)"] = dispersion_across_runs(rs, cfg);
  r["Risk Across Runs (CVaR)"] = {risk_across_runs(rs, cfg), std::nullopt};
  return r;
}

inline ReliabilityResult inference_reliability(const RolloutSet& rs,
                                               const ReliabilityConfig& cfg = {}) {
  ReliabilityResult r;
  r["Dispersion Across Rollouts (IQR)"] = {dispersion_across_rollouts(rs),
                                           std::nullopt};
  r["Risk Across Rollouts (CVaR)"] = {risk_across_rollouts(rs, cfg),
                                      std::nullopt};
  return r;
}

}  // namespace a2bench
