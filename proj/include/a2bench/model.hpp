// Shared domain types for the benchmark harness and their invariant checks.
//
// All types are plain immutable-by-convention value types; validate() returns
// the list of violated invariants instead of throwing, so callers can report
// every problem in one pass.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace a2bench {

// ---------------------------------------------------------------------------
// Training / evaluation data

struct CurvePoint {
  std::uint64_t step = 0;
  double value = 0.0;
  std::optional<double> wall_time_s;
};

// Per-seed evaluation-return time series P_t, t = 1..T.
struct TrainingCurve {
  std::string run_id;
  std::vector<CurvePoint> points;
};

struct RunSet {
  std::string task_id;
  std::string algorithm_id;
  std::vector<TrainingCurve> runs;
};

// Per-episode returns R_i, i = 1..m, of a fixed policy.
struct RolloutSet {
  std::string task_id;
  std::string algorithm_id;
  std::vector<double> returns;
};

// ---------------------------------------------------------------------------
// Telemetry

struct TelemetrySample {
  double t_s = 0.0;  // seconds since monitoring start
  double cpu_power_w = 0.0;
  double gpu_power_w = 0.0;
  std::uint64_t ram_bytes = 0;
};

struct TelemetryTrace {
  std::vector<TelemetrySample> samples;
  double wall_clock_s = 0.0;
  // Notes appended by the sampler (estimated power source, sampler hiccups).
  std::vector<std::string> annotations;
};

// ---------------------------------------------------------------------------
// Datasets

enum class Expertise { novice, intermediate, expert };

inline const char* to_string(Expertise e) {
  switch (e) {
    case Expertise::novice: return "novice";
    case Expertise::intermediate: return "intermediate";
    case Expertise::expert: return "expert";
  }
  return "?";
}

inline std::optional<Expertise> expertise_from_string(const std::string& s) {
  if (s == "novice") return Expertise::novice;
  if (s == "intermediate") return Expertise::intermediate;
  if (s == "expert") return Expertise::expert;
  return std::nullopt;
}

// Offline dataset with the training energies of its generating policies,
// E_train(pi) for pi in the generating set.
struct DatasetDescriptor {
  std::string dataset_id;
  std::vector<double> policy_train_energies_kwh;
  std::optional<Expertise> expertise;
};

// ---------------------------------------------------------------------------
// Reports

enum class Phase { training, inference };

inline const char* to_string(Phase p) {
  return p == Phase::training ? "training" : "inference";
}

inline std::optional<Phase> phase_from_string(const std::string& s) {
  if (s == "training") return Phase::training;
  if (s == "inference") return Phase::inference;
  return std::nullopt;
}

enum class MetricCategory { data_cost, application, reliability, system };

inline const char* to_string(MetricCategory c) {
  switch (c) {
    case MetricCategory::data_cost: return "data_cost";
    case MetricCategory::application: return "application";
    case MetricCategory::reliability: return "reliability";
    case MetricCategory::system: return "system";
  }
  return "?";
}

inline std::optional<MetricCategory> category_from_string(
    const std::string& s) {
  if (s == "data_cost") return MetricCategory::data_cost;
  if (s == "application") return MetricCategory::application;
  if (s == "reliability") return MetricCategory::reliability;
  if (s == "system") return MetricCategory::system;
  return std::nullopt;
}

// A reported value; spread, when present, is one standard deviation.
struct MetricValue {
  double value = 0.0;
  std::optional<double> spread;
};

using MetricMap = std::map<std::string, MetricValue>;

struct MetricReport {
  Phase phase = Phase::training;
  std::string task_id;
  std::string algorithm_id;
  std::map<MetricCategory, MetricMap> categories;
};

struct SubmissionBundle {
  std::string cpu_model;
  std::string gpu_model;
  std::string framework;
  std::string runtime_version;
  std::string os;
  std::uint64_t num_seeds = 0;
  std::map<std::string, std::string> hyperparameters;
  std::vector<MetricReport> reports;
};

// ---------------------------------------------------------------------------
// Generated websites

enum class PrimitiveKind { active, passive, control };

inline const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::active: return "active";
    case PrimitiveKind::passive: return "passive";
    case PrimitiveKind::control: return "control";
  }
  return "?";
}

inline std::optional<PrimitiveKind> primitive_kind_from_string(
    const std::string& s) {
  if (s == "active") return PrimitiveKind::active;
  if (s == "passive") return PrimitiveKind::passive;
  if (s == "control") return PrimitiveKind::control;
  return std::nullopt;
}

struct PrimitiveDef {
  std::string name;
  PrimitiveKind kind = PrimitiveKind::passive;
};

// One generated page: content primitives only, control draws are consumed
// during generation and never stored.
struct PageSpec {
  std::vector<PrimitiveDef> primitives;

  std::size_t active_count() const {
    std::size_t n = 0;
    for (const auto& p : primitives)
      if (p.kind == PrimitiveKind::active) ++n;
    return n;
  }
  std::size_t passive_count() const {
    std::size_t n = 0;
    for (const auto& p : primitives)
      if (p.kind == PrimitiveKind::passive) ++n;
    return n;
  }
};

// Difficulty level 1/2/3, or unclassified when the random-agent success
// probability falls below the level-3 threshold.
enum class DifficultyLevel { level1 = 1, level2 = 2, level3 = 3, unclassified };

inline std::string to_string(DifficultyLevel l) {
  switch (l) {
    case DifficultyLevel::level1: return "1";
    case DifficultyLevel::level2: return "2";
    case DifficultyLevel::level3: return "3";
    case DifficultyLevel::unclassified: return "unclassified";
  }
  return "?";
}

struct WebsiteSpec {
  std::string website_id;
  std::uint64_t seed = 0;  // per-site stream seed
  std::vector<PageSpec> pages;
  double difficulty_nats = 0.0;
  DifficultyLevel level = DifficultyLevel::unclassified;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string field;
  std::string rule;
};

using Violations = std::vector<Violation>;

namespace detail {

inline void require(Violations& out, bool ok, std::string field,
                    std::string rule) {
  if (!ok) out.push_back({std::move(field), std::move(rule)});
}

inline bool all_finite(const std::vector<double>& xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace detail

inline Violations validate(const TrainingCurve& c) {
  Violations v;
  detail::require(v, !c.run_id.empty(), "run_id", "non-empty");
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto& p = c.points[i];
    detail::require(v, std::isfinite(p.value), "points.value", "finite");
    if (p.wall_time_s)
      detail::require(v, std::isfinite(*p.wall_time_s), "points.wall_time_s",
                      "finite");
    if (i > 0)
      detail::require(v, c.points[i - 1].step < p.step, "points.step",
                      "steps strictly increasing");
  }
  return v;
}

inline Violations validate(const RunSet& rs) {
  Violations v;
  detail::require(v, !rs.runs.empty(), "runs", "n >= 1");
  std::set<std::string> ids;
  for (const auto& run : rs.runs) {
    detail::require(v, ids.insert(run.run_id).second, "runs.run_id", "unique");
    auto inner = validate(run);
    v.insert(v.end(), inner.begin(), inner.end());
  }
  return v;
}

inline Violations validate(const RolloutSet& rs) {
  Violations v;
  detail::require(v, !rs.returns.empty(), "returns", "m >= 1");
  detail::require(v, detail::all_finite(rs.returns), "returns", "finite");
  return v;
}

inline Violations validate(const TelemetryTrace& tr) {
  Violations v;
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& s : tr.samples) {
    detail::require(v, std::isfinite(s.t_s), "samples.t_s", "finite");
    detail::require(v, s.t_s >= prev, "samples.t_s", "non-decreasing");
    detail::require(v, std::isfinite(s.cpu_power_w) && s.cpu_power_w >= 0.0,
                    "samples.cpu_power_w", "finite and >= 0");
    detail::require(v, std::isfinite(s.gpu_power_w) && s.gpu_power_w >= 0.0,
                    "samples.gpu_power_w", "finite and >= 0");
    prev = s.t_s;
  }
  detail::require(v, std::isfinite(tr.wall_clock_s), "wall_clock_s", "finite");
  if (tr.samples.size() >= 2) {
    const double span = tr.samples.back().t_s - tr.samples.front().t_s;
    detail::require(v, tr.wall_clock_s >= span, "wall_clock_s",
                    ">= sample span");
  }
  return v;
}

inline Violations validate(const DatasetDescriptor& d) {
  Violations v;
  detail::require(v, !d.dataset_id.empty(), "dataset_id", "non-empty");
  for (double e : d.policy_train_energies_kwh)
    detail::require(v, std::isfinite(e) && e >= 0.0,
                    "policy_train_energies_kwh", "finite and >= 0");
  return v;
}

// The registry of admissible metric names lives in report.hpp; this check
// covers only structural invariants shared by every report.
inline Violations validate(const MetricReport& r) {
  Violations v;
  for (const auto& [cat, metrics] : r.categories) {
    for (const auto& [name, mv] : metrics) {
      detail::require(v, !name.empty(), "categories.metric", "name non-empty");
      detail::require(v, std::isfinite(mv.value),
                      std::string(to_string(cat)) + "." + name, "value finite");
      if (mv.spread)
        detail::require(v, std::isfinite(*mv.spread) && *mv.spread >= 0.0,
                        std::string(to_string(cat)) + "." + name,
                        "spread finite and >= 0");
    }
  }
  return v;
}

inline Violations validate(const SubmissionBundle& b) {
  Violations v;
  detail::require(v, !b.cpu_model.empty(), "cpu_model", "non-empty");
  detail::require(v, !b.gpu_model.empty(), "gpu_model", "non-empty");
  detail::require(v, !b.framework.empty(), "framework", "non-empty");
  detail::require(v, !b.runtime_version.empty(), "runtime_version",
                  "non-empty");
  detail::require(v, !b.os.empty(), "os", "non-empty");
  detail::require(v, b.num_seeds >= 1, "num_seeds", ">= 1");
  for (const auto& r : b.reports) {
    auto inner = validate(r);
    v.insert(v.end(), inner.begin(), inner.end());
  }
  return v;
}

inline Violations validate(const PageSpec& p) {
  Violations v;
  for (const auto& prim : p.primitives) {
    detail::require(v, !prim.name.empty(), "primitives.name", "non-empty");
    detail::require(v, prim.kind != PrimitiveKind::control, "primitives.kind",
                    "control primitives not stored on pages");
  }
  detail::require(v, p.active_count() + p.passive_count() >= 1, "primitives",
                  "n_active + n_passive >= 1");
  return v;
}

inline Violations validate(const WebsiteSpec& w) {
  Violations v;
  detail::require(v, !w.website_id.empty(), "website_id", "non-empty");
  detail::require(v, !w.pages.empty(), "pages", "at least one page");
  double sum = 0.0;
  bool pages_ok = true;
  for (const auto& page : w.pages) {
    auto inner = validate(page);
    if (!inner.empty()) pages_ok = false;
    v.insert(v.end(), inner.begin(), inner.end());
    const double a = static_cast<double>(page.active_count());
    const double t = a + static_cast<double>(page.passive_count());
    if (a >= 1.0 && t >= 1.0) sum += -std::log(a / t);
  }
  detail::require(v,
                  std::isfinite(w.difficulty_nats) && w.difficulty_nats >= 0.0,
                  "difficulty_nats", "finite and >= 0");
  if (pages_ok)
    detail::require(v, std::abs(w.difficulty_nats - sum) <= 1e-9,
                    "difficulty_nats", "equals sum of page difficulties");
  return v;
}

}  // namespace a2bench
