// Parsers and writers for the harness's on-disk formats.
//
// All stream formats are JSONL (one record per line); the dataset manifest
// is a single JSON document. Parsing is strict: malformed JSON, missing or
// mistyped fields, non-finite numbers and duplicate keys raise ParseError
// with the offending line. Unknown fields are skipped and counted so that
// emitters can add fields forward-compatibly.
//
// Canonical file form, produced by the writers here: keys sorted, floats
// with 17 significant digits, no extra whitespace. write(parse(x)) is
// byte-identical for canonical x.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "a2bench/jsonfmt.hpp"
#include "a2bench/model.hpp"
#include "a2bench/prng.hpp"

namespace a2bench {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, std::string message)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
        path_(std::move(path)),
        line_(line),
        message_(std::move(message)) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::size_t line_;
  std::string message_;
};

struct ParseSummary {
  std::size_t records = 0;
  std::size_t unknown_field_warnings = 0;
};

namespace detail {

using nlohmann::json;

inline json parse_json_line(const std::string& path, std::size_t line,
                            const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path, line, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError(path, line, "record must be a JSON object");
  return j;
}

inline double require_finite_number(const json& j, const std::string& path,
                                    std::size_t line, const char* field) {
  if (!j.contains(field))
    throw ParseError(path, line, std::string("missing field \"") + field +
                                     "\"");
  const auto& v = j.at(field);
  if (!v.is_number())
    throw ParseError(path, line,
                     std::string("field \"") + field + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    throw ParseError(path, line,
                     std::string("field \"") + field + "\" must be finite");
  return d;
}

inline std::uint64_t require_uint(const json& j, const std::string& path,
                                  std::size_t line, const char* field) {
  if (!j.contains(field))
    throw ParseError(path, line, std::string("missing field \"") + field +
                                     "\"");
  const auto& v = j.at(field);
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ParseError(path, line, std::string("field \"") + field +
                                     "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

inline std::string require_string(const json& j, const std::string& path,
                                  std::size_t line, const char* field) {
  if (!j.contains(field))
    throw ParseError(path, line, std::string("missing field \"") + field +
                                     "\"");
  const auto& v = j.at(field);
  if (!v.is_string())
    throw ParseError(path, line,
                     std::string("field \"") + field + "\" must be a string");
  return v.get<std::string>();
}

inline void count_unknown_fields(const json& j,
                                 const std::set<std::string>& known,
                                 ParseSummary* summary) {
  if (!summary) return;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.contains(it.key())) ++summary->unknown_field_warnings;
}

// 1-based line number of the first occurrence of `needle` in `text`.
inline std::size_t line_of(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  if (pos == std::string::npos) return 1;
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() +
                                              static_cast<std::ptrdiff_t>(pos),
                            '\n'));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Training curves

inline RunSet parse_training_curves(std::istream& in, const std::string& path,
                                    std::string task_id = "",
                                    std::string algorithm_id = "",
                                    ParseSummary* summary = nullptr) {
  static const std::set<std::string> known = {"run_id", "step", "value",
                                              "wall_time_s"};
  RunSet rs;
  rs.task_id = std::move(task_id);
  rs.algorithm_id = std::move(algorithm_id);

  std::map<std::string, std::size_t> run_index;
  std::set<std::pair<std::string, std::uint64_t>> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto j = detail::parse_json_line(path, line, text);
    const auto run_id = detail::require_string(j, path, line, "run_id");
    const auto step = detail::require_uint(j, path, line, "step");
    const double value = detail::require_finite_number(j, path, line, "value");
    if (!seen.insert({run_id, step}).second)
      throw ParseError(path, line,
                       "duplicate (run_id, step) = (" + run_id + ", " +
                           std::to_string(step) + ")");
    CurvePoint p{step, value, {}};
    if (j.contains("wall_time_s"))
      p.wall_time_s = detail::require_finite_number(j, path, line,
                                                    "wall_time_s");
    detail::count_unknown_fields(j, known, summary);
    if (summary) ++summary->records;

    auto [it, inserted] = run_index.try_emplace(run_id, rs.runs.size());
    if (inserted) rs.runs.push_back({run_id, {}});
    rs.runs[it->second].points.push_back(p);
  }
  if (rs.runs.empty()) throw ParseError(path, 1, "empty training-curve file");
  for (auto& run : rs.runs)
    std::sort(run.points.begin(), run.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) {
                return a.step < b.step;
              });
  return rs;
}

// Canonical writer: runs sorted by run_id, points by step.
inline void write_training_curves(const RunSet& rs, std::ostream& out) {
  std::vector<const TrainingCurve*> order;
  order.reserve(rs.runs.size());
  for (const auto& r : rs.runs) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const TrainingCurve* a, const TrainingCurve* b) {
              return a->run_id < b->run_id;
            });
  for (const auto* run : order) {
    for (const auto& p : run->points) {
      out << "{\"run_id\":" << json_string(run->run_id)
          << ",\"step\":" << p.step
          << ",\"value\":" << format_double_17(p.value);
      if (p.wall_time_s)
        out << ",\"wall_time_s\":" << format_double_17(*p.wall_time_s);
      out << "}\n";
    }
  }
}

// ---------------------------------------------------------------------------
// Rollouts

inline RolloutSet parse_rollouts(std::istream& in, const std::string& path,
                                 std::string task_id = "",
                                 std::string algorithm_id = "",
                                 ParseSummary* summary = nullptr) {
  static const std::set<std::string> known = {"return", "rollout_id"};
  RolloutSet rs;
  rs.task_id = std::move(task_id);
  rs.algorithm_id = std::move(algorithm_id);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto j = detail::parse_json_line(path, line, text);
    rs.returns.push_back(
        detail::require_finite_number(j, path, line, "return"));
    detail::count_unknown_fields(j, known, summary);
    if (summary) ++summary->records;
  }
  if (rs.returns.empty()) throw ParseError(path, 1, "empty rollout file");
  return rs;
}

inline void write_rollouts(const RolloutSet& rs, std::ostream& out) {
  for (double r : rs.returns)
    out << "{\"return\":" << format_double_17(r) << "}\n";
}

// ---------------------------------------------------------------------------
// Telemetry

inline TelemetryTrace parse_telemetry(std::istream& in,
                                      const std::string& path,
                                      ParseSummary* summary = nullptr) {
  static const std::set<std::string> known = {"t_s", "cpu_power_w",
                                              "gpu_power_w", "ram_bytes"};
  TelemetryTrace trace;
  bool wall_clock_overridden = false;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto j = detail::parse_json_line(path, line, text);
    if (j.contains("trailer")) {
      if (!j.at("trailer").is_boolean() || !j.at("trailer").get<bool>())
        throw ParseError(path, line, "trailer must be true");
      trace.wall_clock_s =
          detail::require_finite_number(j, path, line, "wall_clock_s");
      wall_clock_overridden = true;
      continue;
    }
    if (wall_clock_overridden)
      throw ParseError(path, line, "trailer must be the final record");
    TelemetrySample s;
    s.t_s = detail::require_finite_number(j, path, line, "t_s");
    if (s.t_s < 0.0) throw ParseError(path, line, "t_s must be >= 0");
    if (!trace.samples.empty() && s.t_s < trace.samples.back().t_s)
      throw ParseError(path, line, "t_s decreasing");
    s.cpu_power_w = detail::require_finite_number(j, path, line,
                                                  "cpu_power_w");
    s.gpu_power_w = detail::require_finite_number(j, path, line,
                                                  "gpu_power_w");
    if (s.cpu_power_w < 0.0 || s.gpu_power_w < 0.0)
      throw ParseError(path, line, "power must be >= 0");
    s.ram_bytes = detail::require_uint(j, path, line, "ram_bytes");
    detail::count_unknown_fields(j, known, summary);
    if (summary) ++summary->records;
    trace.samples.push_back(s);
  }
  if (trace.samples.empty()) throw ParseError(path, 1, "empty telemetry file");
  if (!wall_clock_overridden)
    trace.wall_clock_s =
        trace.samples.back().t_s - trace.samples.front().t_s;
  return trace;
}

// Always emits the trailer so the measured wall clock survives round-trips.
inline void write_telemetry(const TelemetryTrace& trace, std::ostream& out) {
  for (const auto& s : trace.samples) {
    out << "{\"cpu_power_w\":" << format_double_17(s.cpu_power_w)
        << ",\"gpu_power_w\":" << format_double_17(s.gpu_power_w)
        << ",\"ram_bytes\":" << s.ram_bytes
        << ",\"t_s\":" << format_double_17(s.t_s) << "}\n";
  }
  out << "{\"trailer\":true,\"wall_clock_s\":"
      << format_double_17(trace.wall_clock_s) << "}\n";
}

// ---------------------------------------------------------------------------
// Dataset manifest

inline std::vector<DatasetDescriptor> parse_dataset_manifest(
    std::istream& in, const std::string& path,
    ParseSummary* summary = nullptr) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(
                text.begin(),
                text.begin() + static_cast<std::ptrdiff_t>(std::min(
                                   static_cast<std::size_t>(e.byte),
                                   text.size())),
                '\n'));
    throw ParseError(path, line, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("datasets") ||
      !doc.at("datasets").is_array())
    throw ParseError(path, 1, "manifest must contain a \"datasets\" array");

  static const std::set<std::string> known = {
      "dataset_id", "policy_train_energies_kwh", "expertise"};
  std::vector<DatasetDescriptor> out;
  for (const auto& j : doc.at("datasets")) {
    if (!j.is_object())
      throw ParseError(path, 1, "dataset entry must be an object");
    DatasetDescriptor d;
    if (!j.contains("dataset_id") || !j.at("dataset_id").is_string())
      throw ParseError(path, 1, "dataset entry missing string \"dataset_id\"");
    d.dataset_id = j.at("dataset_id").get<std::string>();
    const std::size_t line = detail::line_of(text, "\"" + d.dataset_id + "\"");
    if (!j.contains("policy_train_energies_kwh") ||
        !j.at("policy_train_energies_kwh").is_array())
      throw ParseError(path, line,
                       "dataset " + d.dataset_id +
                           " missing \"policy_train_energies_kwh\" array");
    for (const auto& e : j.at("policy_train_energies_kwh")) {
      if (!e.is_number())
        throw ParseError(path, line, "energies must be numbers");
      const double v = e.get<double>();
      if (!std::isfinite(v) || v < 0.0)
        throw ParseError(path, line,
                         "energies must be finite and >= 0 in dataset " +
                             d.dataset_id);
      d.policy_train_energies_kwh.push_back(v);
    }
    if (j.contains("expertise")) {
      if (!j.at("expertise").is_string())
        throw ParseError(path, line, "expertise must be a string");
      const auto ex = expertise_from_string(j.at("expertise"));
      if (!ex)
        throw ParseError(path, line,
                         "expertise must be novice/intermediate/expert");
      d.expertise = ex;
    }
    detail::count_unknown_fields(j, known, summary);
    if (summary) ++summary->records;
    out.push_back(std::move(d));
  }
  return out;
}

inline void write_dataset_manifest(const std::vector<DatasetDescriptor>& ds,
                                   std::ostream& out) {
  out << "{\"datasets\":[";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out << ",";
    out << "{\"dataset_id\":" << json_string(ds[i].dataset_id);
    if (ds[i].expertise)
      out << ",\"expertise\":" << json_string(to_string(*ds[i].expertise));
    out << ",\"policy_train_energies_kwh\":[";
    for (std::size_t k = 0; k < ds[i].policy_train_energies_kwh.size(); ++k) {
      if (k) out << ",";
      out << format_double_17(ds[i].policy_train_energies_kwh[k]);
    }
    out << "]}";
  }
  out << "]}\n";
}

// ---------------------------------------------------------------------------
// File-path conveniences

namespace detail {

template <typename Fn>
auto with_input_file(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 1, "cannot open file");
  return fn(in);
}

}  // namespace detail

inline RunSet load_training_curves(const std::string& path,
                                   std::string task_id = "",
                                   std::string algorithm_id = "",
                                   ParseSummary* summary = nullptr) {
  return detail::with_input_file(path, [&](std::istream& in) {
    return parse_training_curves(in, path, std::move(task_id),
                                 std::move(algorithm_id), summary);
  });
}

inline RolloutSet load_rollouts(const std::string& path,
                                std::string task_id = "",
                                std::string algorithm_id = "",
                                ParseSummary* summary = nullptr) {
  return detail::with_input_file(path, [&](std::istream& in) {
    return parse_rollouts(in, path, std::move(task_id),
                          std::move(algorithm_id), summary);
  });
}

inline TelemetryTrace load_telemetry(const std::string& path,
                                     ParseSummary* summary = nullptr) {
  return detail::with_input_file(path, [&](std::istream& in) {
    return parse_telemetry(in, path, summary);
  });
}

inline std::vector<DatasetDescriptor> load_dataset_manifest(
    const std::string& path, ParseSummary* summary = nullptr) {
  return detail::with_input_file(path, [&](std::istream& in) {
    return parse_dataset_manifest(in, path, summary);
  });
}

// ---------------------------------------------------------------------------
// Fixture generation for property suites

enum class CurveShape { constant, linear, logistic };

struct FixtureProfile {
  std::size_t n = 1;
  std::size_t T = 2;
  CurveShape shape = CurveShape::constant;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
};

// Deterministic synthetic RunSet: base curve per shape (constant 0, linear
// ramp 0..1, logistic S-curve 0..1 over checkpoint index) plus i.i.d.
// Gaussian noise of the given scale. One PRNG stream per run.
inline RunSet generate_fixture_runset(const FixtureProfile& profile) {
  if (profile.n < 1 || profile.T < 2)
    throw std::invalid_argument("fixture requires n >= 1 and T >= 2");
  RunSet rs;
  rs.task_id = "fixture";
  rs.algorithm_id = "fixture";
  for (std::size_t r = 0; r < profile.n; ++r) {
    SplitMix64 rng(split_stream(profile.seed, r));
    TrainingCurve curve;
    curve.run_id = "s" + std::to_string(r);
    curve.points.reserve(profile.T);
    for (std::size_t t = 0; t < profile.T; ++t) {
      const double x = static_cast<double>(t) /
                       static_cast<double>(profile.T - 1);
      double base = 0.0;
      switch (profile.shape) {
        case CurveShape::constant: base = 0.0; break;
        case CurveShape::linear: base = x; break;
        case CurveShape::logistic:
          base = 1.0 / (1.0 + std::exp(-10.0 * (x - 0.5)));
          break;
      }
      const double noise =
          profile.noise_scale != 0.0
              ? profile.noise_scale * rng.next_gaussian()
              : 0.0;
      curve.points.push_back({t, base + noise, {}});
    }
    rs.runs.push_back(std::move(curve));
  }
  return rs;
}

}  // namespace a2bench
