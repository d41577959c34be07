// Metric report assembly and rendering.
//
// Reports carry four metric categories (data cost, application, reliability,
// system) for one phase of one algorithm on one task. Metric names come from
// a fixed registry; data-cost and application metrics exist only at training
// time. Rendering produces a canonical JSON schema ("a2report/1"), CSV, a
// markdown table grouped by category with one column per algorithm, and
// min-max-normalized radar axes. Submission bundles ("a2bundle/1") pair
// reports with the hardware/software configuration they were measured on.
//
// Number formatting in markdown/csv: two decimal places, switching to
// scientific notation below 0.01, and bare "0" for exact zero.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "a2bench/jsonfmt.hpp"
#include "a2bench/model.hpp"
#include "a2bench/reliability.hpp"

namespace a2bench {

// ---------------------------------------------------------------------------
// Metric registry

struct MetricInfo {
  MetricCategory category;
  bool at_training;
  bool at_inference;
  bool lower_is_better;
};

inline const std::map<std::string, MetricInfo>& metric_registry() {
  static const std::map<std::string, MetricInfo> registry = {
      {"Training Sample Cost",
       {MetricCategory::data_cost, true, false, true}},
      {"Training Energy (kWh)",
       {MetricCategory::data_cost, true, false, true}},
      {"Total Energy Cost (kWh)",
       {MetricCategory::data_cost, true, false, true}},
      {"Returns (100 eps.)",
       {MetricCategory::application, true, false, false}},
      {"Generalization (100 eps. [all tasks])",
       {MetricCategory::application, true, false, false}},
      {"Dispersion Across Runs (IQR)",
       {MetricCategory::reliability, true, false, true}},
      {"Dispersion Within Runs (IQR)",
       {MetricCategory::reliability, true, false, true}},
      {"Long Term Risk (CVaR)",
       {MetricCategory::reliability, true, false, true}},
      {"Short Term Risk (CVaR)",
       {MetricCategory::reliability, true, false, true}},
      {"Risk Across Runs (CVaR)",
       {MetricCategory::reliability, true, false, false}},
      {"Dispersion Across Rollouts (IQR)",
       {MetricCategory::reliability, false, true, true}},
      {"Risk Across Rollouts (CVaR)",
       {MetricCategory::reliability, false, true, false}},
      {"Energy Consumed (kWh)", {MetricCategory::system, true, false, true}},
      {"GPU Power Usage (W)", {MetricCategory::system, true, true, true}},
      {"Inference Time (ms)", {MetricCategory::system, false, true, true}},
      {"Mean RAM Usage (GB)", {MetricCategory::system, true, true, true}},
      {"Peak RAM Usage (GB)", {MetricCategory::system, true, true, true}},
      {"Wall Clock Time (Hours)",
       {MetricCategory::system, true, false, true}},
  };
  return registry;
}

namespace detail {

inline void check_metric_names(Phase phase, MetricCategory category,
                               const MetricMap& metrics) {
  const auto& registry = metric_registry();
  for (const auto& [name, mv] : metrics) {
    (void)mv;
    const auto it = registry.find(name);
    if (it == registry.end())
      throw std::invalid_argument("unknown metric name \"" + name + "\"");
    if (it->second.category != category)
      throw std::invalid_argument("metric \"" + name + "\" belongs to " +
                                  std::string(to_string(it->second.category)) +
                                  ", not " + to_string(category));
    const bool ok = phase == Phase::training ? it->second.at_training
                                             : it->second.at_inference;
    if (!ok)
      throw std::invalid_argument("metric \"" + name +
                                  "\" is N/A at " + to_string(phase));
  }
}

}  // namespace detail

inline MetricReport build_report(Phase phase, std::string task_id,
                                 std::string algorithm_id,
                                 const MetricMap& data_cost,
                                 const MetricMap& application,
                                 const MetricMap& reliability,
                                 const MetricMap& system) {
  if (phase == Phase::inference && !data_cost.empty())
    throw std::invalid_argument("data_cost metrics are N/A at inference");
  if (phase == Phase::inference && !application.empty())
    throw std::invalid_argument("application metrics are N/A at inference");
  detail::check_metric_names(phase, MetricCategory::data_cost, data_cost);
  detail::check_metric_names(phase, MetricCategory::application, application);
  detail::check_metric_names(phase, MetricCategory::reliability, reliability);
  detail::check_metric_names(phase, MetricCategory::system, system);

  MetricReport r;
  r.phase = phase;
  r.task_id = std::move(task_id);
  r.algorithm_id = std::move(algorithm_id);
  if (!data_cost.empty()) r.categories[MetricCategory::data_cost] = data_cost;
  if (!application.empty())
    r.categories[MetricCategory::application] = application;
  if (!reliability.empty())
    r.categories[MetricCategory::reliability] = reliability;
  if (!system.empty()) r.categories[MetricCategory::system] = system;

  const auto violations = validate(r);
  if (!violations.empty())
    throw std::invalid_argument("invalid report: " + violations.front().field +
                                " " + violations.front().rule);
  return r;
}

// ---------------------------------------------------------------------------
// Application metrics

inline MetricOutcome task_performance(const RolloutSet& rollouts) {
  if (rollouts.returns.empty())
    throw std::invalid_argument("task_performance of empty rollout set");
  return {stats::mean(rollouts.returns), stats::stddev(rollouts.returns)};
}

inline double generalization(const std::vector<double>& per_task_means) {
  if (per_task_means.empty())
    throw std::invalid_argument("generalization of empty task list");
  double s = 0.0;
  for (double m : per_task_means) s += m;
  return s;
}

// ---------------------------------------------------------------------------
// JSON (canonical a2report/1)

inline std::string report_to_json(const MetricReport& r) {
  std::ostringstream out;
  out << "{\"algorithm_id\":" << json_string(r.algorithm_id)
      << ",\"categories\":{";
  bool first_cat = true;
  for (const auto& [cat, metrics] : r.categories) {
    if (!first_cat) out << ",";
    first_cat = false;
    out << json_string(to_string(cat)) << ":{";
    bool first_metric = true;
    for (const auto& [name, mv] : metrics) {
      if (!first_metric) out << ",";
      first_metric = false;
      out << json_string(name) << ":{\"spread\":";
      if (mv.spread)
        out << format_double_17(*mv.spread);
      else
        out << "null";
      out << ",\"value\":" << format_double_17(mv.value) << "}";
    }
    out << "}";
  }
  out << "},\"phase\":" << json_string(to_string(r.phase))
      << ",\"schema\":\"a2report/1\",\"task_id\":" << json_string(r.task_id)
      << "}";
  return out.str();
}

inline MetricReport report_from_json_value(const nlohmann::json& doc,
                                           const std::string& path) {
  if (!doc.is_object())
    throw std::runtime_error(path + ": report must be a JSON object");
  if (!doc.contains("schema") || doc.at("schema") != "a2report/1")
    throw std::runtime_error(path + ": expected schema \"a2report/1\"");
  for (const char* f : {"phase", "task_id", "algorithm_id", "categories"})
    if (!doc.contains(f))
      throw std::runtime_error(path + ": missing field \"" + std::string(f) +
                               "\"");
  const auto phase = phase_from_string(doc.at("phase").get<std::string>());
  if (!phase)
    throw std::runtime_error(path + ": phase must be training or inference");

  MetricMap by_category[4];
  for (const auto& [cat_name, metrics] : doc.at("categories").items()) {
    const auto cat = category_from_string(cat_name);
    if (!cat)
      throw std::runtime_error(path + ": unknown category \"" + cat_name +
                               "\"");
    if (!metrics.is_object())
      throw std::runtime_error(path + ": category must map metric names");
    for (const auto& [name, mv] : metrics.items()) {
      if (!mv.is_object() || !mv.contains("value") ||
          !mv.at("value").is_number())
        throw std::runtime_error(path + ": metric \"" + name +
                                 "\" needs a numeric \"value\"");
      MetricValue value;
      value.value = mv.at("value").get<double>();
      if (!std::isfinite(value.value))
        throw std::runtime_error(path + ": metric \"" + name +
                                 "\" value must be finite");
      if (mv.contains("spread") && !mv.at("spread").is_null()) {
        if (!mv.at("spread").is_number())
          throw std::runtime_error(path + ": metric \"" + name +
                                   "\" spread must be a number or null");
        value.spread = mv.at("spread").get<double>();
        if (!std::isfinite(*value.spread) || *value.spread < 0.0)
          throw std::runtime_error(path + ": metric \"" + name +
                                   "\" spread must be finite and >= 0");
      }
      by_category[static_cast<int>(*cat)][name] = value;
    }
  }
  try {
    return build_report(*phase, doc.at("task_id").get<std::string>(),
                        doc.at("algorithm_id").get<std::string>(),
                        by_category[0], by_category[1], by_category[2],
                        by_category[3]);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// Accepts one report object or an array of them.
inline std::vector<MetricReport> reports_from_json(const std::string& text,
                                                   const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": malformed JSON: " + e.what());
  }
  std::vector<MetricReport> out;
  if (doc.is_array()) {
    for (const auto& item : doc)
      out.push_back(report_from_json_value(item, path));
  } else {
    out.push_back(report_from_json_value(doc, path));
  }
  return out;
}

inline std::string reports_to_json(const std::vector<MetricReport>& reports) {
  if (reports.size() == 1) return report_to_json(reports.front()) + "\n";
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ",";
    out += report_to_json(reports[i]);
  }
  return out + "]\n";
}

// ---------------------------------------------------------------------------
// Tables

// 2 decimals, scientific below 0.01, "0" for exact zero.
inline std::string format_metric(double v) {
  if (v == 0.0) return "0";
  char buf[48];
  if (std::abs(v) < 0.01)
    std::snprintf(buf, sizeof(buf), "%.2e", v);
  else
    std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string format_cell(const MetricValue& mv) {
  std::string cell = format_metric(mv.value);
  if (mv.spread && *mv.spread != 0.0)
    cell += " \xc2\xb1 " + format_metric(*mv.spread);  // " ± "
  return cell;
}

namespace detail {

inline const char* category_display_name(MetricCategory c) {
  switch (c) {
    case MetricCategory::data_cost: return "Data Cost";
    case MetricCategory::application: return "Application";
    case MetricCategory::reliability: return "Reliability";
    case MetricCategory::system: return "System";
  }
  return "?";
}

inline std::string shared_task_id(const std::vector<MetricReport>& reports) {
  if (reports.empty())
    throw std::invalid_argument("render requires at least one report");
  const std::string& task = reports.front().task_id;
  for (const auto& r : reports)
    if (r.task_id != task)
      throw std::invalid_argument("mixed-task report list: \"" + task +
                                  "\" vs \"" + r.task_id + "\"");
  return task;
}

inline std::vector<std::string> algorithm_order(
    const std::vector<MetricReport>& reports) {
  std::vector<std::string> order;
  for (const auto& r : reports)
    if (std::find(order.begin(), order.end(), r.algorithm_id) == order.end())
      order.push_back(r.algorithm_id);
  return order;
}

inline const MetricReport* find_report(
    const std::vector<MetricReport>& reports, Phase phase,
    const std::string& algorithm) {
  for (const auto& r : reports)
    if (r.phase == phase && r.algorithm_id == algorithm) return &r;
  return nullptr;
}

}  // namespace detail

// Table shape: one section per phase, category/metric rows, one column per
// algorithm, "value ± spread" cells, "N/A" where a metric is absent.
inline std::string render_markdown(const std::vector<MetricReport>& reports) {
  const auto task = detail::shared_task_id(reports);
  const auto algorithms = detail::algorithm_order(reports);

  std::ostringstream out;
  out << "# " << task << "\n";
  for (Phase phase : {Phase::training, Phase::inference}) {
    bool phase_present = false;
    for (const auto& r : reports) phase_present |= r.phase == phase;
    if (!phase_present) continue;

    out << "\n## " << (phase == Phase::training ? "Training" : "Inference")
        << "\n\n";

    // union of metric names per category, in category then name order
    std::map<MetricCategory, std::set<std::string>> rows;
    std::vector<std::string> empty_reports;
    for (const auto& r : reports) {
      if (r.phase != phase) continue;
      if (r.categories.empty()) empty_reports.push_back(r.algorithm_id);
      for (const auto& [cat, metrics] : r.categories)
        for (const auto& [name, mv] : metrics) {
          (void)mv;
          rows[cat].insert(name);
        }
    }

    out << "| Category | Metric |";
    for (const auto& a : algorithms) out << " " << a << " |";
    out << "\n| --- | --- |";
    for (std::size_t i = 0; i < algorithms.size(); ++i) out << " --- |";
    out << "\n";

    for (const auto& [cat, names] : rows) {
      for (const auto& name : names) {
        out << "| " << detail::category_display_name(cat) << " | " << name
            << " |";
        for (const auto& a : algorithms) {
          const auto* r = detail::find_report(reports, phase, a);
          const MetricValue* mv = nullptr;
          if (r) {
            const auto cit = r->categories.find(cat);
            if (cit != r->categories.end()) {
              const auto mit = cit->second.find(name);
              if (mit != cit->second.end()) mv = &mit->second;
            }
          }
          out << " " << (mv ? format_cell(*mv) : "N/A") << " |";
        }
        out << "\n";
      }
    }
    for (const auto& a : empty_reports)
      out << "\n_empty report: " << a << "_\n";
  }
  return out.str();
}

// One row per (phase, category, metric, algorithm).
inline std::string render_csv(const std::vector<MetricReport>& reports) {
  detail::shared_task_id(reports);
  std::ostringstream out;
  out << "phase,category,metric,algorithm,value,spread\n";
  const auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& r : reports) {
    for (const auto& [cat, metrics] : r.categories) {
      for (const auto& [name, mv] : metrics) {
        out << to_string(r.phase) << "," << to_string(cat) << ","
            << quote(name) << "," << quote(r.algorithm_id) << ","
            << format_metric(mv.value) << ","
            << (mv.spread ? format_metric(*mv.spread) : "") << "\n";
      }
    }
  }
  return out.str();
}

enum class RenderFormat { json, csv, markdown };

inline std::string render(const std::vector<MetricReport>& reports,
                          RenderFormat format) {
  switch (format) {
    case RenderFormat::json: return reports_to_json(reports);
    case RenderFormat::csv: return render_csv(reports);
    case RenderFormat::markdown: return render_markdown(reports);
  }
  throw std::invalid_argument("unknown render format");
}

// ---------------------------------------------------------------------------
// Radar data

struct RadarAxis {
  std::string metric;
  bool lower_is_better = false;
};

struct RadarData {
  std::vector<RadarAxis> axes;
  std::map<std::string, std::vector<double>> series;  // algorithm -> values
};

// Min-max normalization across algorithms per axis; lower-is-better axes are
// inverted so outward always means better. max == min pins every algorithm
// to 1.0 on that axis.
inline RadarData radar_data(const std::vector<MetricReport>& reports,
                            const std::vector<std::string>& axis_names) {
  const auto algorithms = detail::algorithm_order(reports);
  if (algorithms.size() < 2)
    throw std::invalid_argument("radar requires at least 2 algorithms");
  if (axis_names.empty())
    throw std::invalid_argument("radar requires at least one axis");

  const auto& registry = metric_registry();
  RadarData data;
  std::map<std::string, std::vector<double>> raw;  // axis -> per-algorithm

  for (const auto& name : axis_names) {
    const auto rit = registry.find(name);
    if (rit == registry.end())
      throw std::invalid_argument("unknown metric name \"" + name + "\"");
    data.axes.push_back({name, rit->second.lower_is_better});

    auto& column = raw[name];
    for (const auto& algo : algorithms) {
      // merged view over this algorithm's reports (any phase)
      const MetricValue* found = nullptr;
      for (const auto& r : reports) {
        if (r.algorithm_id != algo) continue;
        for (const auto& [cat, metrics] : r.categories) {
          (void)cat;
          const auto mit = metrics.find(name);
          if (mit != metrics.end()) {
            found = &mit->second;
            break;
          }
        }
        if (found) break;
      }
      if (!found)
        throw std::invalid_argument("metric \"" + name +
                                    "\" missing for algorithm \"" + algo +
                                    "\"");
      column.push_back(found->value);
    }
  }

  for (const auto& algo : algorithms) data.series[algo] = {};
  for (const auto& axis : data.axes) {
    const auto& column = raw[axis.metric];
    const double lo = *std::min_element(column.begin(), column.end());
    const double hi = *std::max_element(column.begin(), column.end());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      double norm;
      if (hi == lo) {
        norm = 1.0;
      } else {
        norm = (column[a] - lo) / (hi - lo);
        if (axis.lower_is_better) norm = 1.0 - norm;
      }
      data.series[algorithms[a]].push_back(norm);
    }
  }
  return data;
}

inline std::string radar_to_json(const RadarData& data) {
  std::ostringstream out;
  out << "{\"axes\":[";
  for (std::size_t i = 0; i < data.axes.size(); ++i) {
    if (i) out << ",";
    out << "{\"lower_is_better\":"
        << (data.axes[i].lower_is_better ? "true" : "false")
        << ",\"metric\":" << json_string(data.axes[i].metric) << "}";
  }
  out << "],\"series\":{";
  bool first = true;
  for (const auto& [algo, values] : data.series) {
    if (!first) out << ",";
    first = false;
    out << json_string(algo) << ":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ",";
      out << format_double_17(values[i]);
    }
    out << "]";
  }
  out << "}}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Submission bundles (a2bundle/1)

struct BundleConfig {
  std::optional<std::string> cpu_model;
  std::optional<std::string> gpu_model;
  std::optional<std::string> framework;
  std::optional<std::string> runtime_version;
  std::optional<std::string> os;
  std::optional<std::uint64_t> num_seeds;
  std::map<std::string, std::string> hyperparameters;
};

// Throws listing every missing required field at once.
inline SubmissionBundle make_bundle(const std::vector<MetricReport>& reports,
                                    const BundleConfig& config) {
  std::vector<std::string> missing;
  const auto need_string = [&](const std::optional<std::string>& f,
                               const char* name) {
    if (!f || f->empty()) missing.push_back(name);
  };
  need_string(config.cpu_model, "cpu_model");
  need_string(config.gpu_model, "gpu_model");
  need_string(config.framework, "framework");
  need_string(config.runtime_version, "runtime_version");
  need_string(config.os, "os");
  if (!config.num_seeds || *config.num_seeds < 1)
    missing.push_back("num_seeds");
  if (!missing.empty()) {
    std::string msg = "missing required fields:";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }

  SubmissionBundle b;
  b.cpu_model = *config.cpu_model;
  b.gpu_model = *config.gpu_model;
  b.framework = *config.framework;
  b.runtime_version = *config.runtime_version;
  b.os = *config.os;
  b.num_seeds = *config.num_seeds;
  b.hyperparameters = config.hyperparameters;
  b.reports = reports;
  const auto violations = validate(b);
  if (!violations.empty())
    throw std::invalid_argument("invalid bundle: " + violations.front().field +
                                " " + violations.front().rule);
  return b;
}

inline std::string bundle_to_json(const SubmissionBundle& b) {
  std::ostringstream out;
  out << "{\"config\":{\"cpu_model\":" << json_string(b.cpu_model)
      << ",\"framework\":" << json_string(b.framework)
      << ",\"gpu_model\":" << json_string(b.gpu_model)
      << ",\"os\":" << json_string(b.os)
      << ",\"runtime_version\":" << json_string(b.runtime_version)
      << "},\"hyperparameters\":{";
  bool first = true;
  for (const auto& [k, v] : b.hyperparameters) {
    if (!first) out << ",";
    first = false;
    out << json_string(k) << ":" << json_string(v);
  }
  out << "},\"num_seeds\":" << b.num_seeds << ",\"reports\":[";
  for (std::size_t i = 0; i < b.reports.size(); ++i) {
    if (i) out << ",";
    out << report_to_json(b.reports[i]);
  }
  out << "],\"schema\":\"a2bundle/1\"}\n";
  return out.str();
}

inline BundleConfig parse_bundle_config(std::istream& in,
                                        const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object())
    throw std::runtime_error(path + ": config must be a JSON object");
  BundleConfig cfg;
  const auto take_string = [&](const char* name,
                               std::optional<std::string>& slot) {
    if (doc.contains(name)) {
      if (!doc.at(name).is_string())
        throw std::runtime_error(path + ": \"" + name +
                                 "\" must be a string");
      slot = doc.at(name).get<std::string>();
    }
  };
  take_string("cpu_model", cfg.cpu_model);
  take_string("gpu_model", cfg.gpu_model);
  take_string("framework", cfg.framework);
  take_string("runtime_version", cfg.runtime_version);
  take_string("os", cfg.os);
  if (doc.contains("num_seeds")) {
    if (!doc.at("num_seeds").is_number_unsigned())
      throw std::runtime_error(path +
                               ": \"num_seeds\" must be a positive integer");
    cfg.num_seeds = doc.at("num_seeds").get<std::uint64_t>();
  }
  if (doc.contains("hyperparameters")) {
    if (!doc.at("hyperparameters").is_object())
      throw std::runtime_error(
          path + ": \"hyperparameters\" must map strings to strings");
    for (const auto& [k, v] : doc.at("hyperparameters").items()) {
      if (!v.is_string())
        throw std::runtime_error(path + ": hyperparameter \"" + k +
                                 "\" must be a string");
      cfg.hyperparameters[k] = v.get<std::string>();
    }
  }
  return cfg;
}

inline SubmissionBundle bundle_from_json(const std::string& text,
                                         const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") ||
      doc.at("schema") != "a2bundle/1")
    throw std::runtime_error(path + ": expected schema \"a2bundle/1\"");
  for (const char* f : {"config", "num_seeds", "hyperparameters", "reports"})
    if (!doc.contains(f))
      throw std::runtime_error(path + ": missing field \"" + std::string(f) +
                               "\"");
  const auto& config = doc.at("config");
  for (const char* f :
       {"cpu_model", "gpu_model", "framework", "runtime_version", "os"})
    if (!config.contains(f) || !config.at(f).is_string())
      throw std::runtime_error(path + ": config missing string \"" +
                               std::string(f) + "\"");

  SubmissionBundle b;
  b.cpu_model = config.at("cpu_model").get<std::string>();
  b.gpu_model = config.at("gpu_model").get<std::string>();
  b.framework = config.at("framework").get<std::string>();
  b.runtime_version = config.at("runtime_version").get<std::string>();
  b.os = config.at("os").get<std::string>();
  if (!doc.at("num_seeds").is_number_unsigned())
    throw std::runtime_error(path + ": num_seeds must be a positive integer");
  b.num_seeds = doc.at("num_seeds").get<std::uint64_t>();
  for (const auto& [k, v] : doc.at("hyperparameters").items()) {
    if (!v.is_string())
      throw std::runtime_error(path + ": hyperparameter \"" + k +
                               "\" must be a string");
    b.hyperparameters[k] = v.get<std::string>();
  }
  for (const auto& jr : doc.at("reports"))
    b.reports.push_back(report_from_json_value(jr, path));

  const auto violations = validate(b);
  if (!violations.empty())
    throw std::runtime_error(path + ": invalid bundle: " +
                             violations.front().field + " " +
                             violations.front().rule);
  return b;
}

}  // namespace a2bench
