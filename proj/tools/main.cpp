// a2bench: benchmark harness CLI.
//
// Subcommands:
//   metrics reliability   training/inference reliability metrics -> report
//   metrics datacost      training-sample-cost accounting -> report
//   monitor               run a command under the resource sampler
//   webgen                procedural website generation
//   report                render reports (json/csv/markdown/radar)
//   submit                build a leaderboard submission bundle
//   validate              check a file against one of the on-disk schemas
//
// Exit codes: 0 success, 1 validation/parse failure, 2 usage error,
// 3 monitored child exited nonzero. Diagnostics go to stderr; data goes to
// stdout or --out.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "a2bench/datacost.hpp"
#include "a2bench/ingest.hpp"
#include "a2bench/model.hpp"
#include "a2bench/reliability.hpp"
#include "a2bench/report.hpp"
#include "a2bench/telemetry.hpp"
#include "a2bench/webgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitChildFailed = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

// --- metrics reliability ---------------------------------------------------

struct ReliabilityArgs {
  std::string runs_path;
  std::string rollouts_path;
  double alpha = 0.05;
  int window = 5;
  int final_tail_k = 1;
  std::string alignment = "interpolate";
  std::string task_id;
  std::string algorithm_id;
  std::string out_path;
};

int run_metrics_reliability(const ReliabilityArgs& args) {
  if (args.runs_path.empty() && args.rollouts_path.empty())
    return usage_error("at least one of --runs/--rollouts is required");
  if (args.window < 3 || args.window % 2 == 0)
    return usage_error("--window must be an odd integer >= 3");
  if (!(args.alpha > 0.0 && args.alpha < 1.0))
    return usage_error("--alpha must be in (0, 1)");
  if (args.final_tail_k < 1)
    return usage_error("--final-tail-k must be >= 1");
  if (args.alignment != "strict" && args.alignment != "interpolate")
    return usage_error("--alignment must be strict or interpolate");

  a2bench::ReliabilityConfig cfg;
  cfg.alpha = args.alpha;
  cfg.window = args.window;
  cfg.final_tail_k = args.final_tail_k;
  cfg.alignment = args.alignment == "strict"
                      ? a2bench::ReliabilityConfig::Alignment::strict
                      : a2bench::ReliabilityConfig::Alignment::interpolate;

  std::vector<a2bench::MetricReport> reports;
  if (!args.runs_path.empty()) {
    a2bench::ParseSummary summary;
    const auto runs = a2bench::load_training_curves(
        args.runs_path, args.task_id, args.algorithm_id, &summary);
    if (summary.unknown_field_warnings > 0)
      std::cerr << "warning: " << summary.unknown_field_warnings
                << " unknown field(s) ignored in " << args.runs_path << "\n";
    const auto violations = a2bench::validate(runs);
    if (!violations.empty())
      throw std::runtime_error(args.runs_path + ": " +
                               violations.front().field + " " +
                               violations.front().rule);
    a2bench::MetricMap reliability;
    for (const auto& [name, outcome] : a2bench::training_reliability(runs, cfg))
      reliability[name] = {outcome.value, outcome.spread};
    reports.push_back(a2bench::build_report(a2bench::Phase::training,
                                            args.task_id, args.algorithm_id,
                                            {}, {}, reliability, {}));
  }
  if (!args.rollouts_path.empty()) {
    a2bench::ParseSummary summary;
    const auto rollouts = a2bench::load_rollouts(
        args.rollouts_path, args.task_id, args.algorithm_id, &summary);
    if (summary.unknown_field_warnings > 0)
      std::cerr << "warning: " << summary.unknown_field_warnings
                << " unknown field(s) ignored in " << args.rollouts_path
                << "\n";
    a2bench::MetricMap reliability;
    for (const auto& [name, outcome] :
         a2bench::inference_reliability(rollouts, cfg))
      reliability[name] = {outcome.value, outcome.spread};
    reports.push_back(a2bench::build_report(a2bench::Phase::inference,
                                            args.task_id, args.algorithm_id,
                                            {}, {}, reliability, {}));
  }
  write_output(a2bench::reports_to_json(reports), args.out_path);
  return kExitOk;
}

// --- metrics datacost --------------------------------------------------------

struct DatacostArgs {
  std::string manifest_path;
  double train_energy_kwh = 0.0;
  bool train_energy_given = false;
  std::string task_id;
  std::string algorithm_id;
  std::string out_path;
};

int run_metrics_datacost(const DatacostArgs& args) {
  if (!args.train_energy_given)
    std::cerr << "warning: --train-energy-kwh not given, defaulting to 0\n";
  if (args.train_energy_kwh < 0.0)
    return usage_error("--train-energy-kwh must be >= 0");

  std::vector<a2bench::DatasetDescriptor> datasets;
  if (!args.manifest_path.empty())
    datasets = a2bench::load_dataset_manifest(args.manifest_path);

  const double sample_cost = a2bench::total_training_sample_cost(datasets);
  const auto breakdown =
      a2bench::total_energy_cost(sample_cost, args.train_energy_kwh);

  a2bench::MetricMap data_cost;
  data_cost["Training Sample Cost"] = {breakdown.training_sample_cost_kwh, {}};
  data_cost["Training Energy (kWh)"] = {breakdown.training_energy_kwh, {}};
  data_cost["Total Energy Cost (kWh)"] = {breakdown.total_kwh, {}};
  const auto report =
      a2bench::build_report(a2bench::Phase::training, args.task_id,
                            args.algorithm_id, data_cost, {}, {}, {});
  write_output(a2bench::reports_to_json({report}), args.out_path);
  return kExitOk;
}

// --- monitor -----------------------------------------------------------------

struct MonitorArgs {
  double interval_s = 1.0;
  std::string out_path;
  std::string summary_out_path;
  std::string gpu_power_cmd;
  std::string cpu_power_source = "hardware_counter";
  double tdp_watts = 65.0;
  bool no_process_tree = false;
  std::vector<std::string> command;
};

int run_monitor(const MonitorArgs& args) {
  if (args.command.empty())
    return usage_error("no command given after --");
  if (args.interval_s < 0.1)
    return usage_error("--interval-s must be >= 0.1 (sampling floor)");
  if (args.cpu_power_source != "hardware_counter" &&
      args.cpu_power_source != "tdp_model")
    return usage_error("--cpu-power-source must be hardware_counter or "
                       "tdp_model");

  a2bench::MonitorConfig cfg;
  cfg.interval_s = args.interval_s;
  cfg.cpu_power_source =
      args.cpu_power_source == "tdp_model"
          ? a2bench::MonitorConfig::CpuPowerSource::tdp_model
          : a2bench::MonitorConfig::CpuPowerSource::hardware_counter;
  cfg.tdp_watts = args.tdp_watts;
  if (!args.gpu_power_cmd.empty()) cfg.gpu_power_command = args.gpu_power_cmd;
  cfg.include_process_tree = !args.no_process_tree;

  const auto result = a2bench::monitor(args.command, cfg);

  std::ostringstream trace_text;
  a2bench::write_telemetry(result.trace, trace_text);
  write_output(trace_text.str(), args.out_path);
  write_output(a2bench::summary_to_json(a2bench::summarize(result.trace)),
               args.summary_out_path);

  if (result.exit_status != 0) {
    std::cerr << "monitored command exited with status "
              << result.exit_status << "\n";
    return kExitChildFailed;
  }
  return kExitOk;
}

// --- webgen --------------------------------------------------------------------

struct WebgenArgs {
  std::size_t num_websites = 1;
  std::uint64_t seed = 0;
  int difficulty_level = 0;  // 0 = no filter
  std::string registry_path;
  std::string render_html_dir;
  std::string out_dir = ".";
};

int run_webgen(const WebgenArgs& args) {
  if (args.num_websites < 1)
    return usage_error("--num-websites must be >= 1");
  if (args.difficulty_level < 0 || args.difficulty_level > 3)
    return usage_error("--difficulty-level must be 1, 2 or 3");

  a2bench::GenConfig cfg;
  cfg.num_websites = args.num_websites;
  cfg.seed = args.seed;
  if (!args.registry_path.empty()) {
    std::ifstream in(args.registry_path);
    if (!in)
      throw std::runtime_error("cannot open registry file " +
                               args.registry_path);
    cfg.registry = a2bench::parse_registry(in, args.registry_path);
  }
  if (args.difficulty_level != 0)
    cfg.level_filter =
        static_cast<a2bench::DifficultyLevel>(args.difficulty_level);

  const auto sites = a2bench::generate_websites(cfg);

  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  std::map<std::string, std::size_t> level_histogram;
  double min_nats = 0.0, max_nats = 0.0, sum_nats = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& site = sites[i];
    const auto path =
        (fs::path(args.out_dir) / (site.website_id + ".json")).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << a2bench::website_to_json(site) << "\n";
    if (!args.render_html_dir.empty())
      a2bench::render_html(
          site, (fs::path(args.render_html_dir) / site.website_id).string());

    ++level_histogram["level " + a2bench::to_string(site.level)];
    min_nats = i == 0 ? site.difficulty_nats
                      : std::min(min_nats, site.difficulty_nats);
    max_nats = std::max(max_nats, site.difficulty_nats);
    sum_nats += site.difficulty_nats;
  }

  std::cout << "generated " << sites.size() << " website(s) into "
            << args.out_dir << "\n";
  for (const auto& [label, count] : level_histogram)
    std::cout << "  " << label << ": " << count << "\n";
  std::cout << "  difficulty nats: min "
            << a2bench::format_double_17(min_nats) << ", mean "
            << a2bench::format_double_17(sum_nats /
                                         static_cast<double>(sites.size()))
            << ", max " << a2bench::format_double_17(max_nats) << "\n";
  return kExitOk;
}

// --- report ----------------------------------------------------------------------

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string format = "markdown";
  std::vector<std::string> axes;
  std::string out_path;
};

int run_report(const ReportArgs& args) {
  if (args.inputs.empty()) return usage_error("--inputs is required");

  std::vector<a2bench::MetricReport> reports;
  for (const auto& path : args.inputs) {
    const auto loaded = a2bench::reports_from_json(read_file(path), path);
    reports.insert(reports.end(), loaded.begin(), loaded.end());
  }

  if (args.format == "radar") {
    if (args.axes.empty())
      return usage_error("--axes is required with --format radar");
    std::size_t algorithms = 0;
    std::set<std::string> seen;
    for (const auto& r : reports)
      if (seen.insert(r.algorithm_id).second) ++algorithms;
    if (algorithms < 2)
      return usage_error("radar requires reports from >= 2 algorithms");
    write_output(
        a2bench::radar_to_json(a2bench::radar_data(reports, args.axes)),
        args.out_path);
    return kExitOk;
  }

  a2bench::RenderFormat format;
  if (args.format == "json")
    format = a2bench::RenderFormat::json;
  else if (args.format == "csv")
    format = a2bench::RenderFormat::csv;
  else if (args.format == "markdown")
    format = a2bench::RenderFormat::markdown;
  else
    return usage_error("--format must be json, csv, markdown or radar");

  write_output(a2bench::render(reports, format), args.out_path);
  return kExitOk;
}

// --- submit ---------------------------------------------------------------------

struct SubmitArgs {
  std::vector<std::string> report_paths;
  std::string config_path;
  std::string out_path;
};

int run_submit(const SubmitArgs& args) {
  std::vector<a2bench::MetricReport> reports;
  for (const auto& path : args.report_paths) {
    const auto loaded = a2bench::reports_from_json(read_file(path), path);
    reports.insert(reports.end(), loaded.begin(), loaded.end());
  }
  std::ifstream in(args.config_path);
  if (!in)
    throw std::runtime_error("cannot open config " + args.config_path);
  const auto config = a2bench::parse_bundle_config(in, args.config_path);
  const auto bundle = a2bench::make_bundle(reports, config);
  write_output(a2bench::bundle_to_json(bundle), args.out_path);
  return kExitOk;
}

// --- validate --------------------------------------------------------------------

struct ValidateArgs {
  std::string schema;
  std::string file;
};

int run_validate(const ValidateArgs& args) {
  const std::set<std::string> known = {"training-curves", "rollouts",
                                       "telemetry", "manifest", "report",
                                       "bundle", "website"};
  if (!known.contains(args.schema)) {
    std::cerr << "error: unknown schema \"" << args.schema
              << "\" (expected one of: training-curves rollouts telemetry "
                 "manifest report bundle website)\n";
    return kExitUsage;
  }

  const auto check_violations = [&](const a2bench::Violations& vs) {
    for (const auto& v : vs)
      std::cerr << args.file << ": " << v.field << ": " << v.rule << "\n";
    return vs.empty() ? kExitOk : kExitDataError;
  };

  if (args.schema == "training-curves")
    return check_violations(
        a2bench::validate(a2bench::load_training_curves(args.file)));
  if (args.schema == "rollouts")
    return check_violations(
        a2bench::validate(a2bench::load_rollouts(args.file)));
  if (args.schema == "telemetry")
    return check_violations(
        a2bench::validate(a2bench::load_telemetry(args.file)));
  if (args.schema == "manifest") {
    a2bench::Violations all;
    for (const auto& d : a2bench::load_dataset_manifest(args.file)) {
      const auto vs = a2bench::validate(d);
      all.insert(all.end(), vs.begin(), vs.end());
    }
    return check_violations(all);
  }
  if (args.schema == "report") {
    a2bench::Violations all;
    for (const auto& r :
         a2bench::reports_from_json(read_file(args.file), args.file)) {
      const auto vs = a2bench::validate(r);
      all.insert(all.end(), vs.begin(), vs.end());
    }
    return check_violations(all);
  }
  if (args.schema == "bundle")
    return check_violations(a2bench::validate(
        a2bench::bundle_from_json(read_file(args.file), args.file)));
  // website
  const auto site =
      a2bench::website_from_json(read_file(args.file), args.file);
  return check_violations(a2bench::validate(site));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark harness: agent metrics, telemetry, task generation "
               "and reporting"};
  app.require_subcommand(1);

  auto* metrics =
      app.add_subcommand("metrics", "compute metric suites from logs");
  metrics->require_subcommand(1);

  ReliabilityArgs rel;
  auto* rel_cmd = metrics->add_subcommand(
      "reliability", "reliability metrics from training curves and rollouts");
  rel_cmd->add_option("--runs", rel.runs_path,
                      "training-curve JSONL (training phase metrics)");
  rel_cmd->add_option("--rollouts", rel.rollouts_path,
                      "rollout JSONL (inference phase metrics)");
  rel_cmd->add_option("--alpha", rel.alpha, "CVaR tail fraction")
      ->capture_default_str();
  rel_cmd->add_option("--window", rel.window, "sliding window length (odd)")
      ->capture_default_str();
  rel_cmd->add_option("--final-tail-k", rel.final_tail_k,
                      "checkpoints averaged into final performance")
      ->capture_default_str();
  rel_cmd->add_option("--alignment", rel.alignment,
                      "run alignment: strict or interpolate")
      ->capture_default_str();
  rel_cmd->add_option("--task-id", rel.task_id, "task identifier")
      ->capture_default_str();
  rel_cmd->add_option("--algorithm-id", rel.algorithm_id,
                      "algorithm identifier")
      ->capture_default_str();
  rel_cmd->add_option("--out", rel.out_path,
                      "output path (default: stdout)");

  DatacostArgs dc;
  auto* dc_cmd = metrics->add_subcommand(
      "datacost", "training-sample-cost accounting from a dataset manifest");
  dc_cmd->add_option("--manifest", dc.manifest_path,
                     "dataset manifest JSON (omit for online-only methods)");
  auto* dc_energy =
      dc_cmd->add_option("--train-energy-kwh", dc.train_energy_kwh,
                         "energy consumed by the learner's own training run");
  dc_energy->capture_default_str();
  dc_cmd->add_option("--task-id", dc.task_id, "task identifier")
      ->capture_default_str();
  dc_cmd->add_option("--algorithm-id", dc.algorithm_id,
                     "algorithm identifier")
      ->capture_default_str();
  dc_cmd->add_option("--out", dc.out_path, "output path (default: stdout)");

  MonitorArgs mon;
  auto* mon_cmd = app.add_subcommand(
      "monitor", "run a command under the resource sampler");
  mon_cmd->add_option("--interval-s", mon.interval_s,
                      "sampling interval in seconds (floor 0.1)")
      ->capture_default_str();
  mon_cmd->add_option("--out", mon.out_path,
                      "telemetry JSONL path (default: stdout)");
  mon_cmd->add_option("--summary-out", mon.summary_out_path,
                      "summary JSON path (default: stdout)");
  mon_cmd->add_option("--gpu-power-cmd", mon.gpu_power_cmd,
                      "command printing GPU watts, run once per sample");
  mon_cmd->add_option("--cpu-power-source", mon.cpu_power_source,
                      "hardware_counter or tdp_model")
      ->capture_default_str();
  mon_cmd->add_option("--tdp-watts", mon.tdp_watts,
                      "nameplate watts for the tdp_model estimate")
      ->capture_default_str();
  mon_cmd->add_flag("--no-process-tree", mon.no_process_tree,
                    "sample only the direct child, not its process tree");
  mon_cmd->add_option("command", mon.command,
                      "command to run (everything after --)");

  WebgenArgs web;
  auto* web_cmd =
      app.add_subcommand("webgen", "generate procedural websites");
  web_cmd->add_option("--num-websites", web.num_websites,
                      "number of websites to generate")
      ->capture_default_str();
  web_cmd->add_option("--seed", web.seed, "generation seed")
      ->capture_default_str();
  web_cmd->add_option("--difficulty-level", web.difficulty_level,
                      "rejection-sample to level 1, 2 or 3");
  web_cmd->add_option("--registry", web.registry_path,
                      "primitive registry override JSON");
  web_cmd->add_option("--render-html", web.render_html_dir,
                      "also render static HTML under this directory");
  web_cmd->add_option("--out", web.out_dir, "output directory for spec JSON")
      ->capture_default_str();

  ReportArgs rep;
  auto* rep_cmd =
      app.add_subcommand("report", "render metric reports");
  rep_cmd->add_option("--inputs", rep.inputs, "report JSON files");
  rep_cmd->add_option("--format", rep.format,
                      "json, csv, markdown or radar")
      ->capture_default_str();
  rep_cmd->add_option("--axes", rep.axes,
                      "metric names for the radar axes");
  rep_cmd->add_option("--out", rep.out_path, "output path (default: stdout)");

  SubmitArgs sub;
  auto* sub_cmd = app.add_subcommand(
      "submit", "assemble a leaderboard submission bundle");
  sub_cmd->add_option("--report", sub.report_paths, "report JSON files")
      ->required();
  sub_cmd->add_option("--config", sub.config_path,
                      "hardware/software configuration JSON")
      ->required();
  sub_cmd->add_option("--out", sub.out_path, "output path (default: stdout)");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand(
      "validate", "validate a file against an on-disk schema");
  val_cmd
      ->add_option("--schema", val.schema,
                   "training-curves, rollouts, telemetry, manifest, report, "
                   "bundle or website")
      ->required();
  val_cmd->add_option("--file", val.file, "file to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (rel_cmd->parsed()) return run_metrics_reliability(rel);
    if (dc_cmd->parsed()) {
      dc.train_energy_given = dc_energy->count() > 0;
      return run_metrics_datacost(dc);
    }
    if (mon_cmd->parsed()) return run_monitor(mon);
    if (web_cmd->parsed()) return run_webgen(web);
    if (rep_cmd->parsed()) return run_report(rep);
    if (sub_cmd->parsed()) return run_submit(sub);
    if (val_cmd->parsed()) return run_validate(val);
  } catch (const a2bench::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}
