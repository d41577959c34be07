// Subprocess resource monitoring and system metrics.
//
// monitor() spawns a command and samples it on a fixed cadence until it
// exits: resident-set bytes summed over the child's process tree, CPU power
// from RAPL energy counters where the platform exposes them (falling back to
// a constant-TDP estimate, tagged in the trace annotations), and GPU power
// from an optional external command hook that prints watts on stdout.
// Sampler hiccups annotate the trace; they never kill the child.
//
// Downstream, energy_consumed() trapezoid-integrates total power over the
// sample timestamps, and summarize() reduces a trace to the system metric
// block (energy, mean/peak power and RAM, wall clock, optional inference
// latency). GB means 1e9 bytes.
#pragma once

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "a2bench/jsonfmt.hpp"
#include "a2bench/model.hpp"
#include "a2bench/reliability.hpp"

namespace a2bench {

struct MonitorConfig {
  double interval_s = 1.0;  // sampling floor is 0.1 s
  enum class CpuPowerSource { hardware_counter, tdp_model };
  CpuPowerSource cpu_power_source = CpuPowerSource::hardware_counter;
  double tdp_watts = 65.0;
  std::optional<std::string> gpu_power_command;
  bool include_process_tree = true;

  void check() const {
    if (interval_s < 0.1)
      throw std::invalid_argument("interval_s must be >= 0.1");
    if (tdp_watts <= 0.0)
      throw std::invalid_argument("tdp_watts must be > 0");
  }
};

struct SystemSummary {
  double energy_kwh = 0.0;
  double mean_power_w = 0.0;
  double peak_power_w = 0.0;
  double mean_ram_gb = 0.0;
  double peak_ram_gb = 0.0;
  double wall_clock_hours = 0.0;
  std::optional<MetricOutcome> inference_time_ms;
  std::vector<std::string> notes;
};

struct MonitorResult {
  TelemetryTrace trace;
  int exit_status = 0;
};

namespace procfs {

inline long page_size() {
  static const long cached = ::sysconf(_SC_PAGESIZE);
  return cached;
}

// Resident-set bytes of one process, 0 if it is gone.
inline std::uint64_t rss_bytes(pid_t pid) {
  std::ifstream in("/proc/" + std::to_string(pid) + "/statm");
  if (!in) return 0;
  std::uint64_t size_pages = 0, resident_pages = 0;
  in >> size_pages >> resident_pages;
  if (!in) return 0;
  return resident_pages * static_cast<std::uint64_t>(page_size());
}

// pid -> ppid over all live processes.
inline std::map<pid_t, pid_t> parent_map() {
  std::map<pid_t, pid_t> parents;
  std::error_code ec;
  for (const auto& entry :
       std::filesystem::directory_iterator("/proc", ec)) {
    const auto name = entry.path().filename().string();
    if (name.empty() || !std::isdigit(static_cast<unsigned char>(name[0])))
      continue;
    std::ifstream in(entry.path() / "stat");
    if (!in) continue;
    std::string line;
    std::getline(in, line);
    // comm may contain spaces; ppid is the second field after the last ')'
    const auto close = line.rfind(')');
    if (close == std::string::npos) continue;
    std::istringstream rest(line.substr(close + 1));
    std::string state;
    pid_t ppid = 0;
    rest >> state >> ppid;
    if (rest) parents[static_cast<pid_t>(std::stol(name))] = ppid;
  }
  return parents;
}

// RSS summed over root and its descendants.
inline std::uint64_t tree_rss_bytes(pid_t root) {
  const auto parents = parent_map();
  std::uint64_t total = 0;
  for (const auto& [pid, ppid] : parents) {
    (void)ppid;
    pid_t cursor = pid;
    for (int hop = 0; hop < 128; ++hop) {
      if (cursor == root) {
        total += rss_bytes(pid);
        break;
      }
      const auto it = parents.find(cursor);
      if (it == parents.end() || it->second == cursor) break;
      cursor = it->second;
      if (cursor <= 1 && cursor != root) break;
    }
  }
  return total;
}

}  // namespace procfs

namespace detail {

// Cumulative RAPL package energy in joules, if the platform exposes it.
class RaplReader {
 public:
  RaplReader() {
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(
             "/sys/class/powercap", ec)) {
      const auto name = entry.path().filename().string();
      // top-level package domains only (intel-rapl:N, no sub-zone suffix)
      if (name.rfind("intel-rapl:", 0) != 0 ||
          name.find(':', 11) != std::string::npos)
        continue;
      std::ifstream probe(entry.path() / "energy_uj");
      double value = 0.0;
      if (probe >> value) domains_.push_back((entry.path() / "energy_uj"));
    }
  }

  bool available() const { return !domains_.empty(); }

  // Sum across package domains; returns false if any read fails.
  bool read_joules(double& joules) const {
    double total_uj = 0.0;
    for (const auto& path : domains_) {
      std::ifstream in(path);
      double uj = 0.0;
      if (!(in >> uj)) return false;
      total_uj += uj;
    }
    joules = total_uj / 1e6;
    return true;
  }

 private:
  std::vector<std::filesystem::path> domains_;
};

inline std::optional<double> run_power_hook(const std::string& command) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  char buf[256];
  std::string output;
  while (std::fgets(buf, sizeof(buf), pipe)) output += buf;
  const int status = ::pclose(pipe);
  if (status != 0) return std::nullopt;
  try {
    const double watts = std::stod(output);
    if (!std::isfinite(watts) || watts < 0.0) return std::nullopt;
    return watts;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// fork/exec with an O_CLOEXEC pipe so exec failures surface as errors in the
// parent instead of a phantom child.
inline pid_t spawn_or_throw(const std::vector<std::string>& command) {
  if (command.empty())
    throw std::invalid_argument("monitor: empty command");
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0)
    throw std::runtime_error("monitor: pipe2 failed");

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw std::runtime_error("monitor: fork failed");
  }
  if (pid == 0) {
    ::close(fds[0]);
    std::vector<char*> argv;
    argv.reserve(command.size() + 1);
    for (const auto& arg : command)
      argv.push_back(const_cast<char*>(arg.c_str()));
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    const int err = errno;
    (void)!::write(fds[1], &err, sizeof(err));
    ::_exit(127);
  }
  ::close(fds[1]);
  int exec_errno = 0;
  const ssize_t n = ::read(fds[0], &exec_errno, sizeof(exec_errno));
  ::close(fds[0]);
  if (n == sizeof(exec_errno)) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    throw std::runtime_error("monitor: cannot execute \"" + command[0] +
                             "\": " + std::strerror(exec_errno));
  }
  return pid;
}

}  // namespace detail

inline MonitorResult monitor(const std::vector<std::string>& command,
                             const MonitorConfig& cfg = {}) {
  cfg.check();
  using clock = std::chrono::steady_clock;

  detail::RaplReader rapl;
  const bool use_rapl =
      cfg.cpu_power_source == MonitorConfig::CpuPowerSource::hardware_counter &&
      rapl.available();

  MonitorResult result;
  if (cfg.cpu_power_source == MonitorConfig::CpuPowerSource::tdp_model ||
      !use_rapl) {
    result.trace.annotations.push_back(
        "cpu power estimated: tdp_model at " + format_double_17(cfg.tdp_watts) +
        " W");
  }

  const pid_t child = detail::spawn_or_throw(command);
  const auto start = clock::now();

  double prev_joules = 0.0;
  double prev_t = 0.0;
  bool have_prev_joules = use_rapl && rapl.read_joules(prev_joules);
  bool gpu_hook_failed = false;

  const auto elapsed_s = [&] {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  const auto take_sample = [&] {
    TelemetrySample s;
    s.t_s = elapsed_s();
    s.ram_bytes = cfg.include_process_tree ? procfs::tree_rss_bytes(child)
                                           : procfs::rss_bytes(child);
    if (use_rapl) {
      double joules = 0.0;
      if (rapl.read_joules(joules) && have_prev_joules &&
          s.t_s > prev_t && joules >= prev_joules) {
        s.cpu_power_w = (joules - prev_joules) / (s.t_s - prev_t);
        prev_joules = joules;
        prev_t = s.t_s;
      } else if (rapl.read_joules(joules)) {
        prev_joules = joules;
        prev_t = s.t_s;
        have_prev_joules = true;
        s.cpu_power_w = 0.0;
      } else {
        result.trace.annotations.push_back("rapl read failed mid-run");
        s.cpu_power_w = 0.0;
      }
    } else {
      s.cpu_power_w = cfg.tdp_watts;
    }
    if (cfg.gpu_power_command) {
      const auto watts = detail::run_power_hook(*cfg.gpu_power_command);
      if (watts) {
        s.gpu_power_w = *watts;
      } else if (!gpu_hook_failed) {
        gpu_hook_failed = true;
        result.trace.annotations.push_back("gpu power hook failed");
      }
    }
    result.trace.samples.push_back(s);
  };

  take_sample();
  double next_sample_t = cfg.interval_s;
  int status = 0;
  for (;;) {
    const pid_t waited = ::waitpid(child, &status, WNOHANG);
    if (waited == child) break;
    if (waited < 0) {
      result.trace.annotations.push_back("waitpid failed mid-run");
      status = 0;
      break;
    }
    if (elapsed_s() >= next_sample_t) {
      take_sample();
      next_sample_t += cfg.interval_s;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  result.trace.wall_clock_s = elapsed_s();

  if (WIFEXITED(status))
    result.exit_status = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_status = 128 + WTERMSIG(status);
  return result;
}

// Trapezoidal integral of total power over the sample timestamps, J -> kWh.
inline double energy_consumed(const TelemetryTrace& trace) {
  if (trace.samples.size() < 2)
    throw std::invalid_argument(
        "energy_consumed requires at least 2 samples");
  double joules = 0.0;
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const auto& a = trace.samples[i - 1];
    const auto& b = trace.samples[i];
    const double pa = a.cpu_power_w + a.gpu_power_w;
    const double pb = b.cpu_power_w + b.gpu_power_w;
    joules += 0.5 * (pa + pb) * (b.t_s - a.t_s);
  }
  return joules / 3.6e6;
}

inline SystemSummary summarize(
    const TelemetryTrace& trace,
    const std::optional<std::vector<double>>& inference_latencies_ms = {}) {
  if (trace.samples.empty())
    throw std::invalid_argument("summarize of empty trace");

  SystemSummary s;
  double ram_sum = 0.0, power_sum = 0.0;
  for (const auto& sample : trace.samples) {
    const double ram_gb = static_cast<double>(sample.ram_bytes) / 1e9;
    const double power = sample.cpu_power_w + sample.gpu_power_w;
    ram_sum += ram_gb;
    power_sum += power;
    s.peak_ram_gb = std::max(s.peak_ram_gb, ram_gb);
    s.peak_power_w = std::max(s.peak_power_w, power);
  }
  const auto n = static_cast<double>(trace.samples.size());
  s.mean_ram_gb = ram_sum / n;
  s.mean_power_w = power_sum / n;
  s.energy_kwh = trace.samples.size() >= 2 ? energy_consumed(trace) : 0.0;
  s.wall_clock_hours = trace.wall_clock_s / 3600.0;
  if (inference_latencies_ms && !inference_latencies_ms->empty())
    s.inference_time_ms = MetricOutcome{stats::mean(*inference_latencies_ms),
                                        stats::stddev(*inference_latencies_ms)};
  s.notes = trace.annotations;
  return s;
}

// Wall-clock milliseconds per run of the step command; warmup runs are
// executed and discarded. Any failing run aborts the measurement.
inline std::vector<double> measure_latencies(
    const std::vector<std::string>& step_command, int iterations,
    int warmup = 0) {
  if (iterations < 1)
    throw std::invalid_argument("iterations must be >= 1");
  if (warmup < 0) throw std::invalid_argument("warmup must be >= 0");
  using clock = std::chrono::steady_clock;

  std::vector<double> latencies;
  latencies.reserve(static_cast<std::size_t>(iterations));
  for (int i = 0; i < warmup + iterations; ++i) {
    const auto begin = clock::now();
    const pid_t pid = detail::spawn_or_throw(step_command);
    int status = 0;
    if (::waitpid(pid, &status, 0) != pid || !WIFEXITED(status) ||
        WEXITSTATUS(status) != 0)
      throw std::runtime_error("step command failed on iteration " +
                               std::to_string(i));
    const double ms =
        std::chrono::duration<double, std::milli>(clock::now() - begin)
            .count();
    if (i >= warmup) latencies.push_back(ms);
  }
  return latencies;
}

inline std::string summary_to_json(const SystemSummary& s) {
  std::ostringstream out;
  out << "{\"energy_kwh\":" << format_double_17(s.energy_kwh)
      << ",\"inference_time_ms\":";
  if (s.inference_time_ms) {
    out << "{\"mean\":" << format_double_17(s.inference_time_ms->value)
        << ",\"spread\":"
        << format_double_17(s.inference_time_ms->spread.value_or(0.0)) << "}";
  } else {
    out << "null";
  }
  out << ",\"mean_power_w\":" << format_double_17(s.mean_power_w)
      << ",\"mean_ram_gb\":" << format_double_17(s.mean_ram_gb)
      << ",\"notes\":[";
  for (std::size_t i = 0; i < s.notes.size(); ++i) {
    if (i) out << ",";
    out << json_string(s.notes[i]);
  }
  out << "],\"peak_power_w\":" << format_double_17(s.peak_power_w)
      << ",\"peak_ram_gb\":" << format_double_17(s.peak_ram_gb)
      << ",\"wall_clock_hours\":" << format_double_17(s.wall_clock_hours)
      << "}\n";
  return out.str();
}

}  // namespace a2bench
