// Bundled demo data: complete training and inference metric reports for
// three agents (BC, DDQN, PPO) on the "ariane" chip-floorplanning task.
// Used by the test suites as a golden rendering fixture and handy as sample
// input for the report/submit commands.
#pragma once

#include <vector>

#include "a2bench/report.hpp"

namespace a2bench {

inline std::vector<MetricReport> ariane_demo_reports() {
  const auto v = [](double value) { return MetricValue{value, {}}; };
  const auto vs = [](double value, double spread) {
    return MetricValue{value, spread};
  };

  std::vector<MetricReport> reports;

  reports.push_back(build_report(
      Phase::training, "ariane", "BC",
      {{"Training Sample Cost", v(48.28)}},
      {{"Generalization (100 eps. [all tasks])", v(-2.18)},
       {"Returns (100 eps.)", vs(-1.10, 0.04)}},
      {},
      {{"Energy Consumed (kWh)", vs(0.11, 6.45e-04)},
       {"GPU Power Usage (W)", vs(211.35, 16.76)},
       {"Mean RAM Usage (GB)", vs(4.72, 0.53)},
       {"Peak RAM Usage (GB)", vs(5.25, 0.07)},
       {"Wall Clock Time (Hours)", vs(0.48, 2.61e-03)}}));

  reports.push_back(build_report(
      Phase::training, "ariane", "DDQN",
      {{"Training Sample Cost", v(0.0)}},
      {{"Generalization (100 eps. [all tasks])", v(-2.19)},
       {"Returns (100 eps.)", vs(-1.13, 0.04)}},
      {{"Dispersion Across Runs (IQR)", vs(0.03, 0.03)},
       {"Dispersion Within Runs (IQR)", vs(0.02, 0.03)},
       {"Long Term Risk (CVaR)", v(1.20)},
       {"Risk Across Runs (CVaR)", v(-1.17)},
       {"Short Term Risk (CVaR)", v(0.07)}},
      {{"Energy Consumed (kWh)", vs(108.20, 4.29)},
       {"GPU Power Usage (W)", vs(585.98, 172.50)},
       {"Mean RAM Usage (GB)", vs(849.37, 64.85)},
       {"Peak RAM Usage (GB)", vs(889.56, 23.44)},
       {"Wall Clock Time (Hours)", vs(21.94, 0.90)}}));

  reports.push_back(build_report(
      Phase::training, "ariane", "PPO",
      {{"Training Sample Cost", v(0.0)}},
      {{"Generalization (100 eps. [all tasks])", v(-2.05)},
       {"Returns (100 eps.)", vs(-0.99, 7.25e-03)}},
      {{"Dispersion Across Runs (IQR)", vs(0.04, 0.02)},
       {"Dispersion Within Runs (IQR)", vs(4.77e-03, 4.92e-03)},
       {"Long Term Risk (CVaR)", v(0.03)},
       {"Risk Across Runs (CVaR)", v(-1.03)},
       {"Short Term Risk (CVaR)", v(0.01)}},
      {{"Energy Consumed (kWh)", vs(120.53, 2.78)},
       {"GPU Power Usage (W)", vs(692.94, 120.08)},
       {"Mean RAM Usage (GB)", vs(834.05, 55.90)},
       {"Peak RAM Usage (GB)", vs(906.45, 68.01)},
       {"Wall Clock Time (Hours)", vs(23.95, 0.54)}}));

  reports.push_back(build_report(
      Phase::inference, "ariane", "BC", {}, {},
      {{"Dispersion Across Rollouts (IQR)", v(0.01)},
       {"Risk Across Rollouts (CVaR)", v(-1.23)}},
      {{"GPU Power Usage (W)", vs(136.91, 21.48)},
       {"Inference Time (ms)", vs(10.0, 0.46)},
       {"Mean RAM Usage (GB)", vs(2.19, 0.21)},
       {"Peak RAM Usage (GB)", vs(2.29, 0.01)}}));

  reports.push_back(build_report(
      Phase::inference, "ariane", "DDQN", {}, {},
      {{"Dispersion Across Rollouts (IQR)", v(0.05)},
       {"Risk Across Rollouts (CVaR)", v(-1.25)}},
      {{"GPU Power Usage (W)", vs(69.50, 4.60)},
       {"Inference Time (ms)", vs(20.0, 2.69)},
       {"Mean RAM Usage (GB)", vs(2.15, 0.30)},
       {"Peak RAM Usage (GB)", vs(2.28, 0.13)}}));

  reports.push_back(build_report(
      Phase::inference, "ariane", "PPO", {}, {},
      {{"Dispersion Across Rollouts (IQR)", v(0.01)},
       {"Risk Across Rollouts (CVaR)", v(-1.01)}},
      {{"GPU Power Usage (W)", vs(49.43, 30.29)},
       {"Inference Time (ms)", vs(20.0, 2.68)},
       {"Mean RAM Usage (GB)", vs(2.51, 0.49)},
       {"Peak RAM Usage (GB)", vs(2.71, 0.62)}}));

  return reports;
}

}  // namespace a2bench
