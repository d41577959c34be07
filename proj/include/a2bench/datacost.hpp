// Training-sample-cost accounting and expertise classification.
//
// The sample cost of a dataset is the average energy consumed to train its
// generating policies; combining it with the learner's own training energy
// gives a total that is comparable across offline, online and hybrid
// methods. Units are kWh throughout; any other cost unit is a label
// pass-through for the caller.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "a2bench/model.hpp"

namespace a2bench {

struct CostBreakdown {
  double training_sample_cost_kwh = 0.0;
  double training_energy_kwh = 0.0;
  double total_kwh = 0.0;
};

// mean / population std of the median-return distribution over saved
// policies
struct ExpertiseBands {
  double mean = 0.0;
  double std = 0.0;
};

inline double training_sample_cost(const DatasetDescriptor& dataset) {
  if (dataset.policy_train_energies_kwh.empty())
    throw std::invalid_argument("dataset " + dataset.dataset_id +
                                " has no policy training energies");
  double s = 0.0;
  for (double e : dataset.policy_train_energies_kwh) s += e;
  return s / static_cast<double>(dataset.policy_train_energies_kwh.size());
}

// Sum of per-dataset costs; an empty list is an online-only method and
// costs 0.
inline double total_training_sample_cost(
    const std::vector<DatasetDescriptor>& datasets) {
  double s = 0.0;
  for (const auto& d : datasets) s += training_sample_cost(d);
  return s;
}

inline CostBreakdown total_energy_cost(double sample_cost_kwh,
                                       double training_energy_kwh) {
  if (!(sample_cost_kwh >= 0.0) || !(training_energy_kwh >= 0.0))
    throw std::invalid_argument("energy costs must be >= 0");
  return {sample_cost_kwh, training_energy_kwh,
          sample_cost_kwh + training_energy_kwh};
}

inline ExpertiseBands fit_expertise_bands(
    const std::vector<double>& median_returns) {
  if (median_returns.size() < 2)
    throw std::invalid_argument("expertise bands need at least 2 values");
  double m = 0.0;
  for (double r : median_returns) m += r;
  m /= static_cast<double>(median_returns.size());
  double s = 0.0;
  for (double r : median_returns) s += (r - m) * (r - m);
  return {m, std::sqrt(s / static_cast<double>(median_returns.size()))};
}

// Disjoint partition of the real line:
//   novice r < mu - sigma, intermediate [mu - sigma, mu + sigma),
//   expert [mu + sigma, inf). With sigma = 0 the intermediate band is empty.
inline Expertise classify_expertise(const ExpertiseBands& bands, double r) {
  if (r >= bands.mean + bands.std) return Expertise::expert;
  if (r >= bands.mean - bands.std) return Expertise::intermediate;
  return Expertise::novice;
}

}  // namespace a2bench
