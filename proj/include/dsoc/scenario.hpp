#pragma once

#include <cstdint>
#include <vector>

#include "dsoc/cluster.hpp"
#include "dsoc/priority.hpp"

namespace dsoc {

// Classifiers whose updates are interdependent. While one member has received
// an update its partners have not matched, the partners drift at
// penalty_multiplier times the base rate.
struct CorrelationGroup {
  std::vector<ClassifierId> members;  // size >= 2, groups are disjoint
  double penalty_multiplier = 2.0;
};

// Everything needed to build a reproducible scenario. The defaults describe
// the reference workload: 10 applications across 4 nodes hosting 60
// classifiers, 40% of them frequently updated and half correlated in pairs.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  int node_count = 4;
  int app_count = 10;
  int classifier_total = 60;
  double frequent_fraction = 0.4;
  double correlated_fraction = 0.5;
  double drift_per_tick = 0.005;
  double arrival_rate = 2.0;
  int mission_length_hint = 200;
  // per-tick progress gain factor; <= 0 derives 1 / mission_length_hint
  double progress_rate = 0.0;
  double accuracy_floor = 0.2;
  double penalty_multiplier = 2.0;

  // node generation
  double link_mb_per_tick = 20.0;
  double util_min = 0.45;
  double util_max = 0.75;

  // update arrival distributions
  double gain_min = 0.02;
  double gain_max = 0.15;
  double delta_min_mb = 1.0;
  double delta_max_mb = 50.0;
  double latency_reduction_max = 0.2;
  double exec_reduction_max = 0.2;
  double frequent_arrival_weight = 3.0;

  WeightConfig weights;
  PriorityThresholds priority_thresholds;
  ConstraintConfig constraints;

  double effective_progress_rate() const {
    if (progress_rate > 0.0) {
      return progress_rate;
    }
    return 1.0 / static_cast<double>(mission_length_hint);
  }

  void validate() const;  // throws std::invalid_argument
};

}  // namespace dsoc
