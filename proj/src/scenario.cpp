#include "dsoc/scenario.hpp"

#include <stdexcept>
#include <string>

namespace dsoc {

namespace {

void check_fraction(double v, const char* name) {
  if (v < 0.0 || v > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

void check_positive(double v, const char* name) {
  if (v <= 0.0) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

void ScenarioSpec::validate() const {
  if (node_count < 1 || app_count < 1 || classifier_total < 1) {
    throw std::invalid_argument("node, application and classifier counts must be positive");
  }
  check_fraction(frequent_fraction, "frequent_fraction");
  check_fraction(correlated_fraction, "correlated_fraction");
  check_fraction(accuracy_floor, "accuracy_floor");
  check_fraction(latency_reduction_max, "latency_reduction_max");
  check_fraction(exec_reduction_max, "exec_reduction_max");
  if (drift_per_tick < 0.0) {
    throw std::invalid_argument("drift_per_tick must be >= 0");
  }
  if (arrival_rate < 0.0) {
    throw std::invalid_argument("arrival_rate must be >= 0");
  }
  if (mission_length_hint < 1) {
    throw std::invalid_argument("mission_length_hint must be >= 1");
  }
  if (penalty_multiplier < 1.0) {
    throw std::invalid_argument("penalty_multiplier must be >= 1");
  }
  check_positive(link_mb_per_tick, "link_mb_per_tick");
  if (util_min < 0.0 || util_max > 1.0 || util_min > util_max) {
    throw std::invalid_argument("node utilization range must satisfy 0 <= min <= max <= 1");
  }
  if (gain_min < 0.0 || gain_max > 1.0 || gain_min > gain_max) {
    throw std::invalid_argument("accuracy gain range must satisfy 0 <= min <= max <= 1");
  }
  if (delta_min_mb < 0.0 || delta_min_mb > delta_max_mb) {
    throw std::invalid_argument("delta size range must satisfy 0 <= min <= max");
  }
  if (frequent_arrival_weight < 1.0) {
    throw std::invalid_argument("frequent_arrival_weight must be >= 1");
  }
  weights.validate();
  priority_thresholds.validate();
  constraints.validate();
}

}  // namespace dsoc
