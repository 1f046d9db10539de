#pragma once

#include <array>
#include <string>

#include "dsoc/cluster.hpp"

namespace dsoc {

// Weights combining the system-side score (SP) and the application-side score
// (AP) into one priority value, pval = c1*SP + c2*AP.
struct WeightConfig {
  double c1 = 0.4;
  double c2 = 0.6;
  // cpu, memory, storage, throughput
  std::array<double, 4> system_weights{0.25, 0.25, 0.25, 0.25};
  // accuracy, progress, latency, execution time
  std::array<double, 4> application_weights{0.25, 0.25, 0.25, 0.25};
  // Relaxes the c1 <= c2 ordering requirement; c1 + c2 = 1 still holds.
  bool relax_weight_order = false;

  void validate() const;  // throws std::invalid_argument
};

// Class band boundaries over pval; boundaries belong to the higher class.
struct PriorityThresholds {
  double green_min = 0.75;
  double yellow_min = 0.5;
  double blue_min = 0.25;

  void validate() const;  // throws std::invalid_argument
};

// Green is the most urgent; Red marks updates not worth performing.
enum class PriorityClass { Green, Yellow, Blue, Red };

// 0 for Green through 3 for Red; lower rank schedules first
int class_rank(PriorityClass cls);
std::string to_string(PriorityClass cls);

struct PriorityScore {
  double sp = 0.0;
  double ap = 0.0;
  double pval = 0.0;
  PriorityClass cls = PriorityClass::Red;
};

// Weighted headroom of the hosting node: SP = sum_k w_k * (1 - utilization_k).
double compute_sp(const Node& node, const std::array<double, 4>& system_weights);

// Weighted urgency/benefit of the update:
// AP = w_acc*gain + w_prog*(1 - progress) + w_lat*lat_red + w_exec*exec_red.
double compute_ap(const Application& app, const UpdateRequest& update,
                  const std::array<double, 4>& application_weights);

PriorityClass classify_pval(double pval, const PriorityThresholds& thresholds);

PriorityScore assign_priority(const UpdateRequest& update, const Node& node,
                              const Application& app, const WeightConfig& weights,
                              const PriorityThresholds& thresholds);

}  // namespace dsoc
