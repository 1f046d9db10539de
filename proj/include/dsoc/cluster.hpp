#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dsoc {

using NodeId = std::uint32_t;
using AppId = std::uint32_t;
using ClassifierId = std::uint32_t;
using UpdateId = std::uint64_t;

// Four resource dimensions shared by capacities, utilizations and thresholds:
// cpu, memory, storage and link throughput.
struct ResourceVector {
  double cpu = 0.0;
  double memory = 0.0;
  double storage = 0.0;
  double throughput = 0.0;

  double component(std::size_t k) const {
    const std::array<double, 4> v{cpu, memory, storage, throughput};
    return v[k];
  }

  static constexpr std::size_t kComponents = 4;
};

// A pending classifier update: code/model delta for one application's
// classifier, plus the expected benefit of applying it.
struct UpdateRequest {
  UpdateId id = 0;
  AppId app_id = 0;
  NodeId node_id = 0;
  ClassifierId classifier_id = 0;
  double delta_mb = 0.0;
  double accuracy_gain = 0.0;
  double latency_reduction = 0.0;
  double exec_reduction = 0.0;
  long arrival_tick = 0;
  std::vector<UpdateId> correlated_with;
};

// An in-flight delta transfer. Rate is the current fair share of the hosting
// node's link and is recomputed whenever transfers start or finish.
struct TransferState {
  UpdateId update_id = 0;
  AppId app_id = 0;
  double remaining_mb = 0.0;
  double rate_mb_per_tick = 0.0;
};

struct Node {
  NodeId id = 0;
  // capacity holds absolute units: cpu cores, memory MB, storage MB and link
  // MB per tick; utilization holds fractions of those capacities in [0,1].
  ResourceVector capacity;
  ResourceVector utilization;
  std::vector<TransferState> inflight;

  double link_capacity() const { return capacity.throughput; }
  double inflight_rate_sum() const;
};

struct Classifier {
  ClassifierId id = 0;
  int version = 0;
  double accuracy = 1.0;
  double size_mb = 0.0;
  bool frequent_update = false;
};

struct Application {
  AppId id = 0;
  NodeId node_id = 0;
  std::vector<Classifier> classifiers;
  double accuracy = 1.0;  // mean of classifier accuracies; 1.0 when empty
  double progress = 0.0;
  double latency_ms = 0.0;
  double exec_time_ms = 0.0;
  bool worker_busy = false;  // one worker per application

  // recompute the aggregate accuracy after any classifier mutation
  void refresh_accuracy();
};

struct Cluster {
  std::vector<Node> nodes;
  std::vector<Application> apps;

  Node& node(NodeId id) { return nodes.at(id); }
  const Node& node(NodeId id) const { return nodes.at(id); }
  Application& app(AppId id) { return apps.at(id); }
  const Application& app(AppId id) const { return apps.at(id); }
};

// Feasibility knobs for starting new transfers. A node is eligible while all
// utilization components sit below their thresholds and its link can grant
// every transfer (current ones plus one more) at least min_transfer_rate_mb.
struct ConstraintConfig {
  ResourceVector utilization_thresholds{0.9, 0.9, 0.9, 0.9};
  double min_transfer_rate_mb = 2.0;

  void validate() const;  // throws std::invalid_argument
};

// true when the link cannot host one more transfer at the minimum rate
bool link_saturated(const Node& node, const ConstraintConfig& config);

// true iff any utilization component is at/over its threshold or the link is
// saturated by in-flight transfers; constrained nodes start no new updates
bool is_constrained(const Node& node, const ConstraintConfig& config);

// Registers the update's delta transfer on its node and claims the target
// application's worker. All transfers on the node re-share the link equally.
// Throws std::runtime_error if the worker is already busy or the link has no
// capacity.
TransferState begin_transfer(Cluster& cluster, const UpdateRequest& update);

// Advances every transfer on the node by rate*ticks, removes completed ones
// (releasing their workers) and re-shares the link among the remainder.
// Returns completed update ids in transfer order.
std::vector<UpdateId> advance_transfers(Cluster& cluster, NodeId node_id, int ticks);

// Applies a completed update: bumps the classifier version, adds the accuracy
// gain (capped at 1), rescales latency and execution time and refreshes the
// application aggregate. Throws std::runtime_error on an unknown classifier.
void apply_update_effects(Application& app, const UpdateRequest& update);

}  // namespace dsoc
