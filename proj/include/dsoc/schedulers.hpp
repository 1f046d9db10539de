#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "dsoc/cluster.hpp"
#include "dsoc/priority.hpp"

namespace dsoc {

// Pending updates in arrival order (arrival tick, then insertion order).
// Delayed updates re-enter at the tail for the next round.
class UpdateQueue {
 public:
  // throws std::invalid_argument when the id is already queued
  void push(UpdateRequest update);

  // keeps only the listed ids, preserving current queue order
  template <typename IdSet>
  void retain(const IdSet& keep) {
    std::erase_if(items_, [&](const UpdateRequest& u) { return !keep.contains(u.id); });
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<UpdateRequest>& items() const { return items_; }

 private:
  std::vector<UpdateRequest> items_;
};

// One scheduling round's outcome. assigned lists updates to start now, in
// admission order; delayed ones stay queued for the next round; dropped ones
// (Red under the prioritized strategy) leave the system for good. k counts
// the updates the feasibility walk admitted this round.
struct ScheduleDecision {
  std::vector<UpdateId> assigned;
  std::vector<UpdateId> delayed;
  std::vector<UpdateId> dropped;
  std::size_t k = 0;
  // priority scores per scored update (prioritized strategy only)
  std::map<UpdateId, PriorityScore> scores;
};

// Walks the candidates in order, tentatively admitting each update whose node
// stays unconstrained (thresholds and link share) and whose application
// worker is free; admissions accumulate and are never revoked. Returns the
// number admitted across the whole walk.
std::size_t compute_k(const std::vector<UpdateRequest>& candidates,
                      const Cluster& cluster, const ConstraintConfig& config);

// FIFO strategy: assign every admissible update, delay the rest (requeued at
// the tail by the caller). Never drops.
ScheduleDecision greedy_schedule(const UpdateQueue& queue, const Cluster& cluster,
                                 const ConstraintConfig& config);

// Prioritized strategy: scores every queued update, drops Red ones, orders the
// rest Green > Yellow > Blue (descending pval within a class, arrival order on
// ties) and admits through the same feasibility walk.
ScheduleDecision dsoc_schedule(const UpdateQueue& queue, const Cluster& cluster,
                               const WeightConfig& weights,
                               const ConstraintConfig& config,
                               const PriorityThresholds& thresholds);

// Declarative feasibility of starting the given subset of candidates together:
// one in-flight update per application, every touched node below its
// utilization thresholds, and every node link able to grant all transfers
// (existing plus new) the minimum rate. Independent of the walk order.
bool is_feasible_set(const std::vector<UpdateRequest>& candidates,
                     const std::vector<std::size_t>& subset, const Cluster& cluster,
                     const ConstraintConfig& config);

// Test oracle: enumerates every subset of the candidates (cap 12, throws
// std::invalid_argument above) and returns the inclusion-maximal feasible
// ones, each as candidate ids in candidate order.
std::vector<std::vector<UpdateId>> oracle_max_feasible(
    const std::vector<UpdateRequest>& candidates, const Cluster& cluster,
    const ConstraintConfig& config);

}  // namespace dsoc
