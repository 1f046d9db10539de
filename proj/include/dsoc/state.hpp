#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dsoc/cluster.hpp"
#include "dsoc/rng.hpp"
#include "dsoc/scenario.hpp"
#include "dsoc/schedulers.hpp"

namespace dsoc {

// Raised when a simulation-level invariant breaks; the CLI maps it to exit 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Complete deterministic world state. Copyable, so identical copies evolve
// identically under the same strategy.
struct SimState {
  long tick = 0;
  Cluster cluster;
  UpdateQueue queue;
  ScenarioSpec spec;
  Rng rng;

  std::vector<CorrelationGroup> groups;
  // classifier id -> group index, -1 when ungrouped
  std::vector<int> group_of;
  // set while a partner's update has not been matched; drives amplified drift
  std::vector<char> partner_stale;
  // classifier id -> (owning app, slot in its classifier list)
  std::vector<std::pair<AppId, std::size_t>> classifier_owner;

  // updates whose transfer is in flight, by id
  std::map<UpdateId, UpdateRequest> inflight_requests;
  UpdateId next_update_id = 0;

  std::uint64_t updates_arrived = 0;
  std::uint64_t updates_applied = 0;
  std::uint64_t updates_dropped = 0;
  std::uint64_t delay_events = 0;
  double mb_transferred = 0.0;
  bool goal_reached = false;
  long goal_tick = -1;

  Classifier& classifier(ClassifierId id);
  const Classifier& classifier(ClassifierId id) const;
};

// Verifies resource safety, worker exclusivity and bookkeeping closure;
// throws InvariantViolation with a diagnostic on the first breach.
void check_invariants(const SimState& state);

}  // namespace dsoc
