#include "dsoc/state.hpp"

#include <string>
#include <unordered_set>

namespace dsoc {

Classifier& SimState::classifier(ClassifierId id) {
  const auto& [app_id, slot] = classifier_owner.at(id);
  return cluster.app(app_id).classifiers.at(slot);
}

const Classifier& SimState::classifier(ClassifierId id) const {
  const auto& [app_id, slot] = classifier_owner.at(id);
  return cluster.app(app_id).classifiers.at(slot);
}

void check_invariants(const SimState& state) {
  constexpr double kSlack = 1e-9;
  for (const auto& node : state.cluster.nodes) {
    for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
      const double u = node.utilization.component(k);
      if (u < 0.0 || u > 1.0) {
        throw InvariantViolation("node " + std::to_string(node.id) +
                                 " utilization component out of [0,1]: " +
                                 std::to_string(u));
      }
    }
    if (node.inflight_rate_sum() > node.link_capacity() + kSlack) {
      throw InvariantViolation("node " + std::to_string(node.id) +
                               " in-flight rates exceed link capacity");
    }
    for (const auto& t : node.inflight) {
      if (t.remaining_mb < 0.0) {
        throw InvariantViolation("negative remaining transfer size for update " +
                                 std::to_string(t.update_id));
      }
    }
  }

  // one in-flight update per application, and worker flags must agree
  std::unordered_set<AppId> busy_apps;
  for (const auto& node : state.cluster.nodes) {
    for (const auto& t : node.inflight) {
      if (!busy_apps.insert(t.app_id).second) {
        throw InvariantViolation("application " + std::to_string(t.app_id) +
                                 " has overlapping in-flight updates");
      }
      if (!state.cluster.app(t.app_id).worker_busy) {
        throw InvariantViolation("application " + std::to_string(t.app_id) +
                                 " has a transfer but its worker is marked free");
      }
    }
  }
  for (const auto& app : state.cluster.apps) {
    if (app.worker_busy && !busy_apps.contains(app.id)) {
      throw InvariantViolation("application " + std::to_string(app.id) +
                               " worker is busy with no matching transfer");
    }
    if (app.progress < 0.0 || app.progress > 1.0) {
      throw InvariantViolation("application " + std::to_string(app.id) +
                               " progress out of [0,1]");
    }
    for (const auto& c : app.classifiers) {
      if (c.accuracy < 0.0 || c.accuracy > 1.0) {
        throw InvariantViolation("classifier " + std::to_string(c.id) +
                                 " accuracy out of [0,1]");
      }
    }
  }

  // arrivals split exactly into applied, dropped, queued and in flight
  const std::uint64_t pending =
      state.queue.size() + state.inflight_requests.size();
  if (state.updates_arrived !=
      state.updates_applied + state.updates_dropped + pending) {
    throw InvariantViolation("update accounting mismatch: arrived " +
                             std::to_string(state.updates_arrived) + " != applied " +
                             std::to_string(state.updates_applied) + " + dropped " +
                             std::to_string(state.updates_dropped) + " + pending " +
                             std::to_string(pending));
  }
}

}  // namespace dsoc
