#include "dsoc/schedulers.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace dsoc {

void UpdateQueue::push(UpdateRequest update) {
  for (const auto& u : items_) {
    if (u.id == update.id) {
      throw std::invalid_argument("duplicate update id in queue: " +
                                  std::to_string(update.id));
    }
  }
  items_.push_back(std::move(update));
}

namespace {

// Tentative admission state shared by compute_k and both schedulers. Tracks
// per-node transfer counts and per-application worker claims on top of the
// real cluster without mutating it.
class FeasibilityWalk {
 public:
  FeasibilityWalk(const Cluster& cluster, const ConstraintConfig& config)
      : cluster_(cluster), config_(config) {}

  bool admit(const UpdateRequest& update) {
    if (!node_admissible(update.node_id)) {
      return false;
    }
    if (!worker_free(update.app_id)) {
      return false;
    }
    added_transfers_[update.node_id] += 1;
    claimed_apps_.insert(update.app_id);
    return true;
  }

  bool node_admissible(NodeId node_id) const {
    const Node& node = cluster_.node(node_id);
    for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
      if (node.utilization.component(k) >=
          config_.utilization_thresholds.component(k)) {
        return false;
      }
    }
    std::size_t count = node.inflight.size();
    if (auto it = added_transfers_.find(node_id); it != added_transfers_.end()) {
      count += it->second;
    }
    const double needed =
        static_cast<double>(count + 1) * config_.min_transfer_rate_mb;
    return needed <= node.link_capacity();
  }

  bool worker_free(AppId app_id) const {
    return !cluster_.app(app_id).worker_busy && !claimed_apps_.contains(app_id);
  }

 private:
  const Cluster& cluster_;
  const ConstraintConfig& config_;
  std::unordered_map<NodeId, std::size_t> added_transfers_;
  std::unordered_set<AppId> claimed_apps_;
};

}  // namespace

std::size_t compute_k(const std::vector<UpdateRequest>& candidates,
                      const Cluster& cluster, const ConstraintConfig& config) {
  FeasibilityWalk walk(cluster, config);
  std::size_t admitted = 0;
  for (const auto& update : candidates) {
    if (walk.admit(update)) {
      ++admitted;
    }
  }
  return admitted;
}

ScheduleDecision greedy_schedule(const UpdateQueue& queue, const Cluster& cluster,
                                 const ConstraintConfig& config) {
  ScheduleDecision decision;
  FeasibilityWalk walk(cluster, config);
  for (const auto& update : queue.items()) {
    if (walk.admit(update)) {
      decision.assigned.push_back(update.id);
    } else {
      decision.delayed.push_back(update.id);
    }
  }
  decision.k = decision.assigned.size();
  return decision;
}

ScheduleDecision dsoc_schedule(const UpdateQueue& queue, const Cluster& cluster,
                               const WeightConfig& weights,
                               const ConstraintConfig& config,
                               const PriorityThresholds& thresholds) {
  weights.validate();
  thresholds.validate();

  ScheduleDecision decision;
  struct Scored {
    const UpdateRequest* update;
    PriorityScore score;
    std::size_t arrival_rank;
  };
  std::vector<Scored> ranked;
  ranked.reserve(queue.size());

  std::size_t rank = 0;
  for (const auto& update : queue.items()) {
    const Node& node = cluster.node(update.node_id);
    const Application& app = cluster.app(update.app_id);
    const PriorityScore score = assign_priority(update, node, app, weights, thresholds);
    decision.scores.emplace(update.id, score);
    if (score.cls == PriorityClass::Red) {
      decision.dropped.push_back(update.id);
    } else {
      ranked.push_back(Scored{&update, score, rank});
    }
    ++rank;
  }

  std::sort(ranked.begin(), ranked.end(), [](const Scored& a, const Scored& b) {
    const int ra = class_rank(a.score.cls);
    const int rb = class_rank(b.score.cls);
    if (ra != rb) {
      return ra < rb;
    }
    if (a.score.pval != b.score.pval) {
      return a.score.pval > b.score.pval;
    }
    return a.arrival_rank < b.arrival_rank;
  });

  FeasibilityWalk walk(cluster, config);
  for (const auto& entry : ranked) {
    if (walk.admit(*entry.update)) {
      decision.assigned.push_back(entry.update->id);
    } else {
      decision.delayed.push_back(entry.update->id);
    }
  }
  decision.k = decision.assigned.size();
  return decision;
}

bool is_feasible_set(const std::vector<UpdateRequest>& candidates,
                     const std::vector<std::size_t>& subset, const Cluster& cluster,
                     const ConstraintConfig& config) {
  std::map<NodeId, std::size_t> new_transfers;
  std::set<AppId> touched_apps;
  for (std::size_t idx : subset) {
    const UpdateRequest& update = candidates.at(idx);
    if (cluster.app(update.app_id).worker_busy) {
      return false;
    }
    if (!touched_apps.insert(update.app_id).second) {
      return false;  // two updates for one application
    }
    new_transfers[update.node_id] += 1;
  }
  for (const auto& [node_id, added] : new_transfers) {
    const Node& node = cluster.node(node_id);
    for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
      if (node.utilization.component(k) >=
          config.utilization_thresholds.component(k)) {
        return false;
      }
    }
    const double total =
        static_cast<double>(node.inflight.size() + added) * config.min_transfer_rate_mb;
    if (total > node.link_capacity()) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<UpdateId>> oracle_max_feasible(
    const std::vector<UpdateRequest>& candidates, const Cluster& cluster,
    const ConstraintConfig& config) {
  constexpr std::size_t kMaxCandidates = 12;
  if (candidates.size() > kMaxCandidates) {
    throw std::invalid_argument("oracle_max_feasible handles at most 12 candidates");
  }
  const std::size_t n = candidates.size();
  std::vector<std::vector<std::size_t>> feasible;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        subset.push_back(i);
      }
    }
    if (is_feasible_set(candidates, subset, cluster, config)) {
      feasible.push_back(std::move(subset));
    }
  }
  std::vector<std::vector<UpdateId>> maximal;
  for (const auto& a : feasible) {
    bool dominated = false;
    for (const auto& b : feasible) {
      if (b.size() > a.size() &&
          std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      std::vector<UpdateId> ids;
      ids.reserve(a.size());
      for (std::size_t idx : a) {
        ids.push_back(candidates[idx].id);
      }
      maximal.push_back(std::move(ids));
    }
  }
  return maximal;
}

}  // namespace dsoc
