#include "dsoc/cluster.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dsoc {

double Node::inflight_rate_sum() const {
  double sum = 0.0;
  for (const auto& t : inflight) {
    sum += t.rate_mb_per_tick;
  }
  return sum;
}

void Application::refresh_accuracy() {
  if (classifiers.empty()) {
    accuracy = 1.0;
    return;
  }
  double sum = 0.0;
  for (const auto& c : classifiers) {
    sum += c.accuracy;
  }
  accuracy = sum / static_cast<double>(classifiers.size());
}

void ConstraintConfig::validate() const {
  for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
    const double t = utilization_thresholds.component(k);
    if (t <= 0.0 || t > 1.0) {
      throw std::invalid_argument("utilization threshold outside (0,1]: " +
                                  std::to_string(t));
    }
  }
  if (min_transfer_rate_mb < 0.0) {
    throw std::invalid_argument("min_transfer_rate_mb must be >= 0");
  }
}

namespace {

void reshare_link(Node& node) {
  if (node.inflight.empty()) {
    return;
  }
  const double share =
      node.link_capacity() / static_cast<double>(node.inflight.size());
  for (auto& t : node.inflight) {
    t.rate_mb_per_tick = share;
  }
}

}  // namespace

bool link_saturated(const Node& node, const ConstraintConfig& config) {
  const double needed =
      static_cast<double>(node.inflight.size() + 1) * config.min_transfer_rate_mb;
  return needed > node.link_capacity();
}

bool is_constrained(const Node& node, const ConstraintConfig& config) {
  for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
    if (node.utilization.component(k) >= config.utilization_thresholds.component(k)) {
      return true;
    }
  }
  return link_saturated(node, config);
}

TransferState begin_transfer(Cluster& cluster, const UpdateRequest& update) {
  Node& node = cluster.node(update.node_id);
  Application& app = cluster.app(update.app_id);
  if (app.worker_busy) {
    throw std::runtime_error("application " + std::to_string(app.id) +
                             " already has an in-flight update");
  }
  if (node.link_capacity() <= 0.0) {
    throw std::runtime_error("node " + std::to_string(node.id) +
                             " has no link capacity");
  }
  app.worker_busy = true;
  node.inflight.push_back(TransferState{update.id, update.app_id, update.delta_mb, 0.0});
  reshare_link(node);
  return node.inflight.back();
}

std::vector<UpdateId> advance_transfers(Cluster& cluster, NodeId node_id, int ticks) {
  if (ticks < 1) {
    throw std::invalid_argument("advance_transfers requires ticks >= 1");
  }
  Node& node = cluster.node(node_id);
  std::vector<UpdateId> completed;
  for (auto& t : node.inflight) {
    t.remaining_mb =
        std::max(0.0, t.remaining_mb - t.rate_mb_per_tick * static_cast<double>(ticks));
    if (t.remaining_mb <= 0.0) {
      completed.push_back(t.update_id);
      cluster.app(t.app_id).worker_busy = false;
    }
  }
  std::erase_if(node.inflight,
                [](const TransferState& t) { return t.remaining_mb <= 0.0; });
  reshare_link(node);
  return completed;
}

void apply_update_effects(Application& app, const UpdateRequest& update) {
  auto it = std::find_if(app.classifiers.begin(), app.classifiers.end(),
                         [&](const Classifier& c) { return c.id == update.classifier_id; });
  if (it == app.classifiers.end()) {
    throw std::runtime_error("update " + std::to_string(update.id) +
                             " targets unknown classifier " +
                             std::to_string(update.classifier_id));
  }
  it->accuracy = std::min(1.0, it->accuracy + update.accuracy_gain);
  it->version += 1;
  app.latency_ms *= (1.0 - update.latency_reduction);
  app.exec_time_ms *= (1.0 - update.exec_reduction);
  app.refresh_accuracy();
}

}  // namespace dsoc
