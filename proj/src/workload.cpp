#include "dsoc/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dsoc {

namespace {

// Fisher-Yates over the index range, driven by the scenario stream.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, i - 1));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace

SimState generate_scenario(const ScenarioSpec& spec) {
  spec.validate();

  const auto total = static_cast<std::size_t>(spec.classifier_total);
  const auto frequent_count = static_cast<std::size_t>(
      std::ceil(spec.frequent_fraction * static_cast<double>(total)));
  std::size_t correlated_count = static_cast<std::size_t>(
      std::ceil(spec.correlated_fraction * static_cast<double>(total)));
  if (correlated_count % 2 != 0) {
    ++correlated_count;  // pairs need an even cover
  }
  correlated_count = std::min(correlated_count, total - (total % 2));
  const std::size_t pair_count = correlated_count / 2;
  if (pair_count > total / 2) {
    throw std::invalid_argument("correlation pairs exceed available classifiers");
  }

  SimState state;
  state.spec = spec;
  state.rng = Rng(spec.seed);
  Rng& rng = state.rng;

  for (int i = 0; i < spec.node_count; ++i) {
    Node node;
    node.id = static_cast<NodeId>(i);
    node.capacity = ResourceVector{8.0, 16384.0, 102400.0, spec.link_mb_per_tick};
    node.utilization.cpu = rng.uniform(spec.util_min, spec.util_max);
    node.utilization.memory = rng.uniform(spec.util_min, spec.util_max);
    node.utilization.storage = rng.uniform(spec.util_min, spec.util_max);
    node.utilization.throughput = rng.uniform(spec.util_min, spec.util_max);
    state.cluster.nodes.push_back(node);
  }

  for (int i = 0; i < spec.app_count; ++i) {
    Application app;
    app.id = static_cast<AppId>(i);
    app.node_id = static_cast<NodeId>(i % spec.node_count);
    app.latency_ms = rng.uniform(50.0, 200.0);
    app.exec_time_ms = rng.uniform(100.0, 500.0);
    state.cluster.apps.push_back(app);
  }

  // Deal classifiers round-robin so every application is covered first, then
  // jitter a quarter of the assignments to random applications.
  state.classifier_owner.resize(total);
  const auto app_count = static_cast<std::size_t>(spec.app_count);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t target = c % app_count;
    if (c >= app_count && rng.uniform01() < 0.25) {
      target = static_cast<std::size_t>(rng.uniform_int(0, app_count - 1));
    }
    Classifier classifier;
    classifier.id = static_cast<ClassifierId>(c);
    classifier.accuracy = rng.uniform(0.6, 0.9);
    classifier.size_mb = rng.uniform(10.0, 100.0);
    Application& app = state.cluster.apps[target];
    state.classifier_owner[c] = {app.id, app.classifiers.size()};
    app.classifiers.push_back(classifier);
  }
  for (auto& app : state.cluster.apps) {
    app.refresh_accuracy();
  }

  const auto frequent_picks = shuffled_indices(total, rng);
  for (std::size_t i = 0; i < frequent_count; ++i) {
    state.classifier(static_cast<ClassifierId>(frequent_picks[i])).frequent_update = true;
  }

  state.group_of.assign(total, -1);
  state.partner_stale.assign(total, 0);
  const auto pair_picks = shuffled_indices(total, rng);
  for (std::size_t p = 0; p < pair_count; ++p) {
    CorrelationGroup group;
    group.penalty_multiplier = spec.penalty_multiplier;
    group.members = {static_cast<ClassifierId>(pair_picks[2 * p]),
                     static_cast<ClassifierId>(pair_picks[2 * p + 1])};
    state.group_of[group.members[0]] = static_cast<int>(state.groups.size());
    state.group_of[group.members[1]] = static_cast<int>(state.groups.size());
    state.groups.push_back(std::move(group));
  }

  return state;
}

std::vector<UpdateRequest> sample_update_arrivals(SimState& state, long tick, Rng& rng) {
  const ScenarioSpec& spec = state.spec;
  std::vector<UpdateRequest> arrivals;
  const std::uint64_t count = rng.poisson(spec.arrival_rate);
  if (count == 0 || state.classifier_owner.empty()) {
    return arrivals;
  }

  double total_weight = 0.0;
  const auto total = state.classifier_owner.size();
  for (std::size_t c = 0; c < total; ++c) {
    total_weight +=
        state.classifier(static_cast<ClassifierId>(c)).frequent_update
            ? spec.frequent_arrival_weight
            : 1.0;
  }

  for (std::uint64_t i = 0; i < count; ++i) {
    double pick = rng.uniform(0.0, total_weight);
    ClassifierId target = 0;
    for (std::size_t c = 0; c < total; ++c) {
      const double w =
          state.classifier(static_cast<ClassifierId>(c)).frequent_update
              ? spec.frequent_arrival_weight
              : 1.0;
      if (pick < w || c + 1 == total) {
        target = static_cast<ClassifierId>(c);
        break;
      }
      pick -= w;
    }

    UpdateRequest request;
    request.id = state.next_update_id++;
    request.classifier_id = target;
    request.app_id = state.classifier_owner[target].first;
    request.node_id = state.cluster.app(request.app_id).node_id;
    request.delta_mb = rng.uniform(spec.delta_min_mb, spec.delta_max_mb);
    request.accuracy_gain = rng.uniform(spec.gain_min, spec.gain_max);
    request.latency_reduction = rng.uniform(0.0, spec.latency_reduction_max);
    request.exec_reduction = rng.uniform(0.0, spec.exec_reduction_max);
    request.arrival_tick = tick;
    arrivals.push_back(std::move(request));
  }

  // link same-batch requests aimed at one correlation group
  for (std::size_t a = 0; a < arrivals.size(); ++a) {
    const int ga = state.group_of[arrivals[a].classifier_id];
    if (ga < 0) {
      continue;
    }
    for (std::size_t b = a + 1; b < arrivals.size(); ++b) {
      if (state.group_of[arrivals[b].classifier_id] == ga &&
          arrivals[a].classifier_id != arrivals[b].classifier_id) {
        arrivals[a].correlated_with.push_back(arrivals[b].id);
        arrivals[b].correlated_with.push_back(arrivals[a].id);
      }
    }
  }
  return arrivals;
}

void apply_drift(SimState& state) {
  const ScenarioSpec& spec = state.spec;
  if (spec.drift_per_tick <= 0.0) {
    return;
  }
  for (std::size_t c = 0; c < state.classifier_owner.size(); ++c) {
    Classifier& classifier = state.classifier(static_cast<ClassifierId>(c));
    double rate = 0.0;
    if (state.partner_stale[c]) {
      const int g = state.group_of[c];
      const double multiplier =
          g >= 0 ? state.groups[static_cast<std::size_t>(g)].penalty_multiplier
                 : spec.penalty_multiplier;
      rate = spec.drift_per_tick * multiplier;
    } else if (classifier.frequent_update) {
      rate = spec.drift_per_tick;
    }
    if (rate > 0.0) {
      classifier.accuracy = std::max(spec.accuracy_floor, classifier.accuracy - rate);
    }
  }
  for (auto& app : state.cluster.apps) {
    app.refresh_accuracy();
  }
}

}  // namespace dsoc
