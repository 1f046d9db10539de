#include "dsoc/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

namespace dsoc {

std::string to_string(Strategy strategy) {
  return strategy == Strategy::Greedy ? "greedy" : "dsoc";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "greedy") {
    return Strategy::Greedy;
  }
  if (name == "dsoc") {
    return Strategy::Dsoc;
  }
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::UpdateArrived:
      return "UpdateArrived";
    case EventKind::UpdateAssigned:
      return "UpdateAssigned";
    case EventKind::UpdateDelayed:
      return "UpdateDelayed";
    case EventKind::UpdateDropped:
      return "UpdateDropped";
    case EventKind::UpdateCompleted:
      return "UpdateCompleted";
    case EventKind::TickMetrics:
      return "TickMetrics";
    case EventKind::GoalReached:
      return "GoalReached";
  }
  return "TickMetrics";
}

MetricsSnapshot snapshot(const SimState& state) {
  MetricsSnapshot m;
  const auto& apps = state.cluster.apps;
  if (!apps.empty()) {
    double acc = 0.0;
    double prog = 0.0;
    for (const auto& app : apps) {
      acc += app.accuracy;
      prog += app.progress;
    }
    m.mean_accuracy = acc / static_cast<double>(apps.size());
    m.mean_progress = prog / static_cast<double>(apps.size());
  }
  for (const auto& node : state.cluster.nodes) {
    m.node_utilization.push_back(node.utilization);
    m.inflight_count += node.inflight.size();
  }
  m.queue_depth = state.queue.size();
  m.updates_applied = state.updates_applied;
  m.mb_transferred = state.mb_transferred;
  return m;
}

namespace {

const UpdateRequest& queued_request(const UpdateQueue& queue, UpdateId id) {
  for (const auto& u : queue.items()) {
    if (u.id == id) {
      return u;
    }
  }
  throw std::logic_error("scheduled update missing from queue: " + std::to_string(id));
}

TraceEvent update_event(long now, EventKind kind, const UpdateRequest& request) {
  TraceEvent event;
  event.tick = now;
  event.kind = kind;
  event.update_id = request.id;
  event.app_id = request.app_id;
  event.node_id = request.node_id;
  event.classifier_id = request.classifier_id;
  event.delta_mb = request.delta_mb;
  event.accuracy_gain = request.accuracy_gain;
  return event;
}

void mark_partner_stale(SimState& state, ClassifierId updated) {
  const int g = state.group_of.at(updated);
  if (g < 0) {
    return;
  }
  for (ClassifierId member : state.groups[static_cast<std::size_t>(g)].members) {
    state.partner_stale[member] = (member == updated) ? 0 : 1;
  }
}

}  // namespace

std::vector<TraceEvent> tick(SimState& state, Strategy strategy) {
  const long now = ++state.tick;
  std::vector<TraceEvent> events;

  // 1. arrivals
  for (auto& request : sample_update_arrivals(state, now, state.rng)) {
    events.push_back(update_event(now, EventKind::UpdateArrived, request));
    state.updates_arrived += 1;
    state.queue.push(std::move(request));
  }

  // 2. scheduling round
  ScheduleDecision decision;
  if (strategy == Strategy::Greedy) {
    decision = greedy_schedule(state.queue, state.cluster, state.spec.constraints);
  } else {
    decision = dsoc_schedule(state.queue, state.cluster, state.spec.weights,
                             state.spec.constraints, state.spec.priority_thresholds);
  }

  // 3. start assigned transfers; record drops and delays
  for (UpdateId id : decision.assigned) {
    const UpdateRequest request = queued_request(state.queue, id);
    begin_transfer(state.cluster, request);
    TraceEvent event = update_event(now, EventKind::UpdateAssigned, request);
    if (auto it = decision.scores.find(id); it != decision.scores.end()) {
      event.has_score = true;
      event.score = it->second;
    }
    events.push_back(std::move(event));
    state.inflight_requests.emplace(id, request);
  }
  for (UpdateId id : decision.dropped) {
    const UpdateRequest request = queued_request(state.queue, id);
    TraceEvent event = update_event(now, EventKind::UpdateDropped, request);
    if (auto it = decision.scores.find(id); it != decision.scores.end()) {
      event.has_score = true;
      event.score = it->second;
    }
    events.push_back(std::move(event));
    state.updates_dropped += 1;
  }
  for (UpdateId id : decision.delayed) {
    const UpdateRequest request = queued_request(state.queue, id);
    TraceEvent event = update_event(now, EventKind::UpdateDelayed, request);
    if (auto it = decision.scores.find(id); it != decision.scores.end()) {
      event.has_score = true;
      event.score = it->second;
    }
    events.push_back(std::move(event));
    state.delay_events += 1;
  }
  // delayed updates stay queued, in arrival order, ahead of next arrivals
  const std::set<UpdateId> keep(decision.delayed.begin(), decision.delayed.end());
  state.queue.retain(keep);

  // 4./5. advance transfers one tick and apply completed updates
  for (auto& node : state.cluster.nodes) {
    for (UpdateId id : advance_transfers(state.cluster, node.id, 1)) {
      const auto it = state.inflight_requests.find(id);
      if (it == state.inflight_requests.end()) {
        throw std::logic_error("completed transfer without a request record");
      }
      const UpdateRequest request = it->second;
      state.inflight_requests.erase(it);
      Application& app = state.cluster.app(request.app_id);
      apply_update_effects(app, request);
      mark_partner_stale(state, request.classifier_id);
      state.updates_applied += 1;
      state.mb_transferred += request.delta_mb;
      TraceEvent event = update_event(now, EventKind::UpdateCompleted, request);
      event.app_accuracy = app.accuracy;
      events.push_back(std::move(event));
    }
  }

  // 6. drift
  apply_drift(state);

  // 7. progress advances with current accuracy; values within 1e-9 of the
  // goal snap to 1 so accumulated rounding cannot stall completion
  const double rate = state.spec.effective_progress_rate();
  for (auto& app : state.cluster.apps) {
    double p = app.progress + rate * app.accuracy;
    app.progress = p >= 1.0 - 1e-9 ? 1.0 : p;
  }

  // 8. metrics and goal detection
  TraceEvent metrics_event;
  metrics_event.tick = now;
  metrics_event.kind = EventKind::TickMetrics;
  metrics_event.metrics = snapshot(state);
  events.push_back(std::move(metrics_event));

  if (!state.goal_reached && !state.cluster.apps.empty()) {
    const bool all_done =
        std::all_of(state.cluster.apps.begin(), state.cluster.apps.end(),
                    [](const Application& app) { return app.progress >= 1.0; });
    if (all_done) {
      state.goal_reached = true;
      state.goal_tick = now;
      TraceEvent goal;
      goal.tick = now;
      goal.kind = EventKind::GoalReached;
      events.push_back(std::move(goal));
    }
  }
  return events;
}

MissionResult run_mission(const ScenarioSpec& spec, Strategy strategy, long max_ticks) {
  if (max_ticks < 1) {
    throw std::invalid_argument("max_ticks must be >= 1");
  }
  MissionResult result;
  result.state = generate_scenario(spec);
  for (long t = 0; t < max_ticks; ++t) {
    auto events = tick(result.state, strategy);
    result.trace.insert(result.trace.end(), events.begin(), events.end());
    check_invariants(result.state);
    if (result.state.goal_reached) {
      break;
    }
  }

  const SimState& state = result.state;
  MissionSummary& summary = result.summary;
  summary.strategy = strategy;
  summary.seed = spec.seed;
  summary.completed = state.goal_reached;
  summary.completion_tick = state.goal_reached ? state.goal_tick : state.tick;
  summary.final_accuracy = snapshot(state).mean_accuracy;
  summary.updates_arrived = state.updates_arrived;
  summary.updates_applied = state.updates_applied;
  summary.updates_dropped = state.updates_dropped;
  summary.delay_events = state.delay_events;
  summary.mb_transferred = state.mb_transferred;
  return result;
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string format_event(const TraceEvent& event) {
  std::string line = "tick=" + std::to_string(event.tick) + " kind=" + to_string(event.kind);
  switch (event.kind) {
    case EventKind::UpdateArrived:
      line += " update=" + std::to_string(event.update_id) +
              " app=" + std::to_string(event.app_id) +
              " node=" + std::to_string(event.node_id) +
              " classifier=" + std::to_string(event.classifier_id) +
              " delta_mb=" + fmt6(event.delta_mb) + " gain=" + fmt6(event.accuracy_gain);
      break;
    case EventKind::UpdateAssigned:
    case EventKind::UpdateDelayed:
    case EventKind::UpdateDropped:
      line += " update=" + std::to_string(event.update_id) +
              " app=" + std::to_string(event.app_id) +
              " node=" + std::to_string(event.node_id);
      if (event.has_score) {
        line += " pval=" + fmt6(event.score.pval) + " class=" + to_string(event.score.cls);
      }
      break;
    case EventKind::UpdateCompleted:
      line += " update=" + std::to_string(event.update_id) +
              " app=" + std::to_string(event.app_id) +
              " node=" + std::to_string(event.node_id) +
              " classifier=" + std::to_string(event.classifier_id) +
              " delta_mb=" + fmt6(event.delta_mb) + " accuracy=" + fmt6(event.app_accuracy);
      break;
    case EventKind::TickMetrics:
      line += " mean_accuracy=" + fmt6(event.metrics.mean_accuracy) +
              " mean_progress=" + fmt6(event.metrics.mean_progress) +
              " queue=" + std::to_string(event.metrics.queue_depth) +
              " inflight=" + std::to_string(event.metrics.inflight_count) +
              " applied=" + std::to_string(event.metrics.updates_applied) +
              " mb=" + fmt6(event.metrics.mb_transferred);
      break;
    case EventKind::GoalReached:
      break;
  }
  return line;
}

void emit_trace(const std::vector<TraceEvent>& trace, std::ostream& out) {
  for (const auto& event : trace) {
    out << format_event(event) << '\n';
  }
}

void write_summary_csv(const std::vector<MissionSummary>& summaries, std::ostream& out) {
  out << "strategy,seed,completed,completion_tick,final_accuracy,updates_arrived,"
         "updates_applied,updates_dropped,delay_events,mb_transferred\n";
  for (const auto& s : summaries) {
    out << to_string(s.strategy) << ',' << s.seed << ',' << (s.completed ? 1 : 0) << ','
        << s.completion_tick << ',' << fmt6(s.final_accuracy) << ',' << s.updates_arrived
        << ',' << s.updates_applied << ',' << s.updates_dropped << ',' << s.delay_events
        << ',' << fmt6(s.mb_transferred) << '\n';
  }
}

std::array<double, 10> accuracy_at_completion_deciles(const std::vector<TraceEvent>& trace) {
  std::array<double, 10> samples{};
  double last_accuracy = 0.0;
  std::size_t next = 0;
  for (const auto& event : trace) {
    if (event.kind != EventKind::TickMetrics) {
      continue;
    }
    last_accuracy = event.metrics.mean_accuracy;
    while (next < samples.size() &&
           event.metrics.mean_progress >= 0.1 * static_cast<double>(next + 1) - 1e-12) {
      samples[next] = event.metrics.mean_accuracy;
      ++next;
    }
  }
  while (next < samples.size()) {
    samples[next] = last_accuracy;
    ++next;
  }
  return samples;
}

}  // namespace dsoc
