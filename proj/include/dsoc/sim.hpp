#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "dsoc/state.hpp"
#include "dsoc/workload.hpp"

namespace dsoc {

enum class Strategy { Greedy, Dsoc };

std::string to_string(Strategy strategy);
// throws std::invalid_argument on anything but "greedy" / "dsoc"
Strategy strategy_from_string(const std::string& name);

enum class EventKind {
  UpdateArrived,
  UpdateAssigned,
  UpdateDelayed,
  UpdateDropped,
  UpdateCompleted,
  TickMetrics,
  GoalReached,
};

std::string to_string(EventKind kind);

struct MetricsSnapshot {
  double mean_accuracy = 0.0;
  double mean_progress = 0.0;
  std::vector<ResourceVector> node_utilization;
  std::size_t queue_depth = 0;
  std::size_t inflight_count = 0;
  std::uint64_t updates_applied = 0;
  double mb_transferred = 0.0;
};

MetricsSnapshot snapshot(const SimState& state);

// One trace record. Which fields are meaningful depends on kind; the emitted
// line format is documented in the README and kept stable.
struct TraceEvent {
  long tick = 0;
  EventKind kind = EventKind::TickMetrics;
  UpdateId update_id = 0;
  AppId app_id = 0;
  NodeId node_id = 0;
  ClassifierId classifier_id = 0;
  double delta_mb = 0.0;
  double accuracy_gain = 0.0;
  bool has_score = false;
  PriorityScore score;
  double app_accuracy = 0.0;  // UpdateCompleted: aggregate after the update
  MetricsSnapshot metrics;    // TickMetrics only
};

// Advances the simulation one tick through the fixed phase order:
// arrivals, scheduling, transfer starts, transfer progress, update effects,
// drift, progress, metrics. Returns the tick's events in emission order.
std::vector<TraceEvent> tick(SimState& state, Strategy strategy);

struct MissionSummary {
  Strategy strategy = Strategy::Greedy;
  std::uint64_t seed = 0;
  bool completed = false;
  long completion_tick = 0;
  double final_accuracy = 0.0;
  std::uint64_t updates_arrived = 0;
  std::uint64_t updates_applied = 0;
  std::uint64_t updates_dropped = 0;
  std::uint64_t delay_events = 0;
  double mb_transferred = 0.0;
};

struct MissionResult {
  SimState state;
  std::vector<TraceEvent> trace;
  MissionSummary summary;
};

// Runs ticks until every application reaches progress 1.0 or max_ticks
// elapse. Invariants are checked after every tick. Throws
// std::invalid_argument when max_ticks < 1.
MissionResult run_mission(const ScenarioSpec& spec, Strategy strategy, long max_ticks);

std::string format_event(const TraceEvent& event);

// One line per event; floats printed with 6 decimals, stable across runs.
void emit_trace(const std::vector<TraceEvent>& trace, std::ostream& out);

// Fixed header + one row per summary, comma separated.
void write_summary_csv(const std::vector<MissionSummary>& summaries, std::ostream& out);

// Mean application accuracy sampled at the first tick where mean progress
// reaches each completion decile (10%, 20%, ..., 100%); the final accuracy
// stands in for deciles an incomplete run never reached.
std::array<double, 10> accuracy_at_completion_deciles(const std::vector<TraceEvent>& trace);

}  // namespace dsoc
