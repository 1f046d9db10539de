#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dsoc/sim.hpp"
#include "test_helpers.hpp"

using namespace dsoc;
using test::make_update;

namespace {

// minimal consistent world: one node, one app, one classifier, no arrivals
SimState manual_state(double link_mb = 10.0) {
  SimState state;
  state.spec.arrival_rate = 0.0;
  state.spec.drift_per_tick = 0.0;
  state.spec.node_count = 1;
  state.spec.app_count = 1;
  state.spec.classifier_total = 1;
  state.spec.progress_rate = 0.01;

  Node node;
  node.id = 0;
  node.capacity = ResourceVector{8.0, 16384.0, 102400.0, link_mb};
  state.cluster.nodes.push_back(node);

  Application app;
  app.id = 0;
  app.node_id = 0;
  app.classifiers.push_back(Classifier{0, 0, 0.5, 20.0, false});
  app.refresh_accuracy();
  state.cluster.apps.push_back(app);

  state.classifier_owner = {{0, 0}};
  state.group_of = {-1};
  state.partner_stale = {0};
  return state;
}

void enqueue(SimState& state, const UpdateRequest& update) {
  state.queue.push(update);
  state.updates_arrived += 1;
  state.next_update_id = std::max(state.next_update_id, update.id + 1);
}

ScenarioSpec quick_spec(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  spec.node_count = 2;
  spec.app_count = 4;
  spec.classifier_total = 40;
  spec.mission_length_hint = 60;
  return spec;
}

}  // namespace

TEST_CASE("an empty scenario ticks into a single metrics event") {
  SimState state;
  state.spec.arrival_rate = 0.0;
  const auto events = tick(state, Strategy::Greedy);
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::TickMetrics);
  CHECK(events[0].tick == 1);
}

TEST_CASE("goal fires once every application completes") {
  SimState state = manual_state();
  state.spec.progress_rate = 0.1;
  state.cluster.apps[0].classifiers.clear();
  state.cluster.apps[0].refresh_accuracy();  // no classifiers -> accuracy 1.0
  state.classifier_owner.clear();
  state.group_of.clear();
  state.partner_stale.clear();

  bool goal_seen = false;
  long goal_tick = 0;
  for (int t = 1; t <= 12; ++t) {
    for (const auto& event : tick(state, Strategy::Greedy)) {
      if (event.kind == EventKind::GoalReached) {
        CHECK_FALSE(goal_seen);
        goal_seen = true;
        goal_tick = event.tick;
      }
    }
  }
  CHECK(goal_seen);
  CHECK(goal_tick == 10);
  CHECK(state.cluster.apps[0].progress == 1.0);
}

TEST_CASE("assigned updates complete after their transfer time") {
  SimState state = manual_state(10.0);
  UpdateRequest u = make_update(0, 0, 0, 25.0, 0.1);
  u.arrival_tick = 1;
  enqueue(state, u);

  long assigned_tick = -1;
  long completed_tick = -1;
  for (int t = 1; t <= 5; ++t) {
    for (const auto& event : tick(state, Strategy::Dsoc)) {
      if (event.kind == EventKind::UpdateAssigned) {
        assigned_tick = event.tick;
      }
      if (event.kind == EventKind::UpdateCompleted) {
        completed_tick = event.tick;
      }
    }
    check_invariants(state);
  }
  CHECK(assigned_tick == 1);
  CHECK(completed_tick == 3);  // ceil(25 MB / 10 MB per tick) ticks after start
  CHECK(state.updates_applied == 1);
  CHECK(state.mb_transferred == doctest::Approx(25.0));
  CHECK(state.cluster.apps[0].classifiers[0].accuracy == doctest::Approx(0.6));
  CHECK(state.cluster.apps[0].classifiers[0].version == 1);
}

TEST_CASE("greedy requeues delayed updates at the tail") {
  SimState state = manual_state(10.0);
  Application second_app;
  second_app.id = 1;
  second_app.node_id = 0;
  state.cluster.apps.push_back(second_app);

  enqueue(state, make_update(0, 0, 0, 40.0));
  enqueue(state, make_update(1, 0, 0, 40.0));  // same application: must wait

  tick(state, Strategy::Greedy);
  REQUIRE(state.queue.size() == 1);
  CHECK(state.queue.items()[0].id == 1);

  // a later arrival enters behind the requeued update
  enqueue(state, make_update(2, 1, 0, 40.0));
  REQUIRE(state.queue.size() == 2);
  CHECK(state.queue.items()[0].id == 1);
  CHECK(state.queue.items()[1].id == 2);
}

TEST_CASE("run_mission rejects a nonpositive tick budget") {
  CHECK_THROWS_AS(run_mission(quick_spec(1), Strategy::Greedy, 0), std::invalid_argument);
}

TEST_CASE("identical runs replay identically") {
  const auto a = run_mission(quick_spec(5), Strategy::Dsoc, 600);
  const auto b = run_mission(quick_spec(5), Strategy::Dsoc, 600);
  CHECK(a.summary.completion_tick == b.summary.completion_tick);
  CHECK(a.summary.final_accuracy == b.summary.final_accuracy);
  CHECK(a.summary.updates_applied == b.summary.updates_applied);
  CHECK(a.summary.mb_transferred == b.summary.mb_transferred);

  std::ostringstream ta;
  std::ostringstream tb;
  emit_trace(a.trace, ta);
  emit_trace(b.trace, tb);
  CHECK(ta.str() == tb.str());
}

TEST_CASE("mission bookkeeping closes and progress never regresses") {
  const auto result = run_mission(quick_spec(9), Strategy::Greedy, 900);
  const SimState& state = result.state;
  CHECK(state.updates_arrived ==
        state.updates_applied + state.updates_dropped + state.queue.size() +
            state.inflight_requests.size());

  double last_progress = 0.0;
  for (const auto& event : result.trace) {
    if (event.kind == EventKind::TickMetrics) {
      CHECK(event.metrics.mean_progress >= last_progress);
      last_progress = event.metrics.mean_progress;
    }
  }
  CHECK(result.summary.completed);
}

TEST_CASE("an application never shows overlapping update intervals") {
  const auto result = run_mission(quick_spec(3), Strategy::Greedy, 900);
  std::map<AppId, bool> open;
  for (const auto& event : result.trace) {
    if (event.kind == EventKind::UpdateAssigned) {
      CHECK_FALSE(open[event.app_id]);
      open[event.app_id] = true;
    }
    if (event.kind == EventKind::UpdateCompleted) {
      CHECK(open[event.app_id]);
      open[event.app_id] = false;
    }
  }
}

TEST_CASE("summary csv has the fixed header and one row per run") {
  const auto result = run_mission(quick_spec(2), Strategy::Dsoc, 600);
  std::ostringstream out;
  write_summary_csv({result.summary}, out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "strategy,seed,completed,completion_tick,final_accuracy,updates_arrived,"
        "updates_applied,updates_dropped,delay_events,mb_transferred");
  std::string row;
  std::getline(lines, row);
  CHECK(row.rfind("dsoc,2,", 0) == 0);
}

TEST_CASE("decile curve is complete and uses first-crossing accuracy") {
  const auto result = run_mission(quick_spec(4), Strategy::Greedy, 900);
  const auto samples = accuracy_at_completion_deciles(result.trace);
  for (double value : samples) {
    CHECK(value > 0.0);
    CHECK(value <= 1.0);
  }
}

TEST_CASE("corrupted states are rejected with a diagnostic") {
  SimState state = manual_state();
  SUBCASE("utilization above one") {
    state.cluster.nodes[0].utilization.cpu = 1.5;
    CHECK_THROWS_AS(check_invariants(state), InvariantViolation);
  }
  SUBCASE("worker flag without a transfer") {
    state.cluster.apps[0].worker_busy = true;
    CHECK_THROWS_AS(check_invariants(state), InvariantViolation);
  }
  SUBCASE("accounting mismatch") {
    state.updates_arrived = 5;
    CHECK_THROWS_AS(check_invariants(state), InvariantViolation);
  }
  SUBCASE("consistent state passes") { CHECK_NOTHROW(check_invariants(state)); }
}

TEST_CASE("trace emission is line-per-event") {
  std::ostringstream empty;
  emit_trace({}, empty);
  CHECK(empty.str().empty());

  TraceEvent event;
  event.tick = 5;
  event.kind = EventKind::TickMetrics;
  std::ostringstream one;
  emit_trace({event}, one);
  CHECK(one.str() ==
        "tick=5 kind=TickMetrics mean_accuracy=0.000000 mean_progress=0.000000 "
        "queue=0 inflight=0 applied=0 mb=0.000000\n");
}

TEST_CASE("golden trace for the reference scenario stays byte-identical") {
  ScenarioSpec spec;  // reference defaults
  spec.seed = 42;
  const auto result = run_mission(spec, Strategy::Dsoc, 10L * spec.mission_length_hint);
  std::ostringstream fresh;
  emit_trace(result.trace, fresh);

  const std::string path = std::string(DSOC_TEST_DATA_DIR) + "/golden_trace_seed42_dsoc.txt";
  std::ifstream golden(path, std::ios::binary);
  REQUIRE_MESSAGE(golden.good(), "missing golden fixture: " << path);
  std::stringstream stored;
  stored << golden.rdbuf();
  CHECK(fresh.str() == stored.str());
}
