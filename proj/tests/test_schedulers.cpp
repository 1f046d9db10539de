#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dsoc/rng.hpp"
#include "dsoc/schedulers.hpp"
#include "test_helpers.hpp"

using namespace dsoc;
using test::make_cluster;
using test::make_update;

namespace {

UpdateQueue queue_of(const std::vector<UpdateRequest>& updates) {
  UpdateQueue queue;
  for (const auto& u : updates) {
    queue.push(u);
  }
  return queue;
}

ConstraintConfig config_with_floor(double floor_mb) {
  ConstraintConfig config;
  config.min_transfer_rate_mb = floor_mb;
  return config;
}

std::vector<std::size_t> indices_of(const std::vector<UpdateRequest>& candidates,
                                    const std::vector<UpdateId>& ids) {
  std::vector<std::size_t> idx;
  for (UpdateId id : ids) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].id == id) {
        idx.push_back(i);
      }
    }
  }
  return idx;
}

}  // namespace

TEST_CASE("queue rejects duplicate ids") {
  UpdateQueue queue;
  queue.push(make_update(1, 0, 0));
  CHECK_THROWS_AS(queue.push(make_update(1, 1, 0)), std::invalid_argument);
}

TEST_CASE("compute_k on an empty candidate list is zero") {
  const Cluster cluster = make_cluster(1, 1);
  CHECK(compute_k({}, cluster, ConstraintConfig{}) == 0);
}

TEST_CASE("compute_k admits a single update on an idle node") {
  const Cluster cluster = make_cluster(1, 1);
  CHECK(compute_k({make_update(1, 0, 0)}, cluster, ConstraintConfig{}) == 1);
}

TEST_CASE("compute_k stops at the link's sustainable concurrency") {
  // link 10, floor 5: at most two concurrent transfers keep the minimum rate
  const Cluster cluster = make_cluster(1, 3, 10.0);
  const ConstraintConfig config = config_with_floor(5.0);
  const std::vector<UpdateRequest> candidates{make_update(1, 0, 0), make_update(2, 1, 0),
                                              make_update(3, 2, 0)};
  CHECK(compute_k(candidates, cluster, config) == 2);

  // exhaustive check over all prefixes: the walk admits exactly the largest
  // feasible prefix here because all candidates hit the same node
  for (std::size_t len = 0; len <= candidates.size(); ++len) {
    std::vector<std::size_t> prefix;
    for (std::size_t i = 0; i < len; ++i) {
      prefix.push_back(i);
    }
    CHECK(is_feasible_set(candidates, prefix, cluster, config) == (len <= 2));
  }

  // and matches the oracle's maximal subset size
  const auto maximal = oracle_max_feasible(candidates, cluster, config);
  std::size_t best = 0;
  for (const auto& subset : maximal) {
    best = std::max(best, subset.size());
  }
  CHECK(best == 2);
}

TEST_CASE("greedy on an empty queue decides nothing") {
  const Cluster cluster = make_cluster(1, 1);
  const ScheduleDecision d = greedy_schedule(UpdateQueue{}, cluster, ConstraintConfig{});
  CHECK(d.assigned.empty());
  CHECK(d.delayed.empty());
  CHECK(d.dropped.empty());
  CHECK(d.k == 0);
}

TEST_CASE("greedy assigns a single feasible update") {
  const Cluster cluster = make_cluster(1, 1);
  const ScheduleDecision d =
      greedy_schedule(queue_of({make_update(1, 0, 0)}), cluster, ConstraintConfig{});
  CHECK(d.assigned == std::vector<UpdateId>{1});
  CHECK(d.delayed.empty());
}

TEST_CASE("greedy delays the second update for one application") {
  const Cluster cluster = make_cluster(1, 1, 10.0);
  const std::vector<UpdateRequest> candidates{make_update(1, 0, 0), make_update(2, 0, 0)};
  const ScheduleDecision d =
      greedy_schedule(queue_of(candidates), cluster, ConstraintConfig{});
  CHECK(d.assigned == std::vector<UpdateId>{1});
  CHECK(d.delayed == std::vector<UpdateId>{2});
  // no valid decision assigns both: the pair is infeasible
  CHECK_FALSE(is_feasible_set(candidates, {0, 1}, cluster, ConstraintConfig{}));
}

TEST_CASE("greedy never drops and never exceeds compute_k") {
  Cluster cluster = make_cluster(2, 2, 10.0);
  cluster.nodes[1].utilization.cpu = 0.95;
  const std::vector<UpdateRequest> candidates{
      make_update(1, 0, 0), make_update(2, 1, 1), make_update(3, 2, 0), make_update(4, 0, 0)};
  const ConstraintConfig config = config_with_floor(5.0);
  const ScheduleDecision d = greedy_schedule(queue_of(candidates), cluster, config);
  CHECK(d.dropped.empty());
  CHECK(d.assigned.size() + d.delayed.size() == candidates.size());
  CHECK(d.assigned.size() <= compute_k(candidates, cluster, config));
  CHECK(d.k == compute_k(candidates, cluster, config));
}

TEST_CASE("dsoc drops a queue of red updates") {
  Cluster cluster = make_cluster(1, 2, 10.0);
  cluster.nodes[0].utilization = ResourceVector{0.85, 0.85, 0.85, 0.85};
  for (auto& app : cluster.apps) {
    app.progress = 1.0;
  }
  std::vector<UpdateRequest> updates{make_update(1, 0, 0, 10.0, 0.0),
                                     make_update(2, 1, 0, 10.0, 0.0)};
  const ScheduleDecision d = dsoc_schedule(queue_of(updates), cluster, WeightConfig{},
                                           ConstraintConfig{}, PriorityThresholds{});
  CHECK(d.assigned.empty());
  CHECK(d.delayed.empty());
  CHECK(d.dropped == std::vector<UpdateId>{1, 2});
  CHECK(d.scores.at(1).cls == PriorityClass::Red);
}

TEST_CASE("dsoc assigns by class order") {
  // ap-only weighting makes pval equal the configured gains
  WeightConfig w;
  w.c1 = 0.0;
  w.c2 = 1.0;
  w.application_weights = {1.0, 0.0, 0.0, 0.0};
  Cluster cluster = make_cluster(2, 1, 10.0);
  for (auto& app : cluster.apps) {
    app.progress = 0.5;
  }
  UpdateRequest yellow = make_update(1, 0, 0, 10.0, 0.6);
  UpdateRequest green = make_update(2, 1, 1, 10.0, 0.8);
  const ScheduleDecision d = dsoc_schedule(queue_of({yellow, green}), cluster, w,
                                           ConstraintConfig{}, PriorityThresholds{});
  CHECK(d.assigned == std::vector<UpdateId>{2, 1});
  CHECK(d.scores.at(2).cls == PriorityClass::Green);
  CHECK(d.scores.at(1).cls == PriorityClass::Yellow);
  CHECK(d.scores.at(2).pval == doctest::Approx(0.8));
  CHECK(d.scores.at(1).pval == doctest::Approx(0.6));
}

TEST_CASE("dsoc delays a green update on a constrained node") {
  WeightConfig w;
  w.c1 = 0.0;
  w.c2 = 1.0;
  w.application_weights = {1.0, 0.0, 0.0, 0.0};
  Cluster cluster = make_cluster(2, 1, 10.0);
  cluster.nodes[0].utilization.cpu = 0.95;  // green's node is constrained
  UpdateRequest green = make_update(1, 0, 0, 10.0, 0.9);
  UpdateRequest yellow = make_update(2, 1, 1, 10.0, 0.6);
  const std::vector<UpdateRequest> candidates{green, yellow};
  const ScheduleDecision d = dsoc_schedule(queue_of(candidates), cluster, w,
                                           ConstraintConfig{}, PriorityThresholds{});
  CHECK(d.assigned == std::vector<UpdateId>{2});
  CHECK(d.delayed == std::vector<UpdateId>{1});

  // brute force over all four subsets confirms {yellow} is the unique
  // maximal feasible choice
  const auto maximal = oracle_max_feasible(candidates, cluster, ConstraintConfig{});
  REQUIRE(maximal.size() == 1);
  CHECK(maximal[0] == std::vector<UpdateId>{2});
}

TEST_CASE("dsoc rejects invalid weights") {
  WeightConfig w;
  w.c1 = 0.7;
  w.c2 = 0.3;
  const Cluster cluster = make_cluster(1, 1);
  CHECK_THROWS_AS(dsoc_schedule(UpdateQueue{}, cluster, w, ConstraintConfig{},
                                PriorityThresholds{}),
                  std::invalid_argument);
}

TEST_CASE("oracle handles the trivial cases") {
  const Cluster cluster = make_cluster(1, 1);
  const auto empty = oracle_max_feasible({}, cluster, ConstraintConfig{});
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());

  const auto single = oracle_max_feasible({make_update(1, 0, 0)}, cluster, ConstraintConfig{});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::vector<UpdateId>{1});
}

TEST_CASE("oracle lists every maximal pair for the two-slot link") {
  const Cluster cluster = make_cluster(1, 3, 10.0);
  const ConstraintConfig config = config_with_floor(5.0);
  const std::vector<UpdateRequest> candidates{make_update(1, 0, 0), make_update(2, 1, 0),
                                              make_update(3, 2, 0)};
  auto maximal = oracle_max_feasible(candidates, cluster, config);
  std::sort(maximal.begin(), maximal.end());
  const std::vector<std::vector<UpdateId>> expected{{1, 2}, {1, 3}, {2, 3}};
  CHECK(maximal == expected);
}

TEST_CASE("oracle refuses oversized instances") {
  const Cluster cluster = make_cluster(1, 13, 100.0);
  std::vector<UpdateRequest> candidates;
  for (UpdateId i = 0; i < 13; ++i) {
    candidates.push_back(make_update(i, static_cast<AppId>(i), 0));
  }
  CHECK_THROWS_AS(oracle_max_feasible(candidates, cluster, ConstraintConfig{}),
                  std::invalid_argument);
}

TEST_CASE("schedulers are deterministic") {
  Cluster cluster = make_cluster(2, 2, 10.0);
  const std::vector<UpdateRequest> candidates{make_update(1, 0, 0), make_update(2, 1, 1),
                                              make_update(3, 2, 0)};
  const auto g1 = greedy_schedule(queue_of(candidates), cluster, ConstraintConfig{});
  const auto g2 = greedy_schedule(queue_of(candidates), cluster, ConstraintConfig{});
  CHECK(g1.assigned == g2.assigned);
  CHECK(g1.delayed == g2.delayed);
  const auto d1 = dsoc_schedule(queue_of(candidates), cluster, WeightConfig{},
                                ConstraintConfig{}, PriorityThresholds{});
  const auto d2 = dsoc_schedule(queue_of(candidates), cluster, WeightConfig{},
                                ConstraintConfig{}, PriorityThresholds{});
  CHECK(d1.assigned == d2.assigned);
  CHECK(d1.delayed == d2.delayed);
  CHECK(d1.dropped == d2.dropped);
}

TEST_CASE("random micro-instances stay feasible and locally maximal") {
  Rng rng(555);
  for (int instance = 0; instance < 50; ++instance) {
    const int node_count = 1 + static_cast<int>(rng.uniform_int(0, 2));
    Cluster cluster = make_cluster(node_count, 3, rng.uniform(4.0, 16.0));
    for (auto& node : cluster.nodes) {
      node.utilization = ResourceVector{rng.uniform(0.2, 0.95), rng.uniform(0.2, 0.95),
                                        rng.uniform(0.2, 0.95), rng.uniform(0.2, 0.95)};
    }
    ConstraintConfig config;
    config.min_transfer_rate_mb = rng.uniform(1.0, 6.0);
    for (auto& app : cluster.apps) {
      app.progress = rng.uniform01();
      if (rng.uniform01() < 0.15) {
        app.worker_busy = true;  // pre-existing in-flight update elsewhere
        Node& node = cluster.nodes[app.node_id];
        node.inflight.push_back(TransferState{900 + app.id, app.id, 5.0, 0.0});
      }
    }

    const auto n_updates = rng.uniform_int(0, 8);
    std::vector<UpdateRequest> candidates;
    for (UpdateId i = 0; i < n_updates; ++i) {
      const AppId app = static_cast<AppId>(rng.uniform_int(0, cluster.apps.size() - 1));
      UpdateRequest u = make_update(i, app, cluster.apps[app].node_id,
                                    rng.uniform(1.0, 40.0), rng.uniform01());
      u.latency_reduction = rng.uniform01();
      u.exec_reduction = rng.uniform01();
      candidates.push_back(u);
    }

    const auto greedy = greedy_schedule(queue_of(candidates), cluster, config);
    CHECK(is_feasible_set(candidates, indices_of(candidates, greedy.assigned), cluster,
                          config));

    const auto dsoc = dsoc_schedule(queue_of(candidates), cluster, WeightConfig{}, config,
                                    PriorityThresholds{});
    CHECK(is_feasible_set(candidates, indices_of(candidates, dsoc.assigned), cluster, config));

    // local maximality: no single delayed update fits on an unconstrained node
    for (UpdateId delayed_id : dsoc.delayed) {
      auto extended = indices_of(candidates, dsoc.assigned);
      const auto extra = indices_of(candidates, {delayed_id});
      extended.push_back(extra[0]);
      const NodeId node = candidates[extra[0]].node_id;
      const bool addable = is_feasible_set(candidates, extended, cluster, config) &&
                           !is_constrained(cluster.nodes[node], config);
      CHECK_FALSE(addable);
    }

    // assigned classes never rank below a later one
    for (std::size_t i = 1; i < dsoc.assigned.size(); ++i) {
      CHECK(class_rank(dsoc.scores.at(dsoc.assigned[i - 1]).cls) <=
            class_rank(dsoc.scores.at(dsoc.assigned[i]).cls));
    }
  }
}
