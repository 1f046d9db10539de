#pragma once

#include <vector>

#include "dsoc/state.hpp"

namespace dsoc {

// Builds the initial world deterministically from the spec's seed:
// nodes with seeded baseline utilization, applications dealt across nodes,
// classifiers dealt round-robin with jitter, exactly
// ceil(frequent_fraction * classifier_total) frequent classifiers, and
// correlation pairs covering ceil(correlated_fraction * classifier_total)
// classifiers (rounded up to even, capped at the classifier count).
// Throws std::invalid_argument on an infeasible spec.
SimState generate_scenario(const ScenarioSpec& spec);

// Draws this tick's update arrivals: a Poisson(arrival_rate) count of
// requests whose target classifiers are picked with frequent-update ones
// weighted frequent_arrival_weight times higher. Requests arriving in the
// same batch for classifiers of one correlation group reference each other.
std::vector<UpdateRequest> sample_update_arrivals(SimState& state, long tick, Rng& rng);

// Degrades classifier accuracy: frequent ones lose drift_per_tick, members of
// a correlation group whose partner updated without them matching lose
// drift_per_tick * penalty_multiplier. Floored at spec.accuracy_floor.
void apply_drift(SimState& state);

}  // namespace dsoc
