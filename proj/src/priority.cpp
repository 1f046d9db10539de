#include "dsoc/priority.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsoc {

namespace {

constexpr double kWeightTolerance = 1e-9;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_weight_vector(const std::array<double, 4>& w, const char* name) {
  double sum = 0.0;
  for (double v : w) {
    if (v < 0.0) {
      throw std::invalid_argument(std::string(name) + " entries must be nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance) {
    throw std::invalid_argument(std::string(name) + " must sum to 1");
  }
}

}  // namespace

void WeightConfig::validate() const {
  if (c1 < 0.0 || c2 < 0.0 || c1 > 1.0 || c2 > 1.0) {
    throw std::invalid_argument("c1 and c2 must lie in [0,1]");
  }
  if (std::abs(c1 + c2 - 1.0) > kWeightTolerance) {
    throw std::invalid_argument("c1 + c2 must equal 1");
  }
  if (!relax_weight_order && c1 > c2) {
    throw std::invalid_argument("c1 must not exceed c2");
  }
  check_weight_vector(system_weights, "system_weights");
  check_weight_vector(application_weights, "application_weights");
}

void PriorityThresholds::validate() const {
  if (!(0.0 < blue_min && blue_min < yellow_min && yellow_min < green_min &&
        green_min < 1.0)) {
    throw std::invalid_argument("priority thresholds must satisfy 0 < blue < yellow < green < 1");
  }
}

int class_rank(PriorityClass cls) { return static_cast<int>(cls); }

std::string to_string(PriorityClass cls) {
  switch (cls) {
    case PriorityClass::Green:
      return "green";
    case PriorityClass::Yellow:
      return "yellow";
    case PriorityClass::Blue:
      return "blue";
    case PriorityClass::Red:
      return "red";
  }
  return "red";
}

double compute_sp(const Node& node, const std::array<double, 4>& system_weights) {
  double sp = 0.0;
  for (std::size_t k = 0; k < ResourceVector::kComponents; ++k) {
    sp += system_weights[k] * (1.0 - node.utilization.component(k));
  }
  return clamp01(sp);
}

double compute_ap(const Application& app, const UpdateRequest& update,
                  const std::array<double, 4>& application_weights) {
  const double ap = application_weights[0] * update.accuracy_gain +
                    application_weights[1] * (1.0 - app.progress) +
                    application_weights[2] * update.latency_reduction +
                    application_weights[3] * update.exec_reduction;
  return clamp01(ap);
}

PriorityClass classify_pval(double pval, const PriorityThresholds& thresholds) {
  if (pval >= thresholds.green_min) {
    return PriorityClass::Green;
  }
  if (pval >= thresholds.yellow_min) {
    return PriorityClass::Yellow;
  }
  if (pval >= thresholds.blue_min) {
    return PriorityClass::Blue;
  }
  return PriorityClass::Red;
}

PriorityScore assign_priority(const UpdateRequest& update, const Node& node,
                              const Application& app, const WeightConfig& weights,
                              const PriorityThresholds& thresholds) {
  weights.validate();
  PriorityScore score;
  score.sp = compute_sp(node, weights.system_weights);
  score.ap = compute_ap(app, update, weights.application_weights);
  score.pval = clamp01(weights.c1 * score.sp + weights.c2 * score.ap);
  score.cls = classify_pval(score.pval, thresholds);
  return score;
}

}  // namespace dsoc
