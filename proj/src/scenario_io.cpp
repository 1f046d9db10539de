#include "dsoc/scenario_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dsoc {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_weights(const std::array<double, 4>& w) {
  return fmt_double(w[0]) + "," + fmt_double(w[1]) + "," + fmt_double(w[2]) + "," +
         fmt_double(w[3]);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument("");
    }
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  }
}

std::array<double, 4> parse_weights(const std::string& key, const std::string& value) {
  std::array<double, 4> w{};
  std::stringstream ss(value);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 4) {
      throw std::invalid_argument(key + " needs exactly 4 comma-separated values");
    }
    w[i++] = parse_double(key, trim(part));
  }
  if (i != 4) {
    throw std::invalid_argument(key + " needs exactly 4 comma-separated values");
  }
  return w;
}

}  // namespace

void write_scenario(const ScenarioSpec& spec, std::ostream& out) {
  out << "# dsocsim scenario\n";
  out << "seed = " << spec.seed << "\n";
  out << "nodes = " << spec.node_count << "\n";
  out << "apps = " << spec.app_count << "\n";
  out << "classifiers = " << spec.classifier_total << "\n";
  out << "frequent_fraction = " << fmt_double(spec.frequent_fraction) << "\n";
  out << "correlated_fraction = " << fmt_double(spec.correlated_fraction) << "\n";
  out << "drift_per_tick = " << fmt_double(spec.drift_per_tick) << "\n";
  out << "arrival_rate = " << fmt_double(spec.arrival_rate) << "\n";
  out << "mission_length = " << spec.mission_length_hint << "\n";
  out << "progress_rate = " << fmt_double(spec.progress_rate) << "\n";
  out << "accuracy_floor = " << fmt_double(spec.accuracy_floor) << "\n";
  out << "penalty_multiplier = " << fmt_double(spec.penalty_multiplier) << "\n";
  out << "link_mb_per_tick = " << fmt_double(spec.link_mb_per_tick) << "\n";
  out << "util_min = " << fmt_double(spec.util_min) << "\n";
  out << "util_max = " << fmt_double(spec.util_max) << "\n";
  out << "gain_min = " << fmt_double(spec.gain_min) << "\n";
  out << "gain_max = " << fmt_double(spec.gain_max) << "\n";
  out << "delta_min_mb = " << fmt_double(spec.delta_min_mb) << "\n";
  out << "delta_max_mb = " << fmt_double(spec.delta_max_mb) << "\n";
  out << "latency_reduction_max = " << fmt_double(spec.latency_reduction_max) << "\n";
  out << "exec_reduction_max = " << fmt_double(spec.exec_reduction_max) << "\n";
  out << "frequent_arrival_weight = " << fmt_double(spec.frequent_arrival_weight) << "\n";
  out << "c1 = " << fmt_double(spec.weights.c1) << "\n";
  out << "c2 = " << fmt_double(spec.weights.c2) << "\n";
  out << "sweight = " << fmt_weights(spec.weights.system_weights) << "\n";
  out << "aweight = " << fmt_weights(spec.weights.application_weights) << "\n";
  out << "relax_weight_order = " << (spec.weights.relax_weight_order ? 1 : 0) << "\n";
  out << "green_min = " << fmt_double(spec.priority_thresholds.green_min) << "\n";
  out << "yellow_min = " << fmt_double(spec.priority_thresholds.yellow_min) << "\n";
  out << "blue_min = " << fmt_double(spec.priority_thresholds.blue_min) << "\n";
  out << "util_threshold_cpu = " << fmt_double(spec.constraints.utilization_thresholds.cpu)
      << "\n";
  out << "util_threshold_memory = "
      << fmt_double(spec.constraints.utilization_thresholds.memory) << "\n";
  out << "util_threshold_storage = "
      << fmt_double(spec.constraints.utilization_thresholds.storage) << "\n";
  out << "util_threshold_throughput = "
      << fmt_double(spec.constraints.utilization_thresholds.throughput) << "\n";
  out << "min_transfer_rate_mb = " << fmt_double(spec.constraints.min_transfer_rate_mb)
      << "\n";
}

void write_scenario_file(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open scenario file for writing: " + path);
  }
  write_scenario(spec, out);
  if (!out.good()) {
    throw std::runtime_error("failed writing scenario file: " + path);
  }
}

ScenarioSpec read_scenario(std::istream& in) {
  ScenarioSpec spec;
  using Setter = std::function<void(ScenarioSpec&, const std::string&, const std::string&)>;
  static const std::map<std::string, Setter> setters = {
      {"seed",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.seed = static_cast<std::uint64_t>(parse_long(k, v));
       }},
      {"nodes",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.node_count = static_cast<int>(parse_long(k, v));
       }},
      {"apps",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.app_count = static_cast<int>(parse_long(k, v));
       }},
      {"classifiers",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.classifier_total = static_cast<int>(parse_long(k, v));
       }},
      {"frequent_fraction",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.frequent_fraction = parse_double(k, v);
       }},
      {"correlated_fraction",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.correlated_fraction = parse_double(k, v);
       }},
      {"drift_per_tick",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.drift_per_tick = parse_double(k, v);
       }},
      {"arrival_rate",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.arrival_rate = parse_double(k, v);
       }},
      {"mission_length",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.mission_length_hint = static_cast<int>(parse_long(k, v));
       }},
      {"progress_rate",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.progress_rate = parse_double(k, v);
       }},
      {"accuracy_floor",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.accuracy_floor = parse_double(k, v);
       }},
      {"penalty_multiplier",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.penalty_multiplier = parse_double(k, v);
       }},
      {"link_mb_per_tick",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.link_mb_per_tick = parse_double(k, v);
       }},
      {"util_min",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.util_min = parse_double(k, v);
       }},
      {"util_max",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.util_max = parse_double(k, v);
       }},
      {"gain_min",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.gain_min = parse_double(k, v);
       }},
      {"gain_max",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.gain_max = parse_double(k, v);
       }},
      {"delta_min_mb",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.delta_min_mb = parse_double(k, v);
       }},
      {"delta_max_mb",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.delta_max_mb = parse_double(k, v);
       }},
      {"latency_reduction_max",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.latency_reduction_max = parse_double(k, v);
       }},
      {"exec_reduction_max",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.exec_reduction_max = parse_double(k, v);
       }},
      {"frequent_arrival_weight",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.frequent_arrival_weight = parse_double(k, v);
       }},
      {"c1",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.weights.c1 = parse_double(k, v);
       }},
      {"c2",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.weights.c2 = parse_double(k, v);
       }},
      {"sweight",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.weights.system_weights = parse_weights(k, v);
       }},
      {"aweight",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.weights.application_weights = parse_weights(k, v);
       }},
      {"relax_weight_order",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.weights.relax_weight_order = parse_long(k, v) != 0;
       }},
      {"green_min",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.priority_thresholds.green_min = parse_double(k, v);
       }},
      {"yellow_min",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.priority_thresholds.yellow_min = parse_double(k, v);
       }},
      {"blue_min",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.priority_thresholds.blue_min = parse_double(k, v);
       }},
      {"util_threshold_cpu",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.constraints.utilization_thresholds.cpu = parse_double(k, v);
       }},
      {"util_threshold_memory",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.constraints.utilization_thresholds.memory = parse_double(k, v);
       }},
      {"util_threshold_storage",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.constraints.utilization_thresholds.storage = parse_double(k, v);
       }},
      {"util_threshold_throughput",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.constraints.utilization_thresholds.throughput = parse_double(k, v);
       }},
      {"min_transfer_rate_mb",
       [](ScenarioSpec& s, const std::string& k, const std::string& v) {
         s.constraints.min_transfer_rate_mb = parse_double(k, v);
       }},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                  " is not 'key = value': " + stripped);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("unknown scenario key '" + key + "' on line " +
                                  std::to_string(line_no));
    }
    it->second(spec, key, value);
  }
  spec.validate();
  return spec;
}

ScenarioSpec read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path);
  }
  return read_scenario(in);
}

}  // namespace dsoc
