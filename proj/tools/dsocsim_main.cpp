#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dsoc/scenario_io.hpp"
#include "dsoc/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

constexpr int kClassifierRangeMin = 40;
constexpr int kClassifierRangeMax = 140;

struct GenOptions {
  std::string out_path;
  dsoc::ScenarioSpec spec;
  bool allow_out_of_range = false;
};

struct RunOptions {
  std::string scenario_path;
  std::string strategy = "greedy";
  std::uint64_t seed = 0;
  bool seed_set = false;
  long max_ticks = 0;
  std::string trace_path;
  std::string summary_path;
};

struct CompareOptions {
  std::string scenario_path;
  int seeds = 1;
  std::string out_path;
  std::string curve_path;
};

long default_max_ticks(const dsoc::ScenarioSpec& spec) {
  return 10L * spec.mission_length_hint;
}

int cmd_gen(const GenOptions& options) {
  if (options.spec.classifier_total < kClassifierRangeMin ||
      options.spec.classifier_total > kClassifierRangeMax) {
    if (!options.allow_out_of_range) {
      std::cerr << "error: --classifiers " << options.spec.classifier_total
                << " lies outside the expected range [" << kClassifierRangeMin << ", "
                << kClassifierRangeMax << "]; pass --allow-out-of-range to override\n";
      return kExitUsage;
    }
    std::cerr << "warning: classifier count " << options.spec.classifier_total
              << " lies outside the expected range [" << kClassifierRangeMin << ", "
              << kClassifierRangeMax << "]\n";
  }
  options.spec.validate();
  dsoc::write_scenario_file(options.spec, options.out_path);
  std::cout << "wrote scenario to " << options.out_path << "\n";
  return kExitOk;
}

int cmd_run(const RunOptions& options) {
  dsoc::ScenarioSpec spec = dsoc::read_scenario_file(options.scenario_path);
  if (options.seed_set) {
    spec.seed = options.seed;
  }
  const dsoc::Strategy strategy = dsoc::strategy_from_string(options.strategy);
  const long max_ticks = options.max_ticks > 0 ? options.max_ticks : default_max_ticks(spec);

  const dsoc::MissionResult result = dsoc::run_mission(spec, strategy, max_ticks);

  if (!options.trace_path.empty()) {
    std::ofstream out(options.trace_path);
    if (!out) {
      throw std::runtime_error("cannot open trace file: " + options.trace_path);
    }
    dsoc::emit_trace(result.trace, out);
    out.flush();
    if (!out.good()) {
      throw std::runtime_error("failed writing trace file: " + options.trace_path);
    }
  }
  if (!options.summary_path.empty()) {
    std::ofstream out(options.summary_path);
    if (!out) {
      throw std::runtime_error("cannot open summary file: " + options.summary_path);
    }
    dsoc::write_summary_csv({result.summary}, out);
    out.flush();
    if (!out.good()) {
      throw std::runtime_error("failed writing summary file: " + options.summary_path);
    }
  }

  const dsoc::MissionSummary& s = result.summary;
  std::printf("%s seed=%llu completed=%d tick=%ld accuracy=%.6f applied=%llu mb=%.6f\n",
              dsoc::to_string(s.strategy).c_str(),
              static_cast<unsigned long long>(s.seed), s.completed ? 1 : 0,
              s.completion_tick, s.final_accuracy,
              static_cast<unsigned long long>(s.updates_applied), s.mb_transferred);
  return kExitOk;
}

int cmd_compare(const CompareOptions& options) {
  const dsoc::ScenarioSpec base = dsoc::read_scenario_file(options.scenario_path);
  const long max_ticks = default_max_ticks(base);

  std::vector<dsoc::MissionSummary> summaries;
  std::array<double, 10> curve_greedy{};
  std::array<double, 10> curve_dsoc{};
  for (int seed = 1; seed <= options.seeds; ++seed) {
    for (const dsoc::Strategy strategy : {dsoc::Strategy::Dsoc, dsoc::Strategy::Greedy}) {
      dsoc::ScenarioSpec spec = base;
      spec.seed = static_cast<std::uint64_t>(seed);
      const dsoc::MissionResult result = dsoc::run_mission(spec, strategy, max_ticks);
      summaries.push_back(result.summary);
      const auto samples = dsoc::accuracy_at_completion_deciles(result.trace);
      auto& curve = strategy == dsoc::Strategy::Greedy ? curve_greedy : curve_dsoc;
      for (std::size_t i = 0; i < curve.size(); ++i) {
        curve[i] += samples[i];
      }
    }
  }

  std::ofstream out(options.out_path);
  if (!out) {
    throw std::runtime_error("cannot open comparison file: " + options.out_path);
  }
  dsoc::write_summary_csv(summaries, out);

  std::ofstream curve(options.curve_path);
  if (!curve) {
    throw std::runtime_error("cannot open curve file: " + options.curve_path);
  }
  curve << "strategy,completion_decile,mean_accuracy\n";
  const double n = static_cast<double>(options.seeds);
  for (std::size_t i = 0; i < curve_dsoc.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", curve_dsoc[i] / n);
    curve << "dsoc," << (10 * (i + 1)) << ',' << buf << '\n';
  }
  for (std::size_t i = 0; i < curve_greedy.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", curve_greedy[i] / n);
    curve << "greedy," << (10 * (i + 1)) << ',' << buf << '\n';
  }

  std::cout << "compared " << options.seeds << " seed(s); summaries in " << options.out_path
            << ", curve in " << options.curve_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator comparing greedy and prioritized classifier update scheduling"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a scenario configuration file");
  gen_cmd->add_option("--out", gen.out_path, "output scenario path")->required();
  gen_cmd->add_option("--seed", gen.spec.seed, "scenario seed");
  gen_cmd->add_option("--nodes", gen.spec.node_count, "cluster node count");
  gen_cmd->add_option("--apps", gen.spec.app_count, "application count");
  gen_cmd->add_option("--classifiers", gen.spec.classifier_total, "total classifier count");
  gen_cmd->add_option("--frequent-fraction", gen.spec.frequent_fraction,
                      "fraction of classifiers updated frequently")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--correlated-fraction", gen.spec.correlated_fraction,
                      "fraction of classifiers in correlated pairs")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--drift", gen.spec.drift_per_tick, "accuracy drift per tick");
  gen_cmd->add_option("--arrival-rate", gen.spec.arrival_rate, "mean update arrivals per tick");
  gen_cmd->add_option("--mission-length", gen.spec.mission_length_hint,
                      "mission length hint in ticks");
  gen_cmd->add_option("--c1", gen.spec.weights.c1, "system score weight");
  gen_cmd->add_option("--c2", gen.spec.weights.c2, "application score weight");
  gen_cmd->add_flag("--relax-weight-order", gen.spec.weights.relax_weight_order,
                    "allow c1 > c2 (c1 + c2 = 1 still enforced)");
  gen_cmd->add_flag("--allow-out-of-range", gen.allow_out_of_range,
                    "accept classifier counts outside [40,140] with a warning");

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "run one mission");
  run_cmd->add_option("--scenario", run.scenario_path, "scenario file")->required();
  run_cmd->add_option("--strategy", run.strategy, "greedy or dsoc")->required();
  run_cmd->add_option("--seed", run.seed, "override the scenario seed");
  run_cmd->add_option("--ticks", run.max_ticks, "maximum ticks (default 10x mission length)");
  run_cmd->add_option("--trace", run.trace_path, "write the event trace here");
  run_cmd->add_option("--summary", run.summary_path, "write the summary CSV here");

  CompareOptions compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run both strategies across seeds 1..N");
  compare_cmd->add_option("--scenario", compare.scenario_path, "scenario file")->required();
  compare_cmd->add_option("--seeds", compare.seeds, "seed count")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--out", compare.out_path, "comparison CSV path")->required();
  compare_cmd->add_option("--curve", compare.curve_path, "accuracy-vs-completion curve path")
      ->required();

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) {
      return cmd_gen(gen);
    }
    if (run_cmd->parsed()) {
      run.seed_set = run_cmd->count("--seed") > 0;
      return cmd_run(run);
    }
    return cmd_compare(compare);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const dsoc::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
