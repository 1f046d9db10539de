#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dsoc/scenario_io.hpp"
#include "dsoc/sim.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic cluster simulator comparing greedy and prioritized "
            "classifier update scheduling";

  py::class_<dsoc::ResourceVector>(m, "ResourceVector")
      .def(py::init<>())
      .def(py::init([](double cpu, double memory, double storage, double throughput) {
             return dsoc::ResourceVector{cpu, memory, storage, throughput};
           }),
           py::arg("cpu"), py::arg("memory"), py::arg("storage"), py::arg("throughput"))
      .def_readwrite("cpu", &dsoc::ResourceVector::cpu)
      .def_readwrite("memory", &dsoc::ResourceVector::memory)
      .def_readwrite("storage", &dsoc::ResourceVector::storage)
      .def_readwrite("throughput", &dsoc::ResourceVector::throughput);

  py::class_<dsoc::TransferState>(m, "TransferState")
      .def_readonly("update_id", &dsoc::TransferState::update_id)
      .def_readonly("app_id", &dsoc::TransferState::app_id)
      .def_readonly("remaining_mb", &dsoc::TransferState::remaining_mb)
      .def_readonly("rate_mb_per_tick", &dsoc::TransferState::rate_mb_per_tick);

  py::class_<dsoc::Node>(m, "Node")
      .def(py::init<>())
      .def_readwrite("id", &dsoc::Node::id)
      .def_readwrite("capacity", &dsoc::Node::capacity)
      .def_readwrite("utilization", &dsoc::Node::utilization)
      .def_readonly("inflight", &dsoc::Node::inflight)
      .def("link_capacity", &dsoc::Node::link_capacity);

  py::class_<dsoc::Classifier>(m, "Classifier")
      .def(py::init<>())
      .def_readwrite("id", &dsoc::Classifier::id)
      .def_readwrite("version", &dsoc::Classifier::version)
      .def_readwrite("accuracy", &dsoc::Classifier::accuracy)
      .def_readwrite("size_mb", &dsoc::Classifier::size_mb)
      .def_readwrite("frequent_update", &dsoc::Classifier::frequent_update);

  py::class_<dsoc::Application>(m, "Application")
      .def(py::init<>())
      .def_readwrite("id", &dsoc::Application::id)
      .def_readwrite("node_id", &dsoc::Application::node_id)
      .def_readwrite("classifiers", &dsoc::Application::classifiers)
      .def_readwrite("accuracy", &dsoc::Application::accuracy)
      .def_readwrite("progress", &dsoc::Application::progress)
      .def_readwrite("latency_ms", &dsoc::Application::latency_ms)
      .def_readwrite("exec_time_ms", &dsoc::Application::exec_time_ms)
      .def_readwrite("worker_busy", &dsoc::Application::worker_busy)
      .def("refresh_accuracy", &dsoc::Application::refresh_accuracy);

  py::class_<dsoc::UpdateRequest>(m, "UpdateRequest")
      .def(py::init<>())
      .def_readwrite("id", &dsoc::UpdateRequest::id)
      .def_readwrite("app_id", &dsoc::UpdateRequest::app_id)
      .def_readwrite("node_id", &dsoc::UpdateRequest::node_id)
      .def_readwrite("classifier_id", &dsoc::UpdateRequest::classifier_id)
      .def_readwrite("delta_mb", &dsoc::UpdateRequest::delta_mb)
      .def_readwrite("accuracy_gain", &dsoc::UpdateRequest::accuracy_gain)
      .def_readwrite("latency_reduction", &dsoc::UpdateRequest::latency_reduction)
      .def_readwrite("exec_reduction", &dsoc::UpdateRequest::exec_reduction)
      .def_readwrite("arrival_tick", &dsoc::UpdateRequest::arrival_tick)
      .def_readwrite("correlated_with", &dsoc::UpdateRequest::correlated_with);

  py::class_<dsoc::Cluster>(m, "Cluster")
      .def(py::init<>())
      .def_readwrite("nodes", &dsoc::Cluster::nodes)
      .def_readwrite("apps", &dsoc::Cluster::apps);

  py::class_<dsoc::ConstraintConfig>(m, "ConstraintConfig")
      .def(py::init<>())
      .def_readwrite("utilization_thresholds", &dsoc::ConstraintConfig::utilization_thresholds)
      .def_readwrite("min_transfer_rate_mb", &dsoc::ConstraintConfig::min_transfer_rate_mb)
      .def("validate", &dsoc::ConstraintConfig::validate);

  m.def("is_constrained", &dsoc::is_constrained, py::arg("node"), py::arg("config"));
  m.def("link_saturated", &dsoc::link_saturated, py::arg("node"), py::arg("config"));

  py::enum_<dsoc::PriorityClass>(m, "PriorityClass")
      .value("Green", dsoc::PriorityClass::Green)
      .value("Yellow", dsoc::PriorityClass::Yellow)
      .value("Blue", dsoc::PriorityClass::Blue)
      .value("Red", dsoc::PriorityClass::Red);

  py::class_<dsoc::WeightConfig>(m, "WeightConfig")
      .def(py::init<>())
      .def_readwrite("c1", &dsoc::WeightConfig::c1)
      .def_readwrite("c2", &dsoc::WeightConfig::c2)
      .def_readwrite("system_weights", &dsoc::WeightConfig::system_weights)
      .def_readwrite("application_weights", &dsoc::WeightConfig::application_weights)
      .def_readwrite("relax_weight_order", &dsoc::WeightConfig::relax_weight_order)
      .def("validate", &dsoc::WeightConfig::validate);

  py::class_<dsoc::PriorityThresholds>(m, "PriorityThresholds")
      .def(py::init<>())
      .def_readwrite("green_min", &dsoc::PriorityThresholds::green_min)
      .def_readwrite("yellow_min", &dsoc::PriorityThresholds::yellow_min)
      .def_readwrite("blue_min", &dsoc::PriorityThresholds::blue_min)
      .def("validate", &dsoc::PriorityThresholds::validate);

  py::class_<dsoc::PriorityScore>(m, "PriorityScore")
      .def_readonly("sp", &dsoc::PriorityScore::sp)
      .def_readonly("ap", &dsoc::PriorityScore::ap)
      .def_readonly("pval", &dsoc::PriorityScore::pval)
      .def_readonly("cls", &dsoc::PriorityScore::cls);

  m.def("compute_sp", &dsoc::compute_sp, py::arg("node"), py::arg("system_weights"));
  m.def("compute_ap", &dsoc::compute_ap, py::arg("app"), py::arg("update"),
        py::arg("application_weights"));
  m.def("classify_pval", &dsoc::classify_pval, py::arg("pval"), py::arg("thresholds"));
  m.def("assign_priority", &dsoc::assign_priority, py::arg("update"), py::arg("node"),
        py::arg("app"), py::arg("weights"), py::arg("thresholds"));

  py::class_<dsoc::UpdateQueue>(m, "UpdateQueue")
      .def(py::init<>())
      .def("push", &dsoc::UpdateQueue::push)
      .def("empty", &dsoc::UpdateQueue::empty)
      .def("size", &dsoc::UpdateQueue::size)
      .def("items", &dsoc::UpdateQueue::items);

  py::class_<dsoc::ScheduleDecision>(m, "ScheduleDecision")
      .def_readonly("assigned", &dsoc::ScheduleDecision::assigned)
      .def_readonly("delayed", &dsoc::ScheduleDecision::delayed)
      .def_readonly("dropped", &dsoc::ScheduleDecision::dropped)
      .def_readonly("k", &dsoc::ScheduleDecision::k)
      .def_readonly("scores", &dsoc::ScheduleDecision::scores);

  m.def("compute_k", &dsoc::compute_k, py::arg("candidates"), py::arg("cluster"),
        py::arg("config"));
  m.def("greedy_schedule", &dsoc::greedy_schedule, py::arg("queue"), py::arg("cluster"),
        py::arg("config"));
  m.def("dsoc_schedule", &dsoc::dsoc_schedule, py::arg("queue"), py::arg("cluster"),
        py::arg("weights"), py::arg("config"), py::arg("thresholds"));
  m.def("oracle_max_feasible", &dsoc::oracle_max_feasible, py::arg("candidates"),
        py::arg("cluster"), py::arg("config"));

  py::class_<dsoc::ScenarioSpec>(m, "ScenarioSpec")
      .def(py::init<>())
      .def_readwrite("seed", &dsoc::ScenarioSpec::seed)
      .def_readwrite("node_count", &dsoc::ScenarioSpec::node_count)
      .def_readwrite("app_count", &dsoc::ScenarioSpec::app_count)
      .def_readwrite("classifier_total", &dsoc::ScenarioSpec::classifier_total)
      .def_readwrite("frequent_fraction", &dsoc::ScenarioSpec::frequent_fraction)
      .def_readwrite("correlated_fraction", &dsoc::ScenarioSpec::correlated_fraction)
      .def_readwrite("drift_per_tick", &dsoc::ScenarioSpec::drift_per_tick)
      .def_readwrite("arrival_rate", &dsoc::ScenarioSpec::arrival_rate)
      .def_readwrite("mission_length_hint", &dsoc::ScenarioSpec::mission_length_hint)
      .def_readwrite("progress_rate", &dsoc::ScenarioSpec::progress_rate)
      .def_readwrite("accuracy_floor", &dsoc::ScenarioSpec::accuracy_floor)
      .def_readwrite("penalty_multiplier", &dsoc::ScenarioSpec::penalty_multiplier)
      .def_readwrite("link_mb_per_tick", &dsoc::ScenarioSpec::link_mb_per_tick)
      .def_readwrite("util_min", &dsoc::ScenarioSpec::util_min)
      .def_readwrite("util_max", &dsoc::ScenarioSpec::util_max)
      .def_readwrite("gain_min", &dsoc::ScenarioSpec::gain_min)
      .def_readwrite("gain_max", &dsoc::ScenarioSpec::gain_max)
      .def_readwrite("delta_min_mb", &dsoc::ScenarioSpec::delta_min_mb)
      .def_readwrite("delta_max_mb", &dsoc::ScenarioSpec::delta_max_mb)
      .def_readwrite("latency_reduction_max", &dsoc::ScenarioSpec::latency_reduction_max)
      .def_readwrite("exec_reduction_max", &dsoc::ScenarioSpec::exec_reduction_max)
      .def_readwrite("frequent_arrival_weight", &dsoc::ScenarioSpec::frequent_arrival_weight)
      .def_readwrite("weights", &dsoc::ScenarioSpec::weights)
      .def_readwrite("priority_thresholds", &dsoc::ScenarioSpec::priority_thresholds)
      .def_readwrite("constraints", &dsoc::ScenarioSpec::constraints)
      .def("effective_progress_rate", &dsoc::ScenarioSpec::effective_progress_rate)
      .def("validate", &dsoc::ScenarioSpec::validate);

  py::class_<dsoc::MissionSummary>(m, "MissionSummary")
      .def_property_readonly("strategy",
                             [](const dsoc::MissionSummary& s) { return dsoc::to_string(s.strategy); })
      .def_readonly("seed", &dsoc::MissionSummary::seed)
      .def_readonly("completed", &dsoc::MissionSummary::completed)
      .def_readonly("completion_tick", &dsoc::MissionSummary::completion_tick)
      .def_readonly("final_accuracy", &dsoc::MissionSummary::final_accuracy)
      .def_readonly("updates_arrived", &dsoc::MissionSummary::updates_arrived)
      .def_readonly("updates_applied", &dsoc::MissionSummary::updates_applied)
      .def_readonly("updates_dropped", &dsoc::MissionSummary::updates_dropped)
      .def_readonly("delay_events", &dsoc::MissionSummary::delay_events)
      .def_readonly("mb_transferred", &dsoc::MissionSummary::mb_transferred);

  m.def(
      "run_mission",
      [](const dsoc::ScenarioSpec& spec, const std::string& strategy, long max_ticks) {
        const auto result =
            dsoc::run_mission(spec, dsoc::strategy_from_string(strategy), max_ticks);
        std::ostringstream trace;
        dsoc::emit_trace(result.trace, trace);
        const auto deciles = dsoc::accuracy_at_completion_deciles(result.trace);
        return py::make_tuple(result.summary, trace.str(), deciles);
      },
      py::arg("spec"), py::arg("strategy"), py::arg("max_ticks"),
      "Run one mission; returns (summary, trace_text, accuracy_at_deciles).");

  m.def("write_scenario_file", &dsoc::write_scenario_file, py::arg("spec"), py::arg("path"));
  m.def("read_scenario_file", &dsoc::read_scenario_file, py::arg("path"));
}
