"""Deterministic cluster simulator for classifier update scheduling.

The heavy lifting lives in the C++ extension module; this package re-exports
its types and operations.
"""

from dsocsim._core import (  # noqa: F401
    Application,
    Classifier,
    Cluster,
    ConstraintConfig,
    MissionSummary,
    Node,
    PriorityClass,
    PriorityScore,
    PriorityThresholds,
    ResourceVector,
    ScenarioSpec,
    ScheduleDecision,
    TransferState,
    UpdateQueue,
    UpdateRequest,
    WeightConfig,
    assign_priority,
    classify_pval,
    compute_ap,
    compute_k,
    compute_sp,
    dsoc_schedule,
    greedy_schedule,
    is_constrained,
    link_saturated,
    oracle_max_feasible,
    read_scenario_file,
    run_mission,
    write_scenario_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
