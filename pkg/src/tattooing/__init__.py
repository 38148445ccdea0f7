"""Exact tattooing and brush invariants of small connected graphs."""

from tattooing.engine import (
    AllocationPlan,
    ColourSet,
    Deadlock,
    DispatchSchedule,
    EngineError,
    FireEvent,
    IncompleteAssignmentError,
    InjectivityError,
    Mode,
    NotReadyError,
    Outcome,
    Policy,
    ProcessState,
    ReplayError,
    UnavailableColourSetError,
    Witness,
    fire,
    initial_state,
    mutate_pool,
    outcome_from_state,
    ready_vertices,
    replay,
    required_primaries,
    run_schedule,
    verify_outcome,
)
from tattooing.formulas import (
    FamilyFormulaResult,
    cycle_tau,
    fr3_formulas,
    general_fr_formulas,
    joost_formulas,
)
from tattooing.graphs import (
    Digraph,
    DisconnectedGraphError,
    DuplicateEdgeError,
    EdgeListError,
    FamilyKind,
    FamilySpec,
    Graph,
    MalformedLineError,
    SelfLoopError,
    acyclic_orientation_bits,
    acyclic_orientations,
    build_family,
    collect_acyclic_orientation_bits,
    orient,
    parse_edge_list,
    parse_family_spec,
)
from tattooing.oracle import (
    MAX_ORACLE_EDGES,
    OracleResult,
    connected_graph_corpus,
    oracle_invariants,
)
from tattooing.search import (
    IndexReport,
    InvariantResult,
    LimitError,
    Quantity,
    SearchLimits,
    best_index,
    best_index_for_orientation,
    invariant,
    min_cost_for_orientation,
    ratio_set,
)

__all__ = [
    "AllocationPlan",
    "ColourSet",
    "Deadlock",
    "Digraph",
    "DisconnectedGraphError",
    "DispatchSchedule",
    "DuplicateEdgeError",
    "EdgeListError",
    "EngineError",
    "FamilyFormulaResult",
    "FamilyKind",
    "FamilySpec",
    "FireEvent",
    "Graph",
    "IncompleteAssignmentError",
    "IndexReport",
    "InjectivityError",
    "InvariantResult",
    "LimitError",
    "MAX_ORACLE_EDGES",
    "MalformedLineError",
    "Mode",
    "NotReadyError",
    "OracleResult",
    "Outcome",
    "Policy",
    "ProcessState",
    "Quantity",
    "ReplayError",
    "SearchLimits",
    "SelfLoopError",
    "UnavailableColourSetError",
    "Witness",
    "acyclic_orientation_bits",
    "acyclic_orientations",
    "best_index",
    "best_index_for_orientation",
    "build_family",
    "collect_acyclic_orientation_bits",
    "connected_graph_corpus",
    "cycle_tau",
    "fire",
    "fr3_formulas",
    "general_fr_formulas",
    "initial_state",
    "invariant",
    "joost_formulas",
    "min_cost_for_orientation",
    "mutate_pool",
    "oracle_invariants",
    "orient",
    "outcome_from_state",
    "parse_edge_list",
    "parse_family_spec",
    "ratio_set",
    "ready_vertices",
    "replay",
    "required_primaries",
    "run_schedule",
    "verify_outcome",
]
