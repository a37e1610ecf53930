"""bpmncheck: explicit-state control-flow verification for BPMN models."""

__version__ = "0.1.0"

from .ir import (
    CollaborationModel,
    FlowNode,
    MessageFlow,
    NodeKind,
    Process,
    SequenceFlow,
    StaticWarning,
    WarningKind,
    validate_structure,
)
from .bpmn_xml import parse_bpmn, serialize_bpmn
from .semantics import (
    Marking,
    Transition,
    enabled_transitions,
    fire,
    initial_marking,
    is_terminal,
)
from .explorer import (
    ExplorationLimits,
    ExplorationStats,
    StateSpace,
    Trace,
    TraceStep,
    explore,
    shortest_trace,
)
from .properties import (
    Diagnosis,
    PropertyResult,
    Violation,
    check_dead_activities,
    check_option_to_complete,
    check_safeness,
    diagnose,
)
from .quickfix import FixKind, QuickFix, apply_fix, suggest_fixes, undo_fix
from .diagnostics import diagnosis_document, to_json

__all__ = [
    "Diagnosis",
    "PropertyResult",
    "Violation",
    "check_dead_activities",
    "check_option_to_complete",
    "check_safeness",
    "diagnose",
    "FixKind",
    "QuickFix",
    "apply_fix",
    "suggest_fixes",
    "undo_fix",
    "diagnosis_document",
    "to_json",
    "CollaborationModel",
    "FlowNode",
    "MessageFlow",
    "NodeKind",
    "Process",
    "SequenceFlow",
    "StaticWarning",
    "WarningKind",
    "validate_structure",
    "parse_bpmn",
    "serialize_bpmn",
    "Marking",
    "Transition",
    "enabled_transitions",
    "fire",
    "initial_marking",
    "is_terminal",
    "ExplorationLimits",
    "ExplorationStats",
    "StateSpace",
    "Trace",
    "TraceStep",
    "explore",
    "shortest_trace",
]
