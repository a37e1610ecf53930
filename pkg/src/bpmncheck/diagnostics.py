"""The JSON diagnostics contract between the engine and its clients.

Key order is fixed so golden-file comparisons are stable; the only
run-dependent field is ``stats.runtime_us``.
"""

from __future__ import annotations

import json

from .explorer import Trace
from .properties import Diagnosis
from .semantics import Transition

DIAGNOSIS_SCHEMA = {
    "type": "object",
    "required": ["model", "stats", "properties", "quickFixes", "warnings"],
    "additionalProperties": False,
    "properties": {
        "model": {"type": "string"},
        "stats": {
            "type": "object",
            "required": ["states", "transitions", "runtime_us"],
            "additionalProperties": False,
            "properties": {
                "states": {"type": "integer", "minimum": 0},
                "transitions": {"type": "integer", "minimum": 0},
                "runtime_us": {"type": "integer", "minimum": 0},
                "boundHit": {"enum": ["MaxStates", "TokenBound"]},
            },
        },
        "properties": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "fulfilled", "violations"],
                "additionalProperties": False,
                "properties": {
                    "name": {
                        "enum": ["Safeness", "OptionToComplete", "NoDeadActivities"]
                    },
                    "fulfilled": {"enum": ["true", "false", "unknown"]},
                    "violations": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["kind", "elements"],
                            "additionalProperties": False,
                            "properties": {
                                "kind": {
                                    "enum": [
                                        "Deadlock",
                                        "Livelock",
                                        "MessageStarvation",
                                        "DeadActivity",
                                        "LackOfSynchronization",
                                    ]
                                },
                                "elements": {
                                    "type": "array",
                                    "items": {"type": "string"},
                                },
                                "trace": {"$ref": "#/$defs/trace"},
                                "cycle": {
                                    "type": "array",
                                    "items": {"$ref": "#/$defs/step"},
                                },
                                "note": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
        "quickFixes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind", "targets", "description"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "kind": {"type": "string"},
                    "targets": {"type": "array", "items": {"type": "string"}},
                    "description": {"type": "string"},
                },
            },
        },
        "warnings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "elements"],
                "additionalProperties": False,
                "properties": {
                    "kind": {"type": "string"},
                    "elements": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
    "$defs": {
        "step": {
            "type": "object",
            "required": ["fire", "consume", "produce"],
            "additionalProperties": False,
            "properties": {
                "fire": {"type": "string"},
                "consume": {"type": "array", "items": {"type": "string"}},
                "produce": {"type": "array", "items": {"type": "string"}},
            },
        },
        "trace": {
            "type": "object",
            "required": ["steps"],
            "additionalProperties": False,
            "properties": {
                "steps": {"type": "array", "items": {"$ref": "#/$defs/step"}}
            },
        },
    },
}


def _step_doc(transition: Transition) -> dict:
    return {
        "fire": transition.fired_node,
        "consume": list(transition.consumed_seq) + list(transition.consumed_msg),
        "produce": list(transition.produced_seq) + list(transition.produced_msg),
    }


def _trace_doc(trace: Trace) -> dict:
    return {"steps": [_step_doc(s.transition) for s in trace.steps]}


_FULFILLED = {True: "true", False: "false", None: "unknown"}


def diagnosis_document(model_name: str, diagnosis: Diagnosis) -> dict:
    """Render a Diagnosis as the stable JSON contract."""
    stats = {
        "states": diagnosis.stats.state_count,
        "transitions": diagnosis.stats.transition_count,
        "runtime_us": int(diagnosis.stats.elapsed_us),
    }
    if diagnosis.stats.bound_hit:
        stats["boundHit"] = diagnosis.stats.bound_hit
    properties = []
    for r in diagnosis.results:
        violations = []
        for v in r.violations:
            doc = {"kind": v.kind, "elements": list(v.elements)}
            if v.trace is not None:
                doc["trace"] = _trace_doc(v.trace)
            if v.cycle is not None:
                doc["cycle"] = [_step_doc(t) for t in v.cycle]
            if v.note is not None:
                doc["note"] = v.note
            violations.append(doc)
        properties.append(
            {
                "name": r.name,
                "fulfilled": _FULFILLED[r.fulfilled],
                "violations": violations,
            }
        )
    return {
        "model": model_name,
        "stats": stats,
        "properties": properties,
        "quickFixes": [
            {
                "id": f.id,
                "kind": f.kind.value,
                "targets": list(f.targets),
                "description": f.description,
            }
            for f in diagnosis.quick_fixes
        ],
        "warnings": [
            {"kind": w.kind.value, "elements": list(w.elements)}
            for w in diagnosis.warnings
        ],
    }


def to_json(document: dict) -> str:
    return json.dumps(document, indent=2)


def render_text(document: dict) -> str:
    """Human-readable analysis summary for the CLI."""
    lines = [f"model: {document['model']}"]
    s = document["stats"]
    runtime = s["runtime_us"]
    runtime_str = f"{runtime / 1000:.1f} ms" if runtime >= 1000 else f"{runtime} µs"
    lines.append(
        f"states: {s['states']}  transitions: {s['transitions']}  runtime: {runtime_str}"
    )
    if "boundHit" in s:
        lines.append(f"exploration bound hit: {s['boundHit']} (verdicts are unknown)")
    all_ok = True
    for p in document["properties"]:
        status = {"true": "fulfilled", "false": "violated", "unknown": "unknown"}[
            p["fulfilled"]
        ]
        if p["fulfilled"] != "true":
            all_ok = False
        lines.append(f"{p['name']}: {status}")
        for v in p["violations"]:
            where = ", ".join(v["elements"])
            extra = ""
            if "trace" in v:
                extra = f" (trace length {len(v['trace']['steps'])})"
            lines.append(f"  - {v['kind']} at {where}{extra}")
    for w in document["warnings"]:
        where = ", ".join(w["elements"])
        lines.append(f"warning: {w['kind']}{' at ' + where if where else ''}")
    if document["quickFixes"]:
        lines.append("quick fixes:")
        for f in document["quickFixes"]:
            lines.append(f"  - [{f['id']}] {f['description']}")
    if all_ok:
        lines.append("all properties fulfilled")
    return "\n".join(lines) + "\n"
