"""Independent reachability oracle for cross-checking the explorer.

Naive fixpoint enumeration over a plain list using only the public
semantics (dict-based markings, no compiled templates), so it shares no
code path with the optimized BFS it is used to verify.
"""

from __future__ import annotations

from bpmncheck.ir import CollaborationModel
from bpmncheck.semantics import enabled_transitions, fire, initial_marking


def enumerate_markings(model: CollaborationModel, limit: int = 50_000):
    """All reachable markings: expand entries of a plain list until no new
    marking appears."""
    first = initial_marking(model)
    found = [first]
    seen = {first}
    expanded = 0
    while expanded < len(found):
        marking = found[expanded]
        expanded += 1
        for t in enabled_transitions(model, marking):
            nxt = fire(model, marking, t)
            if nxt not in seen:
                seen.add(nxt)
                found.append(nxt)
                if len(found) > limit:
                    raise RuntimeError(f"oracle enumeration exceeded {limit} markings")
    return found


def canonical_set(model: CollaborationModel, limit: int = 50_000):
    return frozenset(m.canonical() for m in enumerate_markings(model, limit))
