"""Property evaluation over the explored state space.

Three properties are checked: safeness (no flow ever carries two tokens),
option to complete (every reachable marking can still reach a terminal
one), and no dead activities. Violations are classified into five error
kinds and carry shortest counterexample traces where applicable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .explorer import (
    ExplorationLimits,
    ExplorationStats,
    StateSpace,
    Trace,
    explore,
    shortest_trace,
)
from .ir import (
    ACTIVITY_KINDS,
    MESSAGE_WAIT_KINDS,
    CollaborationModel,
    StaticWarning,
    WarningKind,
    validate_structure,
)
from .semantics import Transition

PROP_SAFENESS = "Safeness"
PROP_OPTION_TO_COMPLETE = "OptionToComplete"
PROP_NO_DEAD_ACTIVITIES = "NoDeadActivities"

KIND_DEADLOCK = "Deadlock"
KIND_LIVELOCK = "Livelock"
KIND_STARVATION = "MessageStarvation"
KIND_DEAD_ACTIVITY = "DeadActivity"
KIND_UNSAFE = "LackOfSynchronization"

# Pure-Python reverse BFS below this; batched numpy layers above.
_SMALL_SPACE = 100_000


@dataclass(frozen=True)
class Violation:
    kind: str
    elements: tuple[str, ...]
    trace: Trace | None = None
    cycle: tuple[Transition, ...] | None = None
    note: str | None = None


@dataclass(frozen=True)
class PropertyResult:
    name: str
    fulfilled: bool | None  # None = unknown (exploration hit a bound)
    violations: tuple[Violation, ...] = ()


@dataclass
class Diagnosis:
    results: tuple[PropertyResult, ...]
    stats: ExplorationStats
    quick_fixes: tuple = ()
    warnings: tuple[StaticWarning, ...] = ()

    def result_for(self, name: str) -> PropertyResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(v for r in self.results for v in r.violations)

    @property
    def fulfilled(self) -> bool:
        return all(r.fulfilled is True for r in self.results)

    @property
    def has_unknown(self) -> bool:
        return any(r.fulfilled is None for r in self.results)


def check_safeness(space: StateSpace) -> PropertyResult:
    """One violation per distinct flow that ever carries two or more tokens.

    Unsafe states are recorded during BFS in discovery order, so the first
    record per flow is at minimal depth.
    """
    violations = []
    for state_idx, flow_ids in space.unsafe_states:
        trace = shortest_trace(space, state_idx)
        for fid in flow_ids:
            violations.append(Violation(KIND_UNSAFE, (fid,), trace=trace))
    if violations:
        return PropertyResult(PROP_SAFENESS, False, tuple(violations))
    if space.bound_hit:
        return PropertyResult(PROP_SAFENESS, None)
    return PropertyResult(PROP_SAFENESS, True)


def check_option_to_complete(
    model: CollaborationModel, space: StateSpace
) -> PropertyResult:
    """Backward reachability from terminal states over the edge relation.

    States outside the coreachable set are classified: no outgoing edges is
    a deadlock (a message starvation when every blocked token waits at a
    message-consuming node); otherwise the state belongs to a livelock when
    it can still reach a cycle. Violations are deduplicated per anchor
    element set and anchored at the minimal-depth state.
    """
    if space.bound_hit:
        return PropertyResult(PROP_OPTION_TO_COMPLETE, None)
    n = space.state_count
    coreach = _coreachable(space)
    if bool(coreach.all()):
        return PropertyResult(PROP_OPTION_TO_COMPLETE, True)

    violations: list[Violation] = []
    seen_anchors: set[tuple[str, tuple[str, ...]]] = set()
    stuck: list[int] = []
    open_states: list[int] = []
    for i in range(n):
        if coreach[i]:
            continue
        if space.out_degree(i) == 0:
            stuck.append(i)
        else:
            open_states.append(i)

    nodes = model.nodes_by_id
    flows = model.flows_by_id
    for i in stuck:
        marking = space.marking(i)
        blocked_targets = sorted({flows[f].target for f in marking.tokens})
        waiting = all(
            nodes[t].kind in MESSAGE_WAIT_KINDS for t in blocked_targets
        )
        kind = KIND_STARVATION if waiting and blocked_targets else KIND_DEADLOCK
        anchor = (kind, tuple(blocked_targets))
        if anchor in seen_anchors:
            continue
        seen_anchors.add(anchor)
        violations.append(
            Violation(kind, tuple(blocked_targets), trace=shortest_trace(space, i))
        )

    if open_states:
        violations.extend(
            _livelock_violations(space, coreach, open_states, seen_anchors)
        )

    return PropertyResult(PROP_OPTION_TO_COMPLETE, False, tuple(violations))


def _livelock_violations(space, coreach, open_states, seen_anchors):
    """Livelocks: non-coreachable states from which an infinite run exists."""
    region = set(open_states)
    # Kernel: iteratively drop states whose every successor has been dropped;
    # what survives can run forever inside the non-coreachable region.
    alive = dict.fromkeys(region, 0)
    preds: dict[int, list[int]] = {}
    for i in region:
        live_succ = 0
        for _, j in space.raw_edges(i):
            if not coreach[j] and j in region:
                preds.setdefault(j, []).append(i)
                live_succ += 1
        alive[i] = live_succ
    queue = [i for i, c in alive.items() if c == 0]
    while queue:
        dead = queue.pop()
        for p in preds.get(dead, ()):
            alive[p] -= 1
            if alive[p] == 0:
                queue.append(p)
    kernel = {i for i, c in alive.items() if c > 0}
    if not kernel:
        return []
    # States that can reach the kernel (within the region) are livelocked.
    reach_kernel = set(kernel)
    work = list(kernel)
    rpreds: dict[int, list[int]] = {}
    for i in region:
        for _, j in space.raw_edges(i):
            if j in region:
                rpreds.setdefault(j, []).append(i)
    while work:
        j = work.pop()
        for p in rpreds.get(j, ()):
            if p not in reach_kernel:
                reach_kernel.add(p)
                work.append(p)

    violations = []
    covered: set[int] = set()
    for i in sorted(reach_kernel):
        if i in covered:
            continue
        cycle, visited = _walk_to_cycle(space, i, reach_kernel, kernel)
        covered.update(visited)
        # Anchor at the minimal-depth state on the cycle and rotate the
        # cycle to start there, so trace + cycle forms a replayable lasso.
        cycle_states = [src for _, src, _ in cycle]
        p = cycle_states.index(min(cycle_states))
        rotated = cycle[p:] + cycle[:p]
        start_state = rotated[0][1]
        transitions = tuple(space.transition_of_template(t) for t, _, _ in rotated)
        elements = tuple(sorted({t.fired_node for t in transitions}))
        anchor = (KIND_LIVELOCK, elements)
        if anchor in seen_anchors:
            continue
        seen_anchors.add(anchor)
        violations.append(
            Violation(
                KIND_LIVELOCK,
                elements,
                trace=shortest_trace(space, start_state),
                cycle=transitions,
            )
        )
    return violations


def _walk_to_cycle(space, start, livelocked, kernel):
    """Follow successors inside the livelocked region until a state repeats.

    Returns the cycle as (template, source, target) triples plus every state
    visited on the walk.
    """
    path: list[tuple[int, int, int]] = []
    seen_at = {start: 0}
    visited = [start]
    cur = start
    while True:
        step = None
        for t, j in space.raw_edges(cur):
            if j in kernel:
                step = (t, j)
                break
            if step is None and j in livelocked:
                step = (t, j)
        t, j = step
        path.append((t, cur, j))
        if j in seen_at:
            return path[seen_at[j] :], visited
        seen_at[j] = len(path)
        visited.append(j)
        cur = j


def check_dead_activities(
    model: CollaborationModel, space: StateSpace
) -> PropertyResult:
    """Tasks (plain, send, receive) that fire in no reachable execution."""
    if space.bound_hit:
        return PropertyResult(PROP_NO_DEAD_ACTIVITIES, None)
    dead = sorted(
        n.id
        for p in model.processes
        for n in p.nodes
        if n.kind in ACTIVITY_KINDS and n.id not in space.fired_nodes
    )
    if not dead:
        return PropertyResult(PROP_NO_DEAD_ACTIVITIES, True)
    return PropertyResult(
        PROP_NO_DEAD_ACTIVITIES,
        False,
        (Violation(KIND_DEAD_ACTIVITY, tuple(dead)),),
    )


def _coreachable(space: StateSpace) -> np.ndarray:
    n = space.state_count
    coreach = np.zeros(n, dtype=bool)
    if not space.terminals:
        return coreach
    if n <= _SMALL_SPACE:
        rpreds: dict[int, list[int]] = {}
        for i in range(n):
            for _, j in space.raw_edges(i):
                rpreds.setdefault(j, []).append(i)
        work = list(space.terminals)
        for t in work:
            coreach[t] = True
        while work:
            j = work.pop()
            for p in rpreds.get(j, ()):
                if not coreach[p]:
                    coreach[p] = True
                    work.append(p)
        return coreach

    starts, targets, _ = space.edge_arrays()
    counts = np.diff(starts)
    src = np.repeat(np.arange(n, dtype=np.int64), counts)
    order = np.argsort(targets, kind="stable")
    rsrc = src[order]
    rdst = targets[order]
    rstart = np.searchsorted(rdst, np.arange(n + 1, dtype=np.int64))
    frontier = np.asarray(space.terminals, dtype=np.int64)
    coreach[frontier] = True
    while frontier.size:
        s = rstart[frontier]
        c = rstart[frontier + 1] - s
        total = int(c.sum())
        if total == 0:
            break
        base = np.repeat(s, c)
        offsets = np.arange(total, dtype=np.int64) - np.repeat(
            np.concatenate(([0], np.cumsum(c)[:-1])), c
        )
        preds = rsrc[base + offsets]
        preds = preds[~coreach[preds]]
        if preds.size == 0:
            break
        coreach[preds] = True
        frontier = np.unique(preds)
    return coreach


def diagnose(
    model: CollaborationModel,
    limits: ExplorationLimits | None = None,
    with_fixes: bool = True,
) -> Diagnosis:
    """Full analysis: structural warnings, exploration, all three property
    checks, and quick-fix suggestions."""
    warnings = list(validate_structure(model))
    space, stats = explore(model, limits)
    results = (
        check_safeness(space),
        check_option_to_complete(model, space),
        check_dead_activities(model, space),
    )
    leftover = sorted(
        {mf for t in space.terminals for mf in space.marking(t).messages}
    )
    if leftover:
        warnings.append(
            StaticWarning(
                WarningKind.LEFTOVER_MESSAGES,
                tuple(leftover),
                "messages left pending in a terminal state",
            )
        )
    diagnosis = Diagnosis(results=results, stats=stats, warnings=tuple(warnings))
    if with_fixes:
        from .quickfix import suggest_fixes

        diagnosis.quick_fixes = tuple(suggest_fixes(model, diagnosis))
    return diagnosis
