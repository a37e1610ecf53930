"""Pattern-based, revertible model repairs for detected control-flow errors.

Each fix is an ordered script of edit operations; every operation knows its
inverse, so applying a script and then its reversed inverses is the identity
on the IR (command pattern). The pattern catalog is an extension point:
new patterns register a matcher without touching the analysis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from enum import Enum

from .errors import StaleFixError
from .ir import (
    MESSAGE_SOURCE_KINDS,
    CollaborationModel,
    FlowNode,
    MessageFlow,
    NodeKind,
    Process,
    SequenceFlow,
    WarningKind,
    check_invariants,
)
from .properties import (
    KIND_DEADLOCK,
    KIND_STARVATION,
    KIND_UNSAFE,
    PROP_OPTION_TO_COMPLETE,
    PROP_SAFENESS,
    Diagnosis,
)


# ---------------------------------------------------------------------------
# Edit operations


@dataclass(frozen=True)
class ReplaceNodeKind:
    target: str
    new_kind: NodeKind
    old_kind: NodeKind

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        node = model.nodes_by_id.get(self.target)
        if node is None or node.kind is not self.old_kind:
            raise StaleFixError(f"node {self.target} is not a {self.old_kind.value} anymore")
        return _swap_node(model, replace(node, kind=self.new_kind))

    def inverse(self) -> "ReplaceNodeKind":
        return ReplaceNodeKind(self.target, self.old_kind, self.new_kind)


@dataclass(frozen=True)
class AddNode:
    node: FlowNode

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        if self.node.id in model.nodes_by_id:
            raise StaleFixError(f"node id {self.node.id} already exists")
        procs = []
        found = False
        for p in model.processes:
            if p.id == self.node.process:
                procs.append(Process(p.id, p.name, p.nodes + (self.node,)))
                found = True
            else:
                procs.append(p)
        if not found:
            raise StaleFixError(f"process {self.node.process} not found")
        return model.with_processes(tuple(procs))

    def inverse(self) -> "RemoveNode":
        return RemoveNode(self.node)


@dataclass(frozen=True)
class RemoveNode:
    node: FlowNode

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        existing = model.nodes_by_id.get(self.node.id)
        if existing != self.node:
            raise StaleFixError(f"node {self.node.id} changed or vanished")
        if model.incoming[self.node.id] or model.outgoing[self.node.id]:
            raise StaleFixError(f"node {self.node.id} still has sequence flows")
        procs = tuple(
            Process(p.id, p.name, tuple(n for n in p.nodes if n.id != self.node.id))
            for p in model.processes
        )
        return model.with_processes(procs)

    def inverse(self) -> AddNode:
        return AddNode(self.node)


@dataclass(frozen=True)
class AddSequenceFlow:
    flow: SequenceFlow

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        if self.flow.id in model.flows_by_id:
            raise StaleFixError(f"sequence flow id {self.flow.id} already exists")
        return replace(model, sequence_flows=model.sequence_flows + (self.flow,))

    def inverse(self) -> "RemoveSequenceFlow":
        return RemoveSequenceFlow(self.flow)


@dataclass(frozen=True)
class RemoveSequenceFlow:
    flow: SequenceFlow

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        if model.flows_by_id.get(self.flow.id) != self.flow:
            raise StaleFixError(f"sequence flow {self.flow.id} changed or vanished")
        return replace(
            model,
            sequence_flows=tuple(f for f in model.sequence_flows if f.id != self.flow.id),
        )

    def inverse(self) -> AddSequenceFlow:
        return AddSequenceFlow(self.flow)


@dataclass(frozen=True)
class AddMessageFlow:
    flow: MessageFlow

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        if self.flow.id in model.message_flows_by_id:
            raise StaleFixError(f"message flow id {self.flow.id} already exists")
        return replace(model, message_flows=model.message_flows + (self.flow,))

    def inverse(self) -> "RemoveMessageFlow":
        return RemoveMessageFlow(self.flow)


@dataclass(frozen=True)
class RemoveMessageFlow:
    flow: MessageFlow

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        if model.message_flows_by_id.get(self.flow.id) != self.flow:
            raise StaleFixError(f"message flow {self.flow.id} changed or vanished")
        return replace(
            model,
            message_flows=tuple(f for f in model.message_flows if f.id != self.flow.id),
        )

    def inverse(self) -> AddMessageFlow:
        return AddMessageFlow(self.flow)


@dataclass(frozen=True)
class RetargetFlow:
    flow_id: str
    new_target: str
    old_target: str

    def apply(self, model: CollaborationModel) -> CollaborationModel:
        flow = model.flows_by_id.get(self.flow_id)
        if flow is not None:
            if flow.target != self.old_target:
                raise StaleFixError(f"flow {self.flow_id} no longer targets {self.old_target}")
            flows = tuple(
                replace(f, target=self.new_target) if f.id == self.flow_id else f
                for f in model.sequence_flows
            )
            return replace(model, sequence_flows=flows)
        mflow = model.message_flows_by_id.get(self.flow_id)
        if mflow is None or mflow.target != self.old_target:
            raise StaleFixError(f"flow {self.flow_id} changed or vanished")
        mflows = tuple(
            replace(f, target=self.new_target) if f.id == self.flow_id else f
            for f in model.message_flows
        )
        return replace(model, message_flows=mflows)

    def inverse(self) -> "RetargetFlow":
        return RetargetFlow(self.flow_id, self.old_target, self.new_target)


def _swap_node(model: CollaborationModel, node: FlowNode) -> CollaborationModel:
    procs = tuple(
        Process(p.id, p.name, tuple(node if n.id == node.id else n for n in p.nodes))
        for p in model.processes
    )
    return model.with_processes(procs)


# ---------------------------------------------------------------------------
# Quick fixes


class FixKind(str, Enum):
    CONVERT_PARALLEL_JOIN = "ConvertParallelJoinToExclusive"
    CONVERT_EXCLUSIVE_JOIN = "ConvertExclusiveJoinToParallel"
    SPLIT_REUSED_END = "SplitReusedEndEvent"
    ADD_MESSAGE_FLOW = "AddMissingMessageFlow"
    CONVERT_RECEIVE = "ConvertReceiveToTask"


@dataclass(frozen=True)
class QuickFix:
    id: str
    kind: FixKind
    targets: tuple[str, ...]
    description: str
    script: tuple

    def inverse_script(self) -> tuple:
        return tuple(op.inverse() for op in reversed(self.script))


def apply_fix(model: CollaborationModel, fix: QuickFix) -> CollaborationModel:
    """Apply a fix script; the input model is unchanged.

    Re-diagnosis is the caller's job: a fix can have side effects up to and
    including introducing a different control-flow error.
    """
    edited = model
    for op in fix.script:
        edited = op.apply(edited)
    check_invariants(edited)
    return edited


def undo_fix(model: CollaborationModel, fix: QuickFix) -> CollaborationModel:
    """Revert a previously applied fix; undo(apply(m, f), f) == m on the IR."""
    reverted = model
    for op in fix.inverse_script():
        reverted = op.apply(reverted)
    check_invariants(reverted)
    return reverted


# ---------------------------------------------------------------------------
# Pattern catalog


def suggest_fixes(model: CollaborationModel, diagnosis: Diagnosis) -> list[QuickFix]:
    """Match the registered repair patterns against a diagnosis.

    Deterministic: fixes are ordered by (pattern number, target id). Only
    violations or warnings whose anchor matches a pattern produce fixes.
    """
    fixes: list[QuickFix] = []
    for _, matcher in sorted(_PATTERNS, key=lambda x: x[0]):
        fixes.extend(matcher(model, diagnosis))
    return fixes


def register_pattern(number: int, matcher) -> None:
    """Extension point: matcher(model, diagnosis) -> list[QuickFix]."""
    _PATTERNS.append((number, matcher))


def _upstream_nodes(model: CollaborationModel, start: str) -> set[str]:
    seen: set[str] = set()
    queue = deque([start])
    while queue:
        nid = queue.popleft()
        for f in model.incoming[nid]:
            if f.source not in seen:
                seen.add(f.source)
                queue.append(f.source)
    return seen


def _reaches(model: CollaborationModel, start: str, goal: str) -> bool:
    if start == goal:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        nid = queue.popleft()
        for f in model.outgoing[nid]:
            if f.target == goal:
                return True
            if f.target not in seen:
                seen.add(f.target)
                queue.append(f.target)
    return False


def _split_feeding_join(
    model: CollaborationModel, join: str, split_kind: NodeKind
) -> bool:
    """An upstream split of the given kind with >= 2 paths into the join."""
    for cand in _upstream_nodes(model, join):
        node = model.nodes_by_id[cand]
        if node.kind is not split_kind or len(model.outgoing[cand]) < 2:
            continue
        paths = sum(
            1 for f in model.outgoing[cand] if _reaches(model, f.target, join)
        )
        if paths >= 2:
            return True
    return False


def _match_parallel_join_deadlocks(model, diagnosis):
    fixes = []
    seen: set[str] = set()
    for v in diagnosis.result_for(PROP_OPTION_TO_COMPLETE).violations:
        if v.kind != KIND_DEADLOCK:
            continue
        for el in v.elements:
            node = model.nodes_by_id.get(el)
            if (
                node is None
                or node.kind is not NodeKind.PARALLEL_GATEWAY
                or len(model.incoming[el]) < 2
                or el in seen
            ):
                continue
            if not _split_feeding_join(model, el, NodeKind.EXCLUSIVE_GATEWAY):
                continue
            seen.add(el)
            fixes.append(
                QuickFix(
                    id=f"p1:{el}",
                    kind=FixKind.CONVERT_PARALLEL_JOIN,
                    targets=(el,),
                    description=(
                        f"Convert parallel join '{el}' to an exclusive gateway "
                        "so a single branch is enough to continue"
                    ),
                    script=(
                        ReplaceNodeKind(el, NodeKind.EXCLUSIVE_GATEWAY, NodeKind.PARALLEL_GATEWAY),
                    ),
                )
            )
    fixes.sort(key=lambda f: f.targets)
    return fixes


def _match_unsafe_exclusive_joins(model, diagnosis):
    fixes = []
    seen: set[str] = set()
    for v in diagnosis.result_for(PROP_SAFENESS).violations:
        if v.kind != KIND_UNSAFE:
            continue
        for fid in v.elements:
            flow = model.flows_by_id.get(fid)
            if flow is None:
                continue
            g = flow.source
            node = model.nodes_by_id[g]
            if (
                node.kind is not NodeKind.EXCLUSIVE_GATEWAY
                or len(model.incoming[g]) < 2
                or g in seen
            ):
                continue
            if not _split_feeding_join(model, g, NodeKind.PARALLEL_GATEWAY):
                continue
            seen.add(g)
            fixes.append(
                QuickFix(
                    id=f"p2:{g}",
                    kind=FixKind.CONVERT_EXCLUSIVE_JOIN,
                    targets=(g,),
                    description=(
                        f"Convert exclusive join '{g}' to a parallel gateway "
                        "to synchronize the concurrent branches"
                    ),
                    script=(
                        ReplaceNodeKind(g, NodeKind.PARALLEL_GATEWAY, NodeKind.EXCLUSIVE_GATEWAY),
                    ),
                )
            )
    fixes.sort(key=lambda f: f.targets)
    return fixes


def _trace_touches(model, violation, end_id: str) -> bool:
    if end_id in violation.elements:
        return True
    if violation.trace is None:
        return False
    in_flows = {f.id for f in model.incoming[end_id]}
    for step in violation.trace:
        t = step.transition
        if t.fired_node == end_id:
            return True
        if in_flows.intersection(t.consumed_seq) or in_flows.intersection(t.produced_seq):
            return True
    return False


def _match_reused_end_events(model, diagnosis):
    fixes = []
    reused = [
        w.elements[0]
        for w in diagnosis.warnings
        if w.kind is WarningKind.REUSED_END_EVENT
    ]
    all_violations = diagnosis.violations
    for end_id in sorted(reused):
        if not any(_trace_touches(model, v, end_id) for v in all_violations):
            continue
        node = model.nodes_by_id[end_id]
        incoming = sorted(model.incoming[end_id], key=lambda f: f.id)
        script: list = []
        targets = [end_id]
        existing = set(model.nodes_by_id)
        for k, flow in enumerate(incoming[1:], start=2):
            new_id = _fresh_id(existing, f"{end_id}_{k}")
            existing.add(new_id)
            new_end = FlowNode(new_id, node.kind, node.process, node.name)
            script.append(AddNode(new_end))
            script.append(RetargetFlow(flow.id, new_id, end_id))
        fixes.append(
            QuickFix(
                id=f"p3:{end_id}",
                kind=FixKind.SPLIT_REUSED_END,
                targets=tuple(targets),
                description=f"Give each incoming flow of end event '{end_id}' its own end event",
                script=tuple(script),
            )
        )
    return fixes


def _match_starving_receivers(model, diagnosis):
    fixes = []
    seen: set[str] = set()
    anchors: list[str] = []
    for v in diagnosis.result_for(PROP_OPTION_TO_COMPLETE).violations:
        if v.kind != KIND_STARVATION:
            continue
        for el in v.elements:
            node = model.nodes_by_id.get(el)
            if node is None or el in seen:
                continue
            seen.add(el)
            if node.kind is NodeKind.EVENT_BASED_GATEWAY:
                anchors.extend(
                    f.target
                    for f in model.outgoing[el]
                    if not model.incoming_messages[f.target]
                )
            elif not model.incoming_messages[el]:
                anchors.append(el)
    for r in sorted(set(anchors)):
        node = model.nodes_by_id[r]
        senders = sorted(
            n.id
            for p in model.processes
            if p.id != node.process
            for n in p.nodes
            if n.kind in MESSAGE_SOURCE_KINDS and not model.outgoing_messages[n.id]
        )
        if senders:
            existing = set(model.nodes_by_id) | set(model.flows_by_id) | set(
                model.message_flows_by_id
            )
            for s in senders:
                mf_id = _fresh_id(existing, f"mf_{s}_{r}")
                fixes.append(
                    QuickFix(
                        id=f"p4:{r}:{s}",
                        kind=FixKind.ADD_MESSAGE_FLOW,
                        targets=(r, s),
                        description=f"Add a message flow from '{s}' to '{r}' so the wait can be satisfied",
                        script=(AddMessageFlow(MessageFlow(mf_id, s, r)),),
                    )
                )
        elif node.kind in (NodeKind.RECEIVE_TASK, NodeKind.MESSAGE_CATCH):
            fixes.append(
                QuickFix(
                    id=f"p4:{r}",
                    kind=FixKind.CONVERT_RECEIVE,
                    targets=(r,),
                    description=f"Convert '{r}' to a plain task; no partner can message it",
                    script=(ReplaceNodeKind(r, NodeKind.TASK, node.kind),),
                )
            )
    return fixes


def _fresh_id(existing: set[str], base: str) -> str:
    if base not in existing:
        return base
    i = 2
    while f"{base}_{i}" in existing:
        i += 1
    return f"{base}_{i}"


_PATTERNS: list = [
    (1, _match_parallel_join_deadlocks),
    (2, _match_unsafe_exclusive_joins),
    (3, _match_reused_end_events),
    (4, _match_starving_receivers),
]
