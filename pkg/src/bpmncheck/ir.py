"""Graph-shaped intermediate representation of BPMN collaboration models.

The IR keeps only what the token-game semantics needs: flow nodes of the
supported kinds, sequence flows, and message flows, grouped into processes
(pools). Values are immutable; edits produce new models.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property

from .errors import DanglingReferenceError, InvalidModelError


class NodeKind(str, Enum):
    NONE_START = "noneStartEvent"
    MESSAGE_START = "messageStartEvent"
    TASK = "task"
    SEND_TASK = "sendTask"
    RECEIVE_TASK = "receiveTask"
    EXCLUSIVE_GATEWAY = "exclusiveGateway"
    PARALLEL_GATEWAY = "parallelGateway"
    EVENT_BASED_GATEWAY = "eventBasedGateway"
    MESSAGE_CATCH = "intermediateMessageCatch"
    MESSAGE_THROW = "intermediateMessageThrow"
    NONE_END = "noneEndEvent"
    MESSAGE_END = "messageEndEvent"
    TERMINATE_END = "terminateEndEvent"


START_KINDS = frozenset({NodeKind.NONE_START, NodeKind.MESSAGE_START})
END_KINDS = frozenset({NodeKind.NONE_END, NodeKind.MESSAGE_END, NodeKind.TERMINATE_END})
GATEWAY_KINDS = frozenset(
    {NodeKind.EXCLUSIVE_GATEWAY, NodeKind.PARALLEL_GATEWAY, NodeKind.EVENT_BASED_GATEWAY}
)
ACTIVITY_KINDS = frozenset({NodeKind.TASK, NodeKind.SEND_TASK, NodeKind.RECEIVE_TASK})
# Legal endpoints of message flows.
MESSAGE_SOURCE_KINDS = frozenset(
    {NodeKind.SEND_TASK, NodeKind.MESSAGE_THROW, NodeKind.MESSAGE_END}
)
MESSAGE_TARGET_KINDS = frozenset(
    {NodeKind.RECEIVE_TASK, NodeKind.MESSAGE_CATCH, NodeKind.MESSAGE_START}
)
# Nodes that block waiting for a message (starvation classification).
MESSAGE_WAIT_KINDS = frozenset(
    {NodeKind.RECEIVE_TASK, NodeKind.MESSAGE_CATCH, NodeKind.EVENT_BASED_GATEWAY}
)
# Kinds a catch node reachable from an event-based gateway may have.
EVENT_GATEWAY_TARGET_KINDS = frozenset({NodeKind.MESSAGE_CATCH, NodeKind.RECEIVE_TASK})


@dataclass(frozen=True)
class FlowNode:
    id: str
    kind: NodeKind
    process: str
    name: str | None = None


@dataclass(frozen=True)
class SequenceFlow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class MessageFlow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Process:
    id: str
    name: str | None
    nodes: tuple[FlowNode, ...]


@dataclass(frozen=True, eq=False)
class CollaborationModel:
    """Immutable collaboration model plus derived lookup tables.

    Equality is structural (processes, nodes, flows in order) and ignores
    the retained source document and parse warnings, so a serialize/parse
    round trip compares equal to the original.
    """

    processes: tuple[Process, ...]
    sequence_flows: tuple[SequenceFlow, ...]
    message_flows: tuple[MessageFlow, ...] = ()
    source_document: str | None = field(default=None, repr=False)
    parse_warnings: tuple[str, ...] = ()

    def structural_key(self):
        # Order-insensitive: declaration order carries no meaning in the
        # token semantics and may legitimately change across an edit plus
        # serialize/parse round trip.
        return (
            tuple(
                (p.id, p.name, tuple(sorted(p.nodes, key=lambda n: n.id)))
                for p in sorted(self.processes, key=lambda p: p.id)
            ),
            tuple(sorted(self.sequence_flows, key=lambda f: f.id)),
            tuple(sorted(self.message_flows, key=lambda f: f.id)),
        )

    def __eq__(self, other):
        if not isinstance(other, CollaborationModel):
            return NotImplemented
        return self.structural_key() == other.structural_key()

    __hash__ = None

    @cached_property
    def nodes_by_id(self) -> dict[str, FlowNode]:
        return {n.id: n for p in self.processes for n in p.nodes}

    @cached_property
    def flows_by_id(self) -> dict[str, SequenceFlow]:
        return {f.id: f for f in self.sequence_flows}

    @cached_property
    def message_flows_by_id(self) -> dict[str, MessageFlow]:
        return {f.id: f for f in self.message_flows}

    @cached_property
    def outgoing(self) -> dict[str, tuple[SequenceFlow, ...]]:
        return self._flow_index(lambda f: f.source)

    @cached_property
    def incoming(self) -> dict[str, tuple[SequenceFlow, ...]]:
        return self._flow_index(lambda f: f.target)

    @cached_property
    def outgoing_messages(self) -> dict[str, tuple[MessageFlow, ...]]:
        out: dict[str, list[MessageFlow]] = {n: [] for n in self.nodes_by_id}
        for f in self.message_flows:
            out[f.source].append(f)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def incoming_messages(self) -> dict[str, tuple[MessageFlow, ...]]:
        out: dict[str, list[MessageFlow]] = {n: [] for n in self.nodes_by_id}
        for f in self.message_flows:
            out[f.target].append(f)
        return {k: tuple(v) for k, v in out.items()}

    def _flow_index(self, end) -> dict[str, tuple[SequenceFlow, ...]]:
        out: dict[str, list[SequenceFlow]] = {n: [] for n in self.nodes_by_id}
        for f in self.sequence_flows:
            key = end(f)
            if key in out:
                out[key].append(f)
        return {k: tuple(v) for k, v in out.items()}

    def process_of(self, node_id: str) -> str:
        return self.nodes_by_id[node_id].process

    def process_flow_ids(self, process_id: str) -> tuple[str, ...]:
        by_id = self.nodes_by_id
        return tuple(
            f.id for f in self.sequence_flows if by_id[f.source].process == process_id
        )

    def with_processes(self, processes: tuple[Process, ...]) -> "CollaborationModel":
        return replace(self, processes=processes)


def check_invariants(model: CollaborationModel) -> None:
    """Raise if the model violates a structural invariant.

    Run after every parse and after every quick-fix application.
    """
    seen: set[str] = set()
    for p in model.processes:
        _claim_id(seen, p.id)
        for n in p.nodes:
            _claim_id(seen, n.id)
            if n.process != p.id:
                raise InvalidModelError(f"node {n.id} owned by {n.process}, listed under {p.id}")
    for f in list(model.sequence_flows) + list(model.message_flows):
        _claim_id(seen, f.id)

    nodes = model.nodes_by_id
    for f in model.sequence_flows:
        for end in (f.source, f.target):
            if end not in nodes:
                raise DanglingReferenceError(f"sequence flow {f.id} references missing node {end}")
        if nodes[f.source].process != nodes[f.target].process:
            raise InvalidModelError(f"sequence flow {f.id} crosses process boundaries")
    for f in model.message_flows:
        for end in (f.source, f.target):
            if end not in nodes:
                raise DanglingReferenceError(f"message flow {f.id} references missing node {end}")
        if nodes[f.source].process == nodes[f.target].process:
            raise InvalidModelError(f"message flow {f.id} must connect different processes")
        if nodes[f.source].kind not in MESSAGE_SOURCE_KINDS:
            raise InvalidModelError(
                f"message flow {f.id} starts at {nodes[f.source].kind.value} {f.source}"
            )
        if nodes[f.target].kind not in MESSAGE_TARGET_KINDS:
            raise InvalidModelError(
                f"message flow {f.id} ends at {nodes[f.target].kind.value} {f.target}"
            )

    for node in nodes.values():
        if node.kind in START_KINDS and model.incoming[node.id]:
            raise InvalidModelError(f"start event {node.id} has incoming sequence flows")
        if node.kind in END_KINDS and model.outgoing[node.id]:
            raise InvalidModelError(f"end event {node.id} has outgoing sequence flows")
        if node.kind is NodeKind.EVENT_BASED_GATEWAY:
            for f in model.outgoing[node.id]:
                target = nodes[f.target]
                if target.kind not in EVENT_GATEWAY_TARGET_KINDS:
                    raise InvalidModelError(
                        f"event-based gateway {node.id} leads to {target.kind.value} {f.target}"
                    )


def _claim_id(seen: set[str], element_id: str) -> None:
    if not element_id:
        raise InvalidModelError("empty element id")
    if element_id in seen:
        raise InvalidModelError(f"duplicate element id {element_id}")
    seen.add(element_id)


class WarningKind(str, Enum):
    RECEIVE_WITHOUT_MESSAGE_FLOW = "ReceiveWithoutMessageFlow"
    REUSED_END_EVENT = "ReusedEndEvent"
    DISCONNECTED_NODE = "DisconnectedNode"
    GATEWAY_SINGLE_IN_OUT = "GatewayWithSingleInAndOut"
    NO_START_EVENT = "NoStartEvent"
    # Runtime note: pending messages left over in a terminal state.
    LEFTOVER_MESSAGES = "LeftoverMessages"


@dataclass(frozen=True)
class StaticWarning:
    kind: WarningKind
    elements: tuple[str, ...]
    message: str


def validate_structure(model: CollaborationModel) -> list[StaticWarning]:
    """Non-fatal structural checks; feeds the quick-fix pattern catalog."""
    warnings: list[StaticWarning] = []
    for p in model.processes:
        for node in p.nodes:
            n_in = len(model.incoming[node.id])
            n_out = len(model.outgoing[node.id])
            if (
                node.kind in MESSAGE_TARGET_KINDS
                and not model.incoming_messages[node.id]
            ):
                warnings.append(
                    StaticWarning(
                        WarningKind.RECEIVE_WITHOUT_MESSAGE_FLOW,
                        (node.id,),
                        f"{node.kind.value} {node.id} has no incoming message flow",
                    )
                )
            if node.kind in END_KINDS and n_in >= 2:
                warnings.append(
                    StaticWarning(
                        WarningKind.REUSED_END_EVENT,
                        (node.id,),
                        f"end event {node.id} has {n_in} incoming sequence flows",
                    )
                )
            if n_in == 0 and n_out == 0:
                warnings.append(
                    StaticWarning(
                        WarningKind.DISCONNECTED_NODE,
                        (node.id,),
                        f"{node.kind.value} {node.id} has no sequence flows",
                    )
                )
            if node.kind in GATEWAY_KINDS and n_in == 1 and n_out == 1:
                warnings.append(
                    StaticWarning(
                        WarningKind.GATEWAY_SINGLE_IN_OUT,
                        (node.id,),
                        f"gateway {node.id} has a single incoming and outgoing flow",
                    )
                )
    has_start = any(
        n.kind in START_KINDS for p in model.processes for n in p.nodes
    )
    if not has_start:
        warnings.append(
            StaticWarning(
                WarningKind.NO_START_EVENT, (), "no process contains a start event"
            )
        )
    return warnings
