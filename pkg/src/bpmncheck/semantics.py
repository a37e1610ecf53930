"""Token-game execution semantics for collaboration models.

Tokens live on sequence flows, never inside nodes; executing a node is one
atomic step that consumes and produces tokens (and messages, for the
message-aware kinds). Message channels are unordered, unbounded counters
per message flow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotEnabledError
from .ir import CollaborationModel, FlowNode, NodeKind


class Marking:
    """Token counts per sequence flow plus pending messages per message flow.

    Zero entries are dropped, so equal markings have equal canonical
    encodings. Treat instances as immutable: every operation returns a new
    marking.
    """

    __slots__ = ("tokens", "messages", "_key")

    def __init__(self, tokens=None, messages=None):
        self.tokens = {f: int(c) for f, c in dict(tokens or {}).items() if c}
        self.messages = {f: int(c) for f, c in dict(messages or {}).items() if c}
        if any(c < 0 for c in self.tokens.values()) or any(
            c < 0 for c in self.messages.values()
        ):
            raise ValueError("negative token or message count")
        self._key = (
            tuple(sorted(self.tokens.items())),
            tuple(sorted(self.messages.items())),
        )

    def canonical(self):
        """Sorted (id, count) pairs over nonzero entries; the dedupe key."""
        return self._key

    def __eq__(self, other):
        return isinstance(other, Marking) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        parts = [f"{f}:{c}" for f, c in self._key[0]]
        parts += [f"msg {f}:{c}" for f, c in self._key[1]]
        return "Marking({})".format(", ".join(parts) or "empty")


@dataclass(frozen=True)
class Transition:
    """One atomic firing: the node plus the flow multisets it moves."""

    fired_node: str
    consumed_seq: tuple[str, ...] = ()
    produced_seq: tuple[str, ...] = ()
    consumed_msg: tuple[str, ...] = ()
    produced_msg: tuple[str, ...] = ()
    chosen_event: str | None = None

    def sort_key(self):
        return (
            self.fired_node,
            self.consumed_seq,
            self.produced_seq,
            self.consumed_msg,
            self.chosen_event or "",
        )


def initial_marking(model: CollaborationModel) -> Marking:
    """One token on each outgoing flow of each plain (none) start event."""
    tokens: dict[str, int] = {}
    for p in model.processes:
        for node in p.nodes:
            if node.kind is NodeKind.NONE_START:
                for f in model.outgoing[node.id]:
                    tokens[f.id] = tokens.get(f.id, 0) + 1
    return Marking(tokens)


def enabled_transitions(model: CollaborationModel, marking: Marking) -> list[Transition]:
    """All firings enabled at ``marking``, in canonical order."""
    found: list[Transition] = []
    for p in model.processes:
        for node in p.nodes:
            found.extend(_node_transitions(model, node, marking))
    found.sort(key=Transition.sort_key)
    return found


def _node_transitions(model, node: FlowNode, m: Marking):
    kind = node.kind
    tokens = m.tokens
    messages = m.messages
    ins = model.incoming[node.id]
    outs = tuple(sorted(f.id for f in model.outgoing[node.id]))

    if kind in (NodeKind.TASK, NodeKind.SEND_TASK, NodeKind.MESSAGE_THROW):
        produced_msg = ()
        if kind is not NodeKind.TASK:
            produced_msg = tuple(sorted(f.id for f in model.outgoing_messages[node.id]))
        for f in ins:
            if tokens.get(f.id, 0) >= 1:
                yield Transition(node.id, (f.id,), outs, (), produced_msg)

    elif kind in (NodeKind.RECEIVE_TASK, NodeKind.MESSAGE_CATCH):
        for f in ins:
            if tokens.get(f.id, 0) < 1:
                continue
            for mf in model.incoming_messages[node.id]:
                if messages.get(mf.id, 0) >= 1:
                    yield Transition(node.id, (f.id,), outs, (mf.id,), ())

    elif kind is NodeKind.EXCLUSIVE_GATEWAY:
        for f in ins:
            if tokens.get(f.id, 0) >= 1:
                for g in model.outgoing[node.id]:
                    yield Transition(node.id, (f.id,), (g.id,), (), ())

    elif kind is NodeKind.PARALLEL_GATEWAY:
        if ins and all(tokens.get(f.id, 0) >= 1 for f in ins):
            consumed = tuple(sorted(f.id for f in ins))
            yield Transition(node.id, consumed, outs, (), ())

    elif kind is NodeKind.EVENT_BASED_GATEWAY:
        for f in ins:
            if tokens.get(f.id, 0) < 1:
                continue
            for g in model.outgoing[node.id]:
                catch = model.nodes_by_id[g.target]
                catch_outs = tuple(sorted(x.id for x in model.outgoing[catch.id]))
                for mf in model.incoming_messages[catch.id]:
                    if messages.get(mf.id, 0) >= 1:
                        yield Transition(
                            node.id, (f.id,), catch_outs, (mf.id,), (), chosen_event=catch.id
                        )

    elif kind in (NodeKind.NONE_END, NodeKind.MESSAGE_END, NodeKind.TERMINATE_END):
        produced_msg = ()
        if kind is NodeKind.MESSAGE_END:
            produced_msg = tuple(sorted(f.id for f in model.outgoing_messages[node.id]))
        for f in ins:
            if tokens.get(f.id, 0) >= 1:
                yield Transition(node.id, (f.id,), (), (), produced_msg)

    elif kind is NodeKind.MESSAGE_START:
        for mf in model.incoming_messages[node.id]:
            if messages.get(mf.id, 0) >= 1:
                yield Transition(node.id, (), outs, (mf.id,), ())

    # NodeKind.NONE_START never fires: the initial marking already consumed it.


def fire(model: CollaborationModel, marking: Marking, transition: Transition) -> Marking:
    """Apply one enabled transition; the input marking is left unchanged."""
    if transition not in enabled_transitions(model, marking):
        raise NotEnabledError(f"{transition.fired_node} is not enabled at {marking}")
    tokens = dict(marking.tokens)
    messages = dict(marking.messages)
    for f in transition.consumed_seq:
        tokens[f] = tokens.get(f, 0) - 1
    for f in transition.consumed_msg:
        messages[f] = messages.get(f, 0) - 1
    node = model.nodes_by_id[transition.fired_node]
    if node.kind is NodeKind.TERMINATE_END:
        # Terminate clears every remaining token of its own process.
        for fid in model.process_flow_ids(node.process):
            tokens.pop(fid, None)
    for f in transition.produced_seq:
        tokens[f] = tokens.get(f, 0) + 1
    for f in transition.produced_msg:
        messages[f] = messages.get(f, 0) + 1
    return Marking(tokens, messages)


def is_terminal(model: CollaborationModel, marking: Marking) -> bool:
    """No sequence flow holds a token; pending messages do not block this."""
    return not marking.tokens
