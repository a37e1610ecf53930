"""Breadth-first construction of the deduplicated reachability graph.

Exploration runs on a compiled form of the model: flows map to positions in
a packed byte vector and every structurally possible firing becomes an index
template. The template list is derived by asking the public semantics for
the transitions enabled on an all-ones marking, so the fast path cannot
drift from the reference semantics. State spaces around 10^6 markings
explore in seconds; edges are stored as flat int arrays (CSR by BFS order).
"""

from __future__ import annotations

import time
from array import array
from collections import deque
from dataclasses import dataclass

import numpy as np

from .ir import CollaborationModel, NodeKind
from .semantics import Marking, Transition, enabled_transitions, initial_marking

BOUND_MAX_STATES = "MaxStates"
BOUND_TOKENS = "TokenBound"

# Markings are byte vectors, so per-place counts are capped at one byte.
_BYTE_MAX = 255


@dataclass(frozen=True)
class ExplorationLimits:
    max_states: int = 10_000_000
    max_tokens_per_place: int = 100

    def __post_init__(self):
        if self.max_states < 1:
            raise ValueError("max_states must be >= 1")
        if not 1 <= self.max_tokens_per_place <= _BYTE_MAX:
            raise ValueError(f"max_tokens_per_place must be in 1..{_BYTE_MAX}")


@dataclass
class ExplorationStats:
    state_count: int
    transition_count: int
    elapsed_us: int
    bound_hit: str | None = None


@dataclass(frozen=True)
class TraceStep:
    transition: Transition
    marking: Marking


@dataclass(frozen=True)
class Trace:
    steps: tuple[TraceStep, ...]

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


class _Engine:
    """Model compiled to flow positions and firing templates."""

    __slots__ = (
        "seq_ids",
        "msg_ids",
        "n_seq",
        "n_total",
        "pos",
        "transitions",
        "t_consume",
        "t_produce",
        "t_clear",
        "watch",
    )

    def __init__(self, model: CollaborationModel):
        self.seq_ids = sorted(f.id for f in model.sequence_flows)
        self.msg_ids = sorted(f.id for f in model.message_flows)
        self.n_seq = len(self.seq_ids)
        self.n_total = self.n_seq + len(self.msg_ids)
        self.pos = {fid: i for i, fid in enumerate(self.seq_ids)}
        for j, fid in enumerate(self.msg_ids):
            self.pos[fid] = self.n_seq + j

        ones = Marking(
            {fid: 1 for fid in self.seq_ids}, {fid: 1 for fid in self.msg_ids}
        )
        # Every structurally possible firing is enabled on the all-ones
        # marking, so this enumerates the full template set in canonical
        # order using the reference semantics.
        self.transitions = enabled_transitions(model, ones)
        pos = self.pos
        self.t_consume = []
        self.t_produce = []
        self.t_clear = []
        self.watch = [[] for _ in range(self.n_total)]
        for ti, t in enumerate(self.transitions):
            consume = tuple(pos[f] for f in t.consumed_seq) + tuple(
                pos[f] for f in t.consumed_msg
            )
            produce = tuple(pos[f] for f in t.produced_seq) + tuple(
                pos[f] for f in t.produced_msg
            )
            node = model.nodes_by_id[t.fired_node]
            clear = ()
            if node.kind is NodeKind.TERMINATE_END:
                clear = tuple(pos[f] for f in model.process_flow_ids(node.process))
            self.t_consume.append(consume)
            self.t_produce.append(produce)
            self.t_clear.append(clear)
            self.watch[consume[0]].append(ti)

    def encode(self, m: Marking) -> bytes:
        ba = bytearray(self.n_total)
        for f, c in m.tokens.items():
            ba[self.pos[f]] = c
        for f, c in m.messages.items():
            ba[self.pos[f]] = c
        return bytes(ba)

    def decode(self, key: bytes) -> Marking:
        n_seq = self.n_seq
        return Marking(
            {self.seq_ids[i]: key[i] for i in range(n_seq) if key[i]},
            {
                self.msg_ids[i - n_seq]: key[i]
                for i in range(n_seq, self.n_total)
                if key[i]
            },
        )


class _MarkingView:
    """Lazy sequence of decoded markings, index 0 = initial."""

    def __init__(self, space: "StateSpace"):
        self._space = space

    def __len__(self):
        return self._space.state_count

    def __getitem__(self, i):
        return self._space.marking(i)

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


class StateSpace:
    """Deduplicated reachability graph with first-discovery predecessors.

    The dedupe key is the packed byte encoding of a marking over the fixed
    flow order, which is canonical: equal markings encode identically.
    """

    def __init__(
        self,
        engine: _Engine,
        state_keys: list[bytes],
        key_index: dict[bytes, int],
        depth: array,
        pred_state: array,
        pred_template: array,
        edge_start: array,
        edge_template: array,
        edge_target: array,
        terminals: tuple[int, ...],
        fired_nodes: frozenset[str],
        unsafe_states: tuple[tuple[int, tuple[str, ...]], ...],
        bound_hit: str | None,
    ):
        self._engine = engine
        self._keys = state_keys
        self._index = key_index
        self._depth = depth
        self._pred_state = pred_state
        self._pred_template = pred_template
        self._edge_start = edge_start
        self._edge_template = edge_template
        self._edge_target = edge_target
        self.terminals = terminals
        self.fired_nodes = fired_nodes
        self.unsafe_states = unsafe_states
        self.bound_hit = bound_hit

    @property
    def state_count(self) -> int:
        return len(self._keys)

    @property
    def states(self) -> _MarkingView:
        return _MarkingView(self)

    def marking(self, i: int) -> Marking:
        return self._engine.decode(self._keys[i])

    def index_of(self, marking: Marking) -> int | None:
        return self._index.get(self._engine.encode(marking))

    def canonical_encodings(self) -> frozenset:
        return frozenset(self.marking(i).canonical() for i in range(self.state_count))

    def depth(self, i: int) -> int:
        return self._depth[i]

    def first_predecessor(self, i: int) -> tuple[int, Transition] | None:
        p = self._pred_state[i]
        if p < 0:
            return None
        return p, self._engine.transitions[self._pred_template[i]]

    def edges(self, i: int) -> list[tuple[Transition, int]]:
        lo, hi = self._edge_start[i], self._edge_start[i + 1]
        transitions = self._engine.transitions
        return [
            (transitions[self._edge_template[k]], self._edge_target[k])
            for k in range(lo, hi)
        ]

    def out_degree(self, i: int) -> int:
        return self._edge_start[i + 1] - self._edge_start[i]

    def successor_by_template(self, i: int, template: int) -> int:
        lo, hi = self._edge_start[i], self._edge_start[i + 1]
        for k in range(lo, hi):
            if self._edge_template[k] == template:
                return self._edge_target[k]
        raise KeyError(template)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(CSR row starts, edge targets, edge templates) as numpy arrays."""
        starts = np.frombuffer(self._edge_start, dtype=np.int64)
        targets = np.frombuffer(self._edge_target, dtype=np.int64)
        templates = np.frombuffer(self._edge_template, dtype=np.int64)
        return starts, targets, templates

    def transition_of_template(self, template: int) -> Transition:
        return self._engine.transitions[template]

    def raw_edges(self, i: int) -> list[tuple[int, int]]:
        lo, hi = self._edge_start[i], self._edge_start[i + 1]
        return [
            (self._edge_template[k], self._edge_target[k]) for k in range(lo, hi)
        ]


def explore(
    model: CollaborationModel, limits: ExplorationLimits | None = None
) -> tuple[StateSpace, ExplorationStats]:
    """Breadth-first reachability from the initial marking.

    Exhaustive unless a limit triggers, in which case the partial space is
    returned with ``bound_hit`` set and callers must downgrade verdicts that
    need exhaustiveness to "unknown".
    """
    if limits is None:
        limits = ExplorationLimits()
    t0 = time.perf_counter_ns()
    eng = _Engine(model)
    n_seq = eng.n_seq
    zero_seq = bytes(n_seq)
    cap = limits.max_tokens_per_place
    max_states = limits.max_states

    init = eng.encode(initial_marking(model))
    states: list[bytes] = [init]
    index: dict[bytes, int] = {init: 0}
    depth = array("q", (0,))
    pred_state = array("q", (-1,))
    pred_template = array("q", (-1,))
    edge_start = array("q", (0,))
    edge_template = array("q")
    edge_target = array("q")
    terminals: list[int] = []
    fired = bytearray(len(eng.transitions))
    unsafe_records: list[tuple[int, tuple[str, ...]]] = []
    unsafe_flows: set[str] = set()
    supports: deque = deque()
    supports.append(tuple(p for p, c in enumerate(init) if c))
    if init[:n_seq] == zero_seq:
        terminals.append(0)
    bound: str | None = None

    t_consume = eng.t_consume
    t_produce = eng.t_produce
    t_clear = eng.t_clear
    watch = eng.watch
    seq_ids = eng.seq_ids
    setdefault = index.setdefault
    add_state = states.append
    add_edge_t = edge_template.append
    add_edge_g = edge_target.append

    i = 0
    while i < len(states):
        s = states[i]
        sup = supports.popleft()
        cand: list[int] = []
        for p in sup:
            cand.extend(watch[p])
        if len(cand) > 1:
            cand.sort()
        child_depth = depth[i] + 1
        stop = False
        for t in cand:
            con = t_consume[t]
            enabled = True
            for p in con:
                if not s[p]:
                    enabled = False
                    break
            if not enabled:
                continue
            ba = bytearray(s)
            for p in con:
                ba[p] -= 1
            clr = t_clear[t]
            if clr:
                for p in clr:
                    ba[p] = 0
            prod = t_produce[t]
            over = False
            for p in prod:
                v = ba[p] + 1
                if v > cap:
                    over = True
                    break
                ba[p] = v
            if over:
                bound = BOUND_TOKENS
                stop = True
                break
            key = bytes(ba)
            n = len(states)
            j = setdefault(key, n)
            if j == n:
                if n >= max_states:
                    del index[key]
                    bound = BOUND_MAX_STATES
                    stop = True
                    break
                add_state(key)
                depth.append(child_depth)
                pred_state.append(i)
                pred_template.append(t)
                child_sup = set(sup)
                for p in con:
                    if not ba[p]:
                        child_sup.discard(p)
                for p in clr:
                    child_sup.discard(p)
                child_sup.update(prod)
                supports.append(tuple(child_sup))
                if key[:n_seq] == zero_seq:
                    terminals.append(n)
                fresh_unsafe = None
                for p in prod:
                    if p < n_seq and ba[p] >= 2:
                        fid = seq_ids[p]
                        if fid not in unsafe_flows:
                            unsafe_flows.add(fid)
                            if fresh_unsafe is None:
                                fresh_unsafe = [fid]
                            else:
                                fresh_unsafe.append(fid)
                if fresh_unsafe:
                    unsafe_records.append((n, tuple(fresh_unsafe)))
            fired[t] = 1
            add_edge_t(t)
            add_edge_g(j)
        edge_start.append(len(edge_template))
        if stop:
            break
        i += 1

    while len(edge_start) < len(states) + 1:
        edge_start.append(len(edge_template))

    fired_nodes = set()
    for ti, hit in enumerate(fired):
        if hit:
            t = eng.transitions[ti]
            fired_nodes.add(t.fired_node)
            if t.chosen_event:
                # Firing an event-based gateway also executes the chosen
                # catch node.
                fired_nodes.add(t.chosen_event)

    elapsed_us = (time.perf_counter_ns() - t0) // 1000
    space = StateSpace(
        eng,
        states,
        index,
        depth,
        pred_state,
        pred_template,
        edge_start,
        edge_template,
        edge_target,
        tuple(terminals),
        frozenset(fired_nodes),
        tuple(unsafe_records),
        bound,
    )
    stats = ExplorationStats(
        state_count=len(states),
        transition_count=len(edge_template),
        elapsed_us=elapsed_us,
        bound_hit=bound,
    )
    return space, stats


def shortest_trace(space: StateSpace, target: int) -> Trace:
    """Minimal firing sequence from the initial state to ``target``.

    Walks first-discovery predecessor links, so the length equals the BFS
    depth of the target state.
    """
    chain: list[tuple[int, int]] = []
    i = target
    while True:
        p = space._pred_state[i]
        if p < 0:
            break
        chain.append((space._pred_template[i], i))
        i = p
    chain.reverse()
    steps = tuple(
        TraceStep(space.transition_of_template(t), space.marking(j)) for t, j in chain
    )
    return Trace(steps)
