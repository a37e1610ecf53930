"""Synthetic model families for benchmarking and stress tests.

Two families: parallel-branch models whose state space grows exponentially
(reachable markings = (L+1)^n + 3 for n branches of length L), and a
growing sequence of task triples interleaved with two-branch blocks that
stays sound and safe at every size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import CollaborationModel, FlowNode, NodeKind, Process, SequenceFlow


@dataclass(frozen=True)
class BranchParams:
    branches: int
    branch_length: int

    def __post_init__(self):
        if self.branches < 1:
            raise ValueError("branches must be >= 1")
        if self.branch_length < 1:
            raise ValueError("branch_length must be >= 1")

    def expected_states(self) -> int:
        return (self.branch_length + 1) ** self.branches + 3


def gen_parallel_branches(params: BranchParams) -> CollaborationModel:
    """start -> AND-split -> n branches of L tasks each -> AND-join -> end."""
    n, length = params.branches, params.branch_length
    pid = "proc"
    nodes = [
        FlowNode("start", NodeKind.NONE_START, pid, "Start"),
        FlowNode("split", NodeKind.PARALLEL_GATEWAY, pid),
    ]
    flows = [SequenceFlow("f_start", "start", "split")]
    for b in range(1, n + 1):
        prev = "split"
        for k in range(1, length + 1):
            tid = f"t{b}_{k}"
            nodes.append(FlowNode(tid, NodeKind.TASK, pid, f"Task {b}.{k}"))
            flows.append(SequenceFlow(f"f{b}_{k - 1}", prev, tid))
            prev = tid
        flows.append(SequenceFlow(f"f{b}_{length}", prev, "join"))
    nodes.append(FlowNode("join", NodeKind.PARALLEL_GATEWAY, pid))
    nodes.append(FlowNode("end", NodeKind.NONE_END, pid, "End"))
    flows.append(SequenceFlow("f_end", "join", "end"))
    return CollaborationModel(
        processes=(Process(pid, f"branches {n}x{length}", tuple(nodes)),),
        sequence_flows=tuple(flows),
    )


def gen_growing_sequence(target_elements: int) -> CollaborationModel:
    """Alternating task triples and two-branch blocks up to a node budget.

    Blocks alternate between exclusive and parallel gateways, two branches
    with one task each. Pieces are appended while the flow-node count stays
    within ``target_elements``; the result is the largest series member not
    exceeding it.
    """
    if target_elements < 5:
        raise ValueError("target_elements must be >= 5")
    pid = "proc"
    nodes = [FlowNode("start", NodeKind.NONE_START, pid, "Start")]
    flows: list[SequenceFlow] = []
    counter = 0

    def next_id(prefix: str) -> str:
        nonlocal counter
        counter += 1
        return f"{prefix}{counter}"

    prev = "start"
    count = 2  # start + end
    parallel_turn = False
    while True:
        if count + 3 > target_elements:
            break
        for _ in range(3):
            tid = next_id("t")
            nodes.append(FlowNode(tid, NodeKind.TASK, pid, tid))
            flows.append(SequenceFlow(next_id("f"), prev, tid))
            prev = tid
        count += 3
        if count + 4 > target_elements:
            break
        gkind = (
            NodeKind.PARALLEL_GATEWAY if parallel_turn else NodeKind.EXCLUSIVE_GATEWAY
        )
        parallel_turn = not parallel_turn
        split = next_id("g")
        join = next_id("g")
        nodes.append(FlowNode(split, gkind, pid))
        branch_tasks = []
        for _ in range(2):
            tid = next_id("t")
            nodes.append(FlowNode(tid, NodeKind.TASK, pid, tid))
            branch_tasks.append(tid)
            flows.append(SequenceFlow(next_id("f"), split, tid))
        nodes.append(FlowNode(join, gkind, pid))
        for tid in branch_tasks:
            flows.append(SequenceFlow(next_id("f"), tid, join))
        flows.append(SequenceFlow(next_id("f"), prev, split))
        prev = join
        count += 4
    nodes.append(FlowNode("end", NodeKind.NONE_END, pid, "End"))
    flows.append(SequenceFlow("f_end", prev, "end"))
    return CollaborationModel(
        processes=(Process(pid, f"growing {target_elements}", tuple(nodes)),),
        sequence_flows=tuple(flows),
    )


def node_count(model: CollaborationModel) -> int:
    return sum(len(p.nodes) for p in model.processes)
