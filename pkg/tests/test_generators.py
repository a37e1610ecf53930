"""Synthetic model families: structure, state-count formula, soundness."""

from __future__ import annotations

import pytest

from bpmncheck import diagnose, explore, parse_bpmn, serialize_bpmn
from bpmncheck.generators import (
    BranchParams,
    gen_growing_sequence,
    gen_parallel_branches,
    node_count,
)


class TestParallelBranches:
    @pytest.mark.parametrize("n,length", [(1, 1), (3, 2), (5, 1), (2, 4)])
    def test_node_and_gateway_counts(self, n, length):
        model = gen_parallel_branches(BranchParams(n, length))
        assert node_count(model) == n * length + 4
        kinds = [node.kind.value for p in model.processes for node in p.nodes]
        assert kinds.count("parallelGateway") == 2
        assert kinds.count("task") == n * length

    @pytest.mark.parametrize(
        "n,length,states", [(1, 1, 5), (2, 2, 12), (3, 3, 67), (4, 2, 84)]
    )
    def test_state_count_formula(self, n, length, states):
        assert BranchParams(n, length).expected_states() == states
        _, stats = explore(gen_parallel_branches(BranchParams(n, length)))
        assert stats.state_count == states

    def test_sound_and_safe(self):
        diagnosis = diagnose(gen_parallel_branches(BranchParams(4, 3)))
        assert diagnosis.fulfilled

    def test_reparse_equality(self):
        model = gen_parallel_branches(BranchParams(3, 2))
        assert parse_bpmn(serialize_bpmn(model, diagram=True)) == model

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            BranchParams(0, 1)
        with pytest.raises(ValueError):
            BranchParams(3, 0)


class TestGrowingSequence:
    def test_smallest_member(self):
        model = gen_growing_sequence(5)
        assert node_count(model) == 5
        kinds = [n.kind.value for p in model.processes for n in p.nodes]
        assert kinds.count("task") == 3
        assert kinds.count("noneStartEvent") == 1
        assert kinds.count("noneEndEvent") == 1

    @pytest.mark.parametrize("target", [5, 9, 12, 40, 173, 400])
    def test_node_budget_respected(self, target):
        model = gen_growing_sequence(target)
        assert node_count(model) <= target
        # the next series member would overshoot the budget
        assert node_count(model) + 3 > target or node_count(model) + 4 > target

    def test_blocks_alternate(self):
        model = gen_growing_sequence(30)
        gateway_kinds = [
            n.kind.value
            for p in model.processes
            for n in p.nodes
            if n.kind.value.endswith("Gateway")
        ]
        # split+join pairs: exclusive, exclusive, parallel, parallel, ...
        assert gateway_kinds[:4] == [
            "exclusiveGateway",
            "exclusiveGateway",
            "parallelGateway",
            "parallelGateway",
        ]

    @pytest.mark.parametrize("target", [5, 26, 100, 500])
    def test_members_are_sound(self, target):
        diagnosis = diagnose(gen_growing_sequence(target))
        assert diagnosis.fulfilled

    def test_reparse_equality(self):
        model = gen_growing_sequence(60)
        assert parse_bpmn(serialize_bpmn(model, diagram=True)) == model

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            gen_growing_sequence(4)
