"""Reachability graph construction, traces, limits, and the naive oracle."""

from __future__ import annotations

import pytest

import fixtures
from bpmncheck import (
    ExplorationLimits,
    Marking,
    explore,
    parse_bpmn,
    shortest_trace,
)
from bpmncheck.explorer import BOUND_MAX_STATES, BOUND_TOKENS
from bpmncheck.generators import BranchParams, gen_parallel_branches
from oracles import canonical_set

# Pool A pumps messages in a loop; pool B may never consume, so message
# counts grow without bound until the token limit cuts exploration off.
UNBOUNDED = fixtures._doc(
    """  <bpmn:collaboration id="collab">
    <bpmn:participant id="PA" processRef="pA"/>
    <bpmn:participant id="PB" processRef="pB"/>
    <bpmn:messageFlow id="mf1" sourceRef="snd" targetRef="mstB"/>
  </bpmn:collaboration>
  <bpmn:process id="pA">
    <bpmn:startEvent id="stA"/>
    <bpmn:exclusiveGateway id="g1"/>
    <bpmn:sendTask id="snd"/>
    <bpmn:exclusiveGateway id="g2"/>
    <bpmn:endEvent id="eA"/>
    <bpmn:sequenceFlow id="a0" sourceRef="stA" targetRef="g1"/>
    <bpmn:sequenceFlow id="a1" sourceRef="g1" targetRef="snd"/>
    <bpmn:sequenceFlow id="a2" sourceRef="snd" targetRef="g2"/>
    <bpmn:sequenceFlow id="a3" sourceRef="g2" targetRef="g1"/>
    <bpmn:sequenceFlow id="a4" sourceRef="g2" targetRef="eA"/>
  </bpmn:process>
  <bpmn:process id="pB">
    <bpmn:startEvent id="mstB">
      <bpmn:messageEventDefinition id="mstB_def"/>
    </bpmn:startEvent>
    <bpmn:endEvent id="eB"/>
    <bpmn:sequenceFlow id="b0" sourceRef="mstB" targetRef="eB"/>
  </bpmn:process>"""
)


class TestExplore:
    def test_minimal_space(self, minimal):
        space, stats = explore(minimal)
        assert stats.state_count == 3
        assert stats.transition_count == 2
        assert space.terminals == (2,)
        assert space.marking(0) == Marking({"f0": 1})
        assert space.marking(1) == Marking({"f1": 1})
        assert space.marking(2) == Marking({})

    def test_branch_10_1_state_count(self):
        space, stats = explore(gen_parallel_branches(BranchParams(10, 1)))
        assert stats.state_count == 1027
        assert stats.bound_hit is None

    def test_fired_nodes(self, minimal):
        space, _ = explore(minimal)
        assert space.fired_nodes == {"t1", "e"}

    def test_event_gateway_marks_chosen_catch_as_fired(self):
        space, _ = explore(parse_bpmn(fixtures.EVENT_GATEWAY))
        assert {"cYes", "cNo", "ebg"} <= set(space.fired_nodes)

    def test_unsafe_states_recorded(self, unsafe_model):
        space, _ = explore(unsafe_model)
        assert len(space.unsafe_states) == 1
        state_idx, flow_ids = space.unsafe_states[0]
        assert flow_ids == ("f5",)
        assert space.marking(state_idx).tokens["f5"] == 2
        assert space.depth(state_idx) == 5

    def test_terminate_space(self):
        space, stats = explore(parse_bpmn(fixtures.TERMINATE))
        assert stats.state_count == 10
        assert Marking({}) in [space.marking(t) for t in space.terminals]

    def test_determinism(self, unsafe_model):
        s1, st1 = explore(unsafe_model)
        s2, st2 = explore(unsafe_model)
        assert [s1.marking(i) for i in range(s1.state_count)] == [
            s2.marking(i) for i in range(s2.state_count)
        ]
        assert [s1.raw_edges(i) for i in range(s1.state_count)] == [
            s2.raw_edges(i) for i in range(s2.state_count)
        ]
        assert st1.transition_count == st2.transition_count

    def test_bfs_layer_property(self, unsafe_model):
        space, _ = explore(unsafe_model)
        for u in range(space.state_count):
            for _, v in space.raw_edges(u):
                assert space.depth(v) <= space.depth(u) + 1
        for v in range(1, space.state_count):
            pred = space.first_predecessor(v)
            assert pred is not None
            assert space.depth(pred[0]) == space.depth(v) - 1

    def test_empty_model_single_state(self):
        model = parse_bpmn(
            fixtures.MINIMAL.replace('<bpmn:startEvent id="st"/>', '<bpmn:task id="st"/>')
        )
        space, stats = explore(model)
        assert stats.state_count == 1
        assert space.terminals == (0,)


class TestLimits:
    def test_max_states_truncates_exactly(self):
        model = gen_parallel_branches(BranchParams(10, 1))
        space, stats = explore(model, ExplorationLimits(max_states=100))
        assert stats.bound_hit == BOUND_MAX_STATES
        assert stats.state_count == 100
        assert space.bound_hit == BOUND_MAX_STATES

    def test_token_bound(self):
        model = parse_bpmn(UNBOUNDED)
        space, stats = explore(model, ExplorationLimits(max_tokens_per_place=5))
        assert stats.bound_hit == BOUND_TOKENS

    def test_invalid_limits(self):
        with pytest.raises(ValueError):
            ExplorationLimits(max_states=0)
        with pytest.raises(ValueError):
            ExplorationLimits(max_tokens_per_place=0)
        with pytest.raises(ValueError):
            ExplorationLimits(max_tokens_per_place=300)


class TestShortestTrace:
    def test_initial_state_gives_empty_trace(self, minimal):
        space, _ = explore(minimal)
        assert len(shortest_trace(space, 0)) == 0

    def test_deadlock_trace_is_two_steps(self, deadlock_model):
        space, _ = explore(deadlock_model)
        stuck = [
            i
            for i in range(space.state_count)
            if space.out_degree(i) == 0 and space.marking(i).tokens
        ]
        trace = shortest_trace(space, stuck[0])
        assert len(trace) == 2
        assert trace.steps[0].transition.fired_node == "g1"

    def test_unsafe_trace_ends_with_join_firing(self, unsafe_model):
        space, _ = explore(unsafe_model)
        state_idx, _ = space.unsafe_states[0]
        trace = shortest_trace(space, state_idx)
        assert len(trace) == space.depth(state_idx) == 5
        assert trace.steps[-1].transition.fired_node == "g2"

    def test_trace_length_equals_depth_everywhere(self, unsafe_model):
        space, _ = explore(unsafe_model)
        for i in range(space.state_count):
            assert len(shortest_trace(space, i)) == space.depth(i)


class TestOracleEquivalence:
    """The compiled BFS agrees with naive fixpoint enumeration."""

    @pytest.mark.parametrize("name", sorted(fixtures.ERROR_CLASS_FIXTURES))
    def test_error_fixtures(self, name):
        model = parse_bpmn(fixtures.ERROR_CLASS_FIXTURES[name])
        space, _ = explore(model)
        assert space.canonical_encodings() == canonical_set(model)

    @pytest.mark.parametrize("name", sorted(fixtures.SOUND_FIXTURES))
    def test_sound_fixtures(self, name):
        model = parse_bpmn(fixtures.SOUND_FIXTURES[name])
        space, _ = explore(model)
        assert space.canonical_encodings() == canonical_set(model)

    @pytest.mark.parametrize("n,length", [(1, 1), (2, 3), (3, 2), (4, 1), (2, 20)])
    def test_generated_models(self, n, length):
        model = gen_parallel_branches(BranchParams(n, length))
        space, stats = explore(model)
        assert stats.state_count == (length + 1) ** n + 3
        assert space.canonical_encodings() == canonical_set(model)
