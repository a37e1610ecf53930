from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import fixtures  # noqa: E402
from bpmncheck import parse_bpmn  # noqa: E402


@pytest.fixture
def minimal():
    return parse_bpmn(fixtures.MINIMAL)


@pytest.fixture
def deadlock_model():
    return parse_bpmn(fixtures.DEADLOCK)


@pytest.fixture
def unsafe_model():
    return parse_bpmn(fixtures.UNSAFE)


@pytest.fixture
def livelock_model():
    return parse_bpmn(fixtures.LIVELOCK)


@pytest.fixture
def starvation_model():
    return parse_bpmn(fixtures.STARVATION)


@pytest.fixture
def dead_task_model():
    return parse_bpmn(fixtures.DEAD_TASK)


@pytest.fixture
def reused_end_model():
    return parse_bpmn(fixtures.REUSED_END)


@pytest.fixture
def two_pool_model():
    return parse_bpmn(fixtures.TWO_POOL_SOUND)
