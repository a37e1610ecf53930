"""Pydantic request/response models mirroring the diagnostics contract."""

from __future__ import annotations

from pydantic import BaseModel, Field


class TraceStepDoc(BaseModel):
    fire: str
    consume: list[str]
    produce: list[str]


class TraceDoc(BaseModel):
    steps: list[TraceStepDoc]


class ViolationDoc(BaseModel):
    kind: str
    elements: list[str]
    trace: TraceDoc | None = None
    cycle: list[TraceStepDoc] | None = None
    note: str | None = None


class PropertyDoc(BaseModel):
    name: str
    fulfilled: str = Field(pattern="^(true|false|unknown)$")
    violations: list[ViolationDoc]


class StatsDoc(BaseModel):
    states: int
    transitions: int
    runtime_us: int
    boundHit: str | None = None


class QuickFixDoc(BaseModel):
    id: str
    kind: str
    targets: list[str]
    description: str


class WarningDoc(BaseModel):
    kind: str
    elements: list[str]


class DiagnosisDoc(BaseModel):
    model: str
    stats: StatsDoc
    properties: list[PropertyDoc]
    quickFixes: list[QuickFixDoc]
    warnings: list[WarningDoc]


class ApplyFixResponse(BaseModel):
    xml: str
    diagnosis: DiagnosisDoc


class HealthResponse(BaseModel):
    status: str
    version: str
