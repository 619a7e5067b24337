"""Request and response shapes of the HTTP service."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class ScenarioRequest(BaseModel):
    scenario: str
    parameters: dict[str, float] = Field(default_factory=dict)
    seed: int | None = None
    trials: int | None = None


class CheckResult(BaseModel):
    name: str
    expected: float
    measured: float
    tolerance: float
    passed: bool


class Table(BaseModel):
    columns: list[str]
    rows: list[list[Any]]


class ScenarioReport(BaseModel):
    scenario: str
    version: str
    seed: int | None
    trials: int | None
    parameters: dict[str, float]
    checks: list[CheckResult]
    tables: dict[str, Table]
    flags: list[str]
    passed: bool


class ScenarioInfo(BaseModel):
    name: str
    description: str
    monte_carlo: bool
    defaults: dict[str, float]
    default_trials: int | None


class CircuitElementSpec(BaseModel):
    type: str
    modes: list[int]
    params: list[Any] = Field(default_factory=list)


class CircuitRequest(BaseModel):
    """Circuit description; the same schema as the JSON circuit files."""
    modes: int
    cutoff: int | None = None
    input: dict[str, tuple[float, float]]
    elements: list[CircuitElementSpec] = Field(default_factory=list)
    measure: dict[str, Any] | None = None
    postselect: dict[str, int] | None = None


class CircuitResponse(BaseModel):
    output: dict[str, tuple[float, float]] | None = None
    postselect: dict[str, Any] | None = None
    measure: dict[str, Any] | None = None


class Health(BaseModel):
    status: str
    version: str
