"""Pydantic request and response models for the HTTP service.

Every probability or expectation travels as an exact fraction
``{"num": ..., "den": ...}`` plus a display-only ``approx`` string; the
exact fields are authoritative. Documents carry a top-level
``"schema": "penney/1"`` marker.
"""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_ID = "penney/1"


class FractionOut(BaseModel):
    num: int
    den: int
    approx: str


class DocumentBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(default=SCHEMA_ID, alias="schema")
    command: str
    version: str
    arguments: dict[str, Any]


# ---------------------------------------------------------------- analyze

class AnalyzeRequest(BaseModel):
    s1: str
    s2: str
    bias: str = "1/2"
    digits: int = Field(default=6, ge=0, le=50)


class StateTime(BaseModel):
    state: str
    expected_steps: FractionOut


class AnalyzePayload(BaseModel):
    s1: str
    s2: str
    bias: FractionOut
    win_s1: FractionOut
    win_s2: FractionOut
    absorption_times: list[StateTime]
    expected_flips: FractionOut


class AnalyzeDocument(DocumentBase):
    payload: AnalyzePayload


# ----------------------------------------------------------------- tables

class AbsorptionRow(BaseModel):
    s1: str
    s2: str
    times: list[FractionOut]


class AbsorptionTablePayload(BaseModel):
    columns: list[str]
    rows: list[AbsorptionRow]


class AbsorptionTableDocument(DocumentBase):
    payload: AbsorptionTablePayload


class GameLengthEntry(BaseModel):
    s1: str
    s2: str
    expected_flips: FractionOut


class GameLengthTablePayload(BaseModel):
    entries: list[GameLengthEntry]


class GameLengthTableDocument(DocumentBase):
    payload: GameLengthTablePayload


# ---------------------------------------------------------------- respond

class RespondRequest(BaseModel):
    pattern: str
    digits: int = Field(default=6, ge=0, le=50)


class RespondPayload(BaseModel):
    pattern: str
    penney_response: str
    win_probability: FractionOut
    best_response: str
    best_response_ties: list[str]


class RespondDocument(DocumentBase):
    payload: RespondPayload


# ----------------------------------------------------------------- verify

class VerifyRequest(BaseModel):
    suite: Literal["optimality", "nontransitivity", "oracle", "all"] = "all"
    horizon: int = Field(default=120, ge=1)
    digits: int = Field(default=6, ge=0, le=50)


class OptimalityCaseOut(BaseModel):
    pattern: str
    response: str
    win_probability: FractionOut
    optimal: bool
    argmax_response: str
    argmax_agrees: bool


class OptimalitySection(BaseModel):
    passed: bool
    cases: list[OptimalityCaseOut]


class CycleEdgeOut(BaseModel):
    loser: str
    winner: str
    probability: FractionOut
    reverse_probability: FractionOut


class NontransitivitySection(BaseModel):
    passed: bool
    cycle: list[str]
    edges: list[CycleEdgeOut]


class OracleCheckOut(BaseModel):
    s1: str
    s2: str
    win_s1: FractionOut
    expected_flips: FractionOut
    win_in_bracket: bool
    flips_in_bracket: bool
    win_width: FractionOut
    flips_width: FractionOut


class OracleSection(BaseModel):
    passed: bool
    horizon: int
    checks: list[OracleCheckOut]


class VerifyPayload(BaseModel):
    suite: str
    passed: bool
    optimality: Optional[OptimalitySection] = None
    nontransitivity: Optional[NontransitivitySection] = None
    oracle: Optional[OracleSection] = None


class VerifyDocument(DocumentBase):
    payload: VerifyPayload


# --------------------------------------------------------------- simulate

class SimulateRequest(BaseModel):
    s1: str
    s2: str
    trials: int = Field(default=100_000, ge=1)
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    bias: str = "1/2"
    max_flips: int = Field(default=10_000, ge=1)
    digits: int = Field(default=6, ge=0, le=50)


class SimulatePayload(BaseModel):
    s1: str
    s2: str
    bias: FractionOut
    trials: int
    seed: int
    max_flips_per_trick: int
    wins_s1: int
    wins_s2: int
    truncated: int
    win_rate_s1: float
    mean_flips: Optional[float]
    stderr_win_s1: float
    stderr_mean_flips: Optional[float]
    analytic_win_s1: FractionOut
    analytic_expected_flips: FractionOut
    z_win_s1: Optional[float]
    z_mean_flips: Optional[float]


class SimulateDocument(DocumentBase):
    payload: SimulatePayload


# ---------------------------------------------------------------- overall

class OverallPayload(BaseModel):
    expected_flips: FractionOut
    games: list[GameLengthEntry]


class OverallDocument(DocumentBase):
    payload: OverallPayload
