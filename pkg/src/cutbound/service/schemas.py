"""Pydantic request/response models for the HTTP service.

Exact rationals travel as "p/q" strings in every payload; decimal fields are
advisory renderings and never parsed back.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class CutAtom(BaseModel):
    cut: list[int]
    weight: str


class CutMeasureDoc(BaseModel):
    universe_size: int
    atoms: list[CutAtom]


class MetricDoc(BaseModel):
    points: int
    dist: list[list[str]]


class InstanceDoc(BaseModel):
    n: int
    weights: dict[str, str]


class DistortionReportDoc(BaseModel):
    min_ratio: str
    max_ratio: str
    distortion: str
    argmin_pair: tuple[int, int]
    argmax_pair: tuple[int, int]


class PairRow(BaseModel):
    """One vertex pair with its base distance, embedded distance, and ratio."""

    x: int
    y: int
    base: str
    embedded: str
    ratio: str


class CertificateDoc(BaseModel):
    b: list[int]
    positive_mass: str
    negative_mass: str
    bound: str


class Timings(BaseModel):
    total_ms: float


class FormulaRequest(BaseModel):
    n: int = Field(ge=1)


class FormulaResponse(BaseModel):
    n: int
    k: int
    c1: str
    decimal: str
    timings: Timings | None = None


class EmbedRequest(BaseModel):
    k: int = Field(ge=1)
    ell: int = Field(ge=1)
    include_coordinates: bool = False
    include_pairs: bool = False
    guard_cuts: int = Field(default=6, ge=1, description="max k for subset enumeration")


class EmbedResponse(BaseModel):
    k: int
    ell: int
    expected_distortion: str
    measure: CutMeasureDoc
    coordinates: list[list[str]] | None = None
    report: DistortionReportDoc
    pairs: list[PairRow] | None = None
    matches_formula: bool
    timings: Timings | None = None


class CertifyRequest(BaseModel):
    n: int = Field(ge=1)


class CertifyResponse(BaseModel):
    n: int
    effective_k: int | None
    certificate: CertificateDoc | None
    bound: str
    note: str | None = None
    timings: Timings | None = None


class OracleRequest(BaseModel):
    metric: MetricDoc
    guard_oracle_points: int = Field(default=12, ge=2)


class OracleResponse(BaseModel):
    points: int
    status: str
    optimum_D: str | None
    witness: CutMeasureDoc | None
    timings: Timings | None = None


class PipelineRequest(BaseModel):
    instance: InstanceDoc
    epsilon: str = "0"
    with_oracle: bool = True
    include_pairs: bool = False
    guard_cuts: int = Field(default=6, ge=1)
    guard_oracle_points: int = Field(default=12, ge=2)


class TraceStepDoc(BaseModel):
    kind: str
    params: dict
    vertex_map: dict[str, int]


class TraceDoc(BaseModel):
    source_size: int
    target_size: int
    steps: list[TraceStepDoc]


class PipelineResponse(BaseModel):
    n: int
    scale: int
    k: int
    ell: int
    measure: CutMeasureDoc
    report: DistortionReportDoc
    pairs: list[PairRow] | None = None
    trace: TraceDoc
    oracle_distortion: str | None = None
    matches_oracle: bool | None = None
    timings: Timings | None = None


class HealthResponse(BaseModel):
    status: str
    version: str
