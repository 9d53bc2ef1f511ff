"""Pydantic v2 contracts for every exported result."""

from __future__ import annotations

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Verdict(StrEnum):
    PRIMITIVE = "primitive"
    NOT_PRIMITIVE = "not_primitive"
    INCONCLUSIVE = "inconclusive"


class CertificateRoute(StrEnum):
    SPECTRAL = "spectral"
    PROBE = "probe"


class SpectrumSource(StrEnum):
    NUMERIC = "numeric"
    CLOSED_FORM = "closed_form"


class SpectrumReport(BaseModel):
    """Distinct eigenphases of a walk with their multiplicities."""

    model_config = ConfigDict(frozen=True)

    graph: str
    walk: str
    dim: int = Field(ge=1)
    m: int = Field(ge=1)
    phases: list[float]
    multiplicities: list[int]
    t_rel: float | None = None
    t_rel_chordal: float | None = None
    residual: float = Field(ge=0.0)
    source: SpectrumSource = SpectrumSource.NUMERIC

    @model_validator(mode="after")
    def _check_counts(self) -> SpectrumReport:
        if len(self.phases) != self.m or len(self.multiplicities) != self.m:
            raise ValueError("phases and multiplicities must both have length m")
        if sum(self.multiplicities) != self.dim:
            raise ValueError("multiplicities must sum to dim")
        return self


class CrossValidationReport(BaseModel):
    """Agreement between a numeric decomposition and a closed-form spectrum."""

    model_config = ConfigDict(frozen=True)

    family: str
    n: int
    dim: int
    tol: float
    max_phase_error: float
    multiplicities_match: bool
    numeric_multiplicities: list[int]
    closed_multiplicities: list[int]
    max_eigen_residual: float
    vectors_checked: int
    passed: bool


class CandidateResult(BaseModel):
    """Mixing time of one candidate initial state."""

    model_config = ConfigDict(frozen=True)

    label: str
    family: str
    mixing_time: int = Field(ge=1)
    envelope: float = Field(ge=0.0)
    window: int = Field(ge=1)
    certified: bool
    overlap: float | None = None
    gap: float | None = None
    theorem2_bound: float | None = None


class Theorem2Status(BaseModel):
    """Whether the two-eigenvector lower bound applies, and its value if so."""

    model_config = ConfigDict(frozen=True)

    overlap: float
    gap: float
    epsilon: float
    holds: bool
    reasons: list[str] = Field(default_factory=list)
    bound: float | None = None

    @model_validator(mode="after")
    def _bound_iff_holds(self) -> Theorem2Status:
        if self.holds != (self.bound is not None):
            raise ValueError("bound must be present exactly when the hypotheses hold")
        return self


class MixingReport(BaseModel):
    """Certified lower estimate of t_mix(eps) with its analytic bounds."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(gt=0.0, lt=2.0)
    m: int = Field(ge=1)
    t_rel: float | None = None
    t_rel_chordal: float | None = None
    candidates: list[CandidateResult]
    family_maxima: dict[str, int]
    sup_estimate: int = Field(ge=1)
    argmax: str
    theorem1_bound: float | None = None
    theorem2: Theorem2Status | None = None
    certified: bool

    @model_validator(mode="after")
    def _check_sup(self) -> MixingReport:
        if not self.candidates:
            raise ValueError("a mixing report needs at least one candidate")
        if self.sup_estimate != max(c.mixing_time for c in self.candidates):
            raise ValueError("sup_estimate must equal the largest candidate mixing time")
        if self.theorem2 is not None and not self.theorem2.holds:
            raise ValueError("theorem2 is reported only when its hypotheses hold")
        return self


class BoundsReport(BaseModel):
    """Sandwich of the measured estimate between the analytic bounds."""

    model_config = ConfigDict(frozen=True)

    graph: str
    walk: str
    epsilon: float
    m: int
    t_rel: float | None
    t_rel_chordal: float | None
    theorem1_bound: float | None
    theorem2: Theorem2Status | None
    measured_sup: int
    argmax: str
    upper_respected: bool
    lower_respected: bool | None
    classical_mixing_time: int | None = None
    reference_points: dict[str, float] = Field(default_factory=dict)


class PrimitivityCertificate(BaseModel):
    """Evidence for or against strong positivity of a channel."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    route: CertificateRoute
    dim: int
    spectral_radius: float | None = None
    peripheral_eigenvalues: list[tuple[float, float]] = Field(default_factory=list)
    eigenvalue_one_multiplicity: int | None = None
    eigenvalue_one_rank: int | None = None
    fixed_point_min_eigenvalue: float | None = None
    eta: float | None = None
    probe_steps: list[int | None] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)


class StationaryReport(BaseModel):
    """Summary of a stationary density matrix."""

    model_config = ConfigDict(frozen=True)

    dim: int
    residual: float
    min_eigenvalue: float
    diagonal: list[float]
    method: str


class ChannelCandidateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    mixing_time: int | None


class ChannelMixingReport(BaseModel):
    """Empirical mixing time of a decohering walk."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(gt=0.0)
    window: int = Field(ge=0)
    verdict: Verdict
    t_mix: int | None
    candidates: list[ChannelCandidateResult] = Field(default_factory=list)
    eta: float | None = None
    caveat: str = (
        "Channel is not normal in general; no rigorous tail bound is available, "
        "so t_mix is measured over a finite window only."
    )


class ChannelReport(BaseModel):
    """Everything the channel command computes for one channel spec."""

    model_config = ConfigDict(frozen=True)

    graph: str
    channel: dict[str, Any]
    dim: int
    n_kraus: int
    kraus_residual: float
    contraction_ok: bool
    certificate: PrimitivityCertificate
    stationary: StationaryReport | None = None
    mixing: ChannelMixingReport | None = None
