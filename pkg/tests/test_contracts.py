"""Unit tests for qwalk_lab.core.contracts."""

from __future__ import annotations

import pytest
from pydantic import ValidationError

from qwalk_lab.core.contracts import (
    CandidateResult,
    MixingReport,
    SpectrumReport,
    SpectrumSource,
    Theorem2Status,
    Verdict,
)


def _make_spectrum(**overrides) -> SpectrumReport:
    defaults = {
        "graph": "cycle:4",
        "walk": "hadamard",
        "dim": 8,
        "m": 2,
        "phases": [0.0, 3.14],
        "multiplicities": [4, 4],
        "residual": 0.0,
    }
    defaults.update(overrides)
    return SpectrumReport(**defaults)


def _make_candidate(label: str, mixing_time: int) -> CandidateResult:
    return CandidateResult(
        label=label,
        family="basis",
        mixing_time=mixing_time,
        envelope=1.0,
        window=20,
        certified=True,
    )


def _make_mixing(**overrides) -> MixingReport:
    candidates = [_make_candidate("basis(0,0)", 5), _make_candidate("basis(1,0)", 9)]
    defaults = {
        "epsilon": 0.05,
        "m": 2,
        "candidates": candidates,
        "family_maxima": {"basis": 9},
        "sup_estimate": 9,
        "argmax": "basis(1,0)",
        "certified": True,
    }
    defaults.update(overrides)
    return MixingReport(**defaults)


class TestSpectrumReport:
    def test_valid(self):
        report = _make_spectrum()
        assert report.source is SpectrumSource.NUMERIC

    def test_multiplicities_must_sum_to_dim(self):
        with pytest.raises(ValidationError, match="sum to dim"):
            _make_spectrum(multiplicities=[4, 3])

    def test_lengths_must_match_m(self):
        with pytest.raises(ValidationError, match="length m"):
            _make_spectrum(m=3)

    def test_frozen(self):
        report = _make_spectrum()
        with pytest.raises(ValidationError):
            report.m = 5  # type: ignore[misc]


class TestTheorem2Status:
    def test_bound_requires_holds(self):
        with pytest.raises(ValidationError):
            Theorem2Status(overlap=0.8, gap=0.1, epsilon=0.05, holds=False, bound=20.0)

    def test_holds_requires_bound(self):
        with pytest.raises(ValidationError):
            Theorem2Status(overlap=0.8, gap=0.1, epsilon=0.01, holds=True)

    def test_reasons_without_bound(self):
        status = Theorem2Status(
            overlap=0.8, gap=0.1, epsilon=0.05, holds=False, reasons=["eps above Q/80"]
        )
        assert status.bound is None


class TestMixingReport:
    def test_valid(self):
        assert _make_mixing().sup_estimate == 9

    def test_sup_must_be_the_maximum(self):
        with pytest.raises(ValidationError, match="largest candidate"):
            _make_mixing(sup_estimate=5)

    def test_needs_candidates(self):
        with pytest.raises(ValidationError):
            _make_mixing(candidates=[])

    def test_failed_theorem2_is_not_attached(self):
        status = Theorem2Status(overlap=0.8, gap=0.1, epsilon=0.05, holds=False)
        with pytest.raises(ValidationError, match="hypotheses hold"):
            _make_mixing(theorem2=status)

    @pytest.mark.parametrize("eps", [0.0, 2.0])
    def test_epsilon_range(self, eps):
        with pytest.raises(ValidationError):
            _make_mixing(epsilon=eps)


class TestCandidateResult:
    def test_mixing_time_is_positive(self):
        with pytest.raises(ValidationError):
            _make_candidate("basis(0,0)", 0)


def test_verdict_values():
    assert {v.value for v in Verdict} == {"primitive", "not_primitive", "inconclusive"}
