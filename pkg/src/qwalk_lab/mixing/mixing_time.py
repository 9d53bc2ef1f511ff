"""Mixing times with a certified tail, per state and over candidate families."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.contracts import CandidateResult, MixingReport
from qwalk_lab.core.exceptions import InvalidParameterError, RelaxationUndefinedError
from qwalk_lab.core.interfaces import BaseCandidateFamily
from qwalk_lab.mixing.bounds import theorem1_upper_bound, theorem2_status
from qwalk_lab.mixing.distance import distance_curve, distance_envelope
from qwalk_lab.mixing.families.context import Candidate, FamilyContext
from qwalk_lab.spectral.closed_form import ClosedFormSpectrum
from qwalk_lab.spectral.decomposition import (
    SpectralDecomposition,
    chordal_relaxation_time,
    relaxation_time,
)
from qwalk_lab.states import WaveFunction

logger = structlog.get_logger()

MAX_EPSILON = 2.0


@dataclass(frozen=True)
class StateMixing:
    """Mixing time of one state with the window that certifies it."""

    mixing_time: int
    envelope: float
    window: int
    certified: bool


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < MAX_EPSILON:
        raise InvalidParameterError(f"epsilon must lie in (0, 2), got {epsilon}")


def state_mixing(spec: SpectralDecomposition, psi: WaveFunction, epsilon: float) -> StateMixing:
    """Smallest T >= 1 with d(T') <= epsilon on [T, ceil(B / epsilon)].

    Beyond B / epsilon the envelope already forces d <= epsilon, so the finite
    scan certifies the infinite tail. When the window hits the configured cap
    the answer is a lower estimate and ``certified`` is False.
    """
    _check_epsilon(epsilon)
    envelope = distance_envelope(spec, psi)
    needed = max(1, math.ceil(envelope / epsilon))
    cap = get_settings().mixing_window_cap
    window = min(needed, cap)
    if envelope == 0.0:
        return StateMixing(mixing_time=1, envelope=0.0, window=1, certified=True)

    curve = distance_curve(spec, psi, window)
    violations = np.flatnonzero(curve > epsilon)
    mixing_time = int(violations[-1]) + 2 if violations.size else 1
    return StateMixing(
        mixing_time=mixing_time, envelope=envelope, window=window, certified=needed <= cap
    )


def mixing_time_for_state(spec: SpectralDecomposition, psi: WaveFunction, epsilon: float) -> int:
    """inf{T >= 1 : d(T', psi) <= epsilon for all T' >= T}."""
    return state_mixing(spec, psi, epsilon).mixing_time


def _candidate_result(
    candidate: Candidate, spec: SpectralDecomposition, epsilon: float
) -> CandidateResult:
    result = state_mixing(spec, candidate.psi, epsilon)
    bound = None
    if candidate.overlap is not None and candidate.gap is not None and candidate.overlap > 0:
        status = theorem2_status(candidate.overlap, candidate.gap, epsilon)
        bound = status.bound
    return CandidateResult(
        label=candidate.label,
        family=candidate.family,
        mixing_time=result.mixing_time,
        envelope=result.envelope,
        window=result.window,
        certified=result.certified,
        overlap=candidate.overlap,
        gap=candidate.gap,
        theorem2_bound=bound,
    )


def _relaxation_times(spec: SpectralDecomposition) -> tuple[float | None, float | None]:
    try:
        return relaxation_time(spec), chordal_relaxation_time(spec)
    except RelaxationUndefinedError:
        return None, None


def mixing_time_sup_estimate(
    spec: SpectralDecomposition,
    families: Sequence[BaseCandidateFamily[Any]],
    epsilon: float,
    *,
    dims: tuple[int, int],
    seed: int = 0,
    closed: ClosedFormSpectrum | None = None,
) -> MixingReport:
    """Certified lower estimate of t_mix(epsilon) over the generated candidates."""
    _check_epsilon(epsilon)
    if not families:
        raise InvalidParameterError("at least one candidate family is required")

    context = FamilyContext(spec=spec, dims=dims, seed=seed, closed=closed)
    results: list[CandidateResult] = []
    for family in families:
        candidates = family.generate(context)
        logger.info("mixing.family_generated", family=family.family_name, count=len(candidates))
        results.extend(_candidate_result(c, spec, epsilon) for c in candidates)
    if not results:
        raise InvalidParameterError("the candidate families generated no states")

    family_maxima: dict[str, int] = {}
    for result in results:
        family_maxima[result.family] = max(family_maxima.get(result.family, 0), result.mixing_time)
    best = max(results, key=lambda r: r.mixing_time)

    t_rel, t_rel_chordal = _relaxation_times(spec)
    theorem1 = theorem1_upper_bound(spec.m, t_rel, epsilon) if t_rel is not None else None

    theorem2 = None
    pairs = [r for r in results if r.theorem2_bound is not None]
    if pairs:
        strongest = max(pairs, key=lambda r: (r.theorem2_bound or 0.0))
        assert strongest.overlap is not None and strongest.gap is not None
        theorem2 = theorem2_status(strongest.overlap, strongest.gap, epsilon)

    logger.info(
        "mixing.estimated",
        epsilon=epsilon,
        candidates=len(results),
        sup=best.mixing_time,
        argmax=best.label,
    )
    return MixingReport(
        epsilon=epsilon,
        m=spec.m,
        t_rel=t_rel,
        t_rel_chordal=t_rel_chordal,
        candidates=results,
        family_maxima=family_maxima,
        sup_estimate=best.mixing_time,
        argmax=best.label,
        theorem1_bound=theorem1,
        theorem2=theorem2,
        certified=all(r.certified for r in results),
    )
