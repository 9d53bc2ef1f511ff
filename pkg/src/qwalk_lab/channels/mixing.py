"""Convergence of decohering walks to their stationary density."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray

from qwalk_lab.channels.analysis import StationaryDensity, primitivity_check, stationary_density
from qwalk_lab.channels.superoperator import Superoperator
from qwalk_lab.core.config import get_settings
from qwalk_lab.core.contracts import (
    ChannelCandidateResult,
    ChannelMixingReport,
    PrimitivityCertificate,
    Verdict,
)
from qwalk_lab.core.exceptions import DimensionMismatchError, GraphError, InvalidParameterError
from qwalk_lab.states import DensityMatrix, trace_norm
from qwalk_lab.walks.graphs import LabelledGraph

logger = structlog.get_logger()

DEFAULT_WINDOW = 50
SUPPORT_TOL = 1e-12

RealArray = NDArray[np.float64]


def _site_distance(matrix: NDArray[np.complex128], target: RealArray) -> float:
    return float(np.sum(np.abs(np.real(np.diag(matrix)) - target)))


def _first_settled(
    channel: Superoperator, start: DensityMatrix, target: RealArray, epsilon: float, window: int
) -> int | None:
    """Smallest t with d(t') <= epsilon for every t' in [t, t + window]."""
    cap = get_settings().channel_step_cap
    current = start.matrix
    run_start: int | None = None
    for t in range(cap + 1):
        if _site_distance(current, target) <= epsilon:
            if run_start is None:
                run_start = t
            if t - run_start >= window:
                return run_start
        else:
            run_start = None
        current = channel.apply(current)
    return None


def _candidate_label(index: int, candidate: DensityMatrix) -> str:
    diagonal = candidate.diagonal()
    if np.isclose(diagonal.max(), 1.0) and np.isclose(np.trace(candidate.matrix).real, 1.0):
        return f"projector({int(np.argmax(diagonal))})"
    return f"state#{index}"


def channel_mixing_report(
    channel: Superoperator,
    epsilon: float,
    candidates: Sequence[DensityMatrix],
    window: int = DEFAULT_WINDOW,
    *,
    certificate: PrimitivityCertificate | None = None,
    stationary: StationaryDensity | None = None,
) -> ChannelMixingReport:
    """Measured mixing time of the channel, gated on a primitive verdict."""
    if epsilon <= 0.0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    if window < 0:
        raise InvalidParameterError(f"window must be >= 0, got {window}")
    for candidate in candidates:
        if candidate.dim != channel.dim:
            raise DimensionMismatchError(f"candidate dim {candidate.dim}, channel {channel.dim}")

    certificate = certificate or primitivity_check(channel)
    if certificate.verdict is not Verdict.PRIMITIVE:
        return ChannelMixingReport(
            epsilon=epsilon,
            window=window,
            verdict=certificate.verdict,
            t_mix=None,
            eta=certificate.eta,
        )

    target = (stationary or stationary_density(channel)).rho.diagonal()
    results = [
        ChannelCandidateResult(
            label=_candidate_label(i, c),
            mixing_time=_first_settled(channel, c, target, epsilon, window),
        )
        for i, c in enumerate(candidates)
    ]
    times = [r.mixing_time for r in results]
    t_mix = None
    if times and all(t is not None for t in times):
        t_mix = max(t for t in times if t is not None)
    logger.info("channel.mixing_measured", epsilon=epsilon, t_mix=t_mix, candidates=len(results))
    return ChannelMixingReport(
        epsilon=epsilon,
        window=window,
        verdict=certificate.verdict,
        t_mix=t_mix,
        candidates=results,
        eta=certificate.eta,
    )


def channel_mixing_time(
    channel: Superoperator,
    epsilon: float,
    candidates: Sequence[DensityMatrix],
    window: int = DEFAULT_WINDOW,
) -> int | None:
    """max over candidates of the settling time; None unless the channel is primitive."""
    return channel_mixing_report(channel, epsilon, candidates, window).t_mix


def basis_projector_candidates(dim: int) -> list[DensityMatrix]:
    return [DensityMatrix.basis_projector(dim, x) for x in range(dim)]


@dataclass(frozen=True)
class ConvergenceCurve:
    """Worst-case distances to the stationary density along trajectories."""

    steps: NDArray[np.int64]
    trace_distance: RealArray
    site_distance: RealArray
    limits: tuple[NDArray[np.complex128], ...]


def convergence_curve(
    channel: Superoperator,
    starts: Sequence[DensityMatrix],
    rho_st: DensityMatrix,
    steps: int,
) -> ConvergenceCurve:
    """max over starts of ||T^t(rho_0) - rho_st||_1 and of the site-marginal distance."""
    if steps < 0:
        raise InvalidParameterError(f"steps must be >= 0, got {steps}")
    if not starts:
        raise InvalidParameterError("convergence_curve needs at least one start")
    target = rho_st.diagonal()
    trace_curve = np.zeros(steps + 1)
    site_curve = np.zeros(steps + 1)
    currents = [s.matrix for s in starts]
    for t in range(steps + 1):
        trace_curve[t] = max(trace_norm(c - rho_st.matrix) for c in currents)
        site_curve[t] = max(_site_distance(c, target) for c in currents)
        if t < steps:
            currents = [channel.apply(c) for c in currents]
    return ConvergenceCurve(
        steps=np.arange(steps + 1),
        trace_distance=trace_curve,
        site_distance=site_curve,
        limits=tuple(currents),
    )


def convergence_step(
    channel: Superoperator,
    starts: Sequence[DensityMatrix],
    rho_st: DensityMatrix,
    tol: float,
) -> int | None:
    """First t <= channel_step_cap with ||T^t(rho_0) - rho_st||_1 < tol for every start.

    The trace distance to a fixed point never grows under a channel, so the
    first such t stays valid for all later steps.
    """
    if tol <= 0.0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    if not starts:
        raise InvalidParameterError("convergence_step needs at least one start")
    cap = get_settings().channel_step_cap
    currents = [s.matrix for s in starts]
    for t in range(cap + 1):
        if max(trace_norm(c - rho_st.matrix) for c in currents) < tol:
            logger.debug("channel.converged", steps=t, tol=tol, starts=len(currents))
            return t
        currents = [channel.apply(c) for c in currents]
    return None


def channel_locality_violations(
    channel: Superoperator, graph: LabelledGraph
) -> list[tuple[int, int]]:
    """(site, vertex) pairs where T(|x><x|) puts weight on a vertex not adjacent to x's.

    A vertex counts as adjacent to itself only when the graph carries loops.
    """
    n_chiralities = channel.dim // graph.n_vertices
    if n_chiralities * graph.n_vertices != channel.dim:
        raise GraphError(f"graph with {graph.n_vertices} vertices cannot carry dim {channel.dim}")
    adjacency = graph.adjacency()
    violations: list[tuple[int, int]] = []
    for x in range(channel.dim):
        image = channel.apply(DensityMatrix.basis_projector(channel.dim, x).matrix)
        weights = np.real(np.diag(image)).reshape(graph.n_vertices, n_chiralities).sum(axis=1)
        source = x // n_chiralities
        reached = np.flatnonzero(weights > SUPPORT_TOL)
        violations.extend((x, int(v)) for v in reached if not adjacency[source, v])
    return violations


def channel_locality_check(channel: Superoperator, graph: LabelledGraph) -> bool:
    """Locality of a non-unitary walk, probed on site projectors; diagnostic only."""
    return not channel_locality_violations(channel, graph)
