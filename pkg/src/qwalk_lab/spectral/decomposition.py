"""Numeric spectral decomposition of walk unitaries and eigenphase clustering."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import structlog
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import (
    DimensionMismatchError,
    RelaxationUndefinedError,
    SpectralError,
)
from qwalk_lab.walks.operators import UnitaryWalk

logger = structlog.get_logger()

TWO_PI = 2.0 * np.pi
MAX_RESIDUAL = 1e-6

ComplexArray = NDArray[np.complex128]
ComponentFn = Callable[[ComplexArray], ComplexArray]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenphases with their eigenspaces.

    Eigenspaces are held either as orthonormal bases (``bases[k]`` is N x mult_k)
    or through ``component_fn``, which maps a vector to the stacked (m, N)
    projections P_k psi without forming any projector.
    """

    phases: NDArray[np.float64]
    multiplicities: tuple[int, ...]
    dim: int
    residual: float
    bases: tuple[ComplexArray, ...] | None = None
    component_fn: ComponentFn | None = None
    source: str = "numeric"

    @property
    def m(self) -> int:
        return len(self.multiplicities)

    @property
    def eigenvalues(self) -> ComplexArray:
        return np.exp(1j * self.phases)

    def components(self, psi: ArrayLike) -> ComplexArray:
        """Projections P_k psi stacked as an (m, N) array."""
        vec = np.asarray(getattr(psi, "amplitudes", psi), dtype=np.complex128).reshape(-1)
        if vec.size != self.dim:
            raise DimensionMismatchError(f"decomposition has dim {self.dim}, vector {vec.size}")
        if self.bases is not None:
            return np.stack([basis @ (basis.conj().T @ vec) for basis in self.bases])
        assert self.component_fn is not None
        return self.component_fn(vec)

    def projector(self, k: int) -> ComplexArray:
        if self.bases is None:
            raise SpectralError("this decomposition holds no explicit eigenbases")
        basis = self.bases[k]
        return basis @ basis.conj().T

    def apply_power(self, vectors: ArrayLike, t: int = 1) -> ComplexArray:
        """sum_k lambda_k^t P_k applied to an (N,) or (N, K) array."""
        arr = np.asarray(vectors, dtype=np.complex128)
        powers = np.exp(1j * t * self.phases)
        if arr.ndim == 1:
            return powers @ self.components(arr)
        if self.bases is not None:
            out = np.zeros_like(arr)
            for power, basis in zip(powers, self.bases, strict=True):
                out += power * (basis @ (basis.conj().T @ arr))
            return out
        return np.stack([powers @ self.components(col) for col in arr.T], axis=1)


def circular_distance(beta: float, beta_prime: float) -> float:
    """Arc distance between two angles, in [0, pi]."""
    diff = (beta - beta_prime) % TWO_PI
    return float(min(diff, TWO_PI - diff))


def circular_distances(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    diff = np.mod(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64), TWO_PI)
    return np.minimum(diff, TWO_PI - diff)


def cluster_phases(
    phases: ArrayLike, tol: float
) -> tuple[NDArray[np.float64], list[NDArray[np.int64]]]:
    """Group phases whose neighbours on the circle lie within *tol*.

    Returns the circular mean of each cluster (sorted in [0, 2 pi)) and the
    member indices of each cluster.
    """
    raw = np.mod(np.asarray(phases, dtype=np.float64).reshape(-1), TWO_PI)
    order = np.argsort(raw, kind="stable")
    ordered = raw[order]
    breaks = np.nonzero(np.diff(ordered) > tol)[0] + 1
    groups = [g for g in np.split(order, breaks) if g.size]
    if len(groups) > 1 and (ordered[0] + TWO_PI - ordered[-1]) <= tol:
        groups[0] = np.concatenate([groups.pop(), groups[0]])

    centres = np.array(
        [np.mod(np.angle(np.mean(np.exp(1j * raw[g]))), TWO_PI) for g in groups]
    )
    # A cluster straddling zero can average to just below 2 pi.
    centres[np.isclose(centres, TWO_PI, rtol=0.0, atol=tol)] = 0.0
    resort = np.argsort(centres, kind="stable")
    return centres[resort], [groups[i].astype(np.int64) for i in resort]


def decompose(walk: UnitaryWalk, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Eigenphases and orthonormal eigenspaces of a dense walk unitary."""
    tol = get_settings().cluster_tol if cluster_tol is None else cluster_tol
    matrix = walk.dense()
    triangular, vectors = scipy.linalg.schur(matrix, output="complex")
    phases = np.angle(np.diag(triangular))

    centres, groups = cluster_phases(phases, tol)
    bases: list[ComplexArray] = []
    residual = 0.0
    for centre, members in zip(centres, groups, strict=True):
        basis, _ = scipy.linalg.qr(vectors[:, members], mode="economic")
        bases.append(basis)
        defect = matrix @ basis - np.exp(1j * centre) * basis
        residual = max(residual, float(np.linalg.norm(defect, 2)))

    if residual > MAX_RESIDUAL:
        raise SpectralError(
            f"eigen-residual {residual:.2e} exceeds {MAX_RESIDUAL:.0e}; "
            f"is walk '{walk.name}' unitary?"
        )
    logger.debug("spectral.decomposed", walk=walk.name, m=len(bases), residual=residual)
    return SpectralDecomposition(
        phases=centres,
        multiplicities=tuple(int(g.size) for g in groups),
        dim=walk.dim,
        residual=residual,
        bases=tuple(bases),
    )


def min_phase_gap(spec: SpectralDecomposition) -> float:
    """Smallest arc distance between distinct eigenphases."""
    if spec.m < 2:  # noqa: PLR2004
        raise RelaxationUndefinedError(
            "a single distinct eigenvalue has no gap; relaxation time is infinite"
        )
    ordered = np.sort(spec.phases)
    gaps = np.append(np.diff(ordered), TWO_PI - ordered[-1] + ordered[0])
    return float(np.min(gaps))


def relaxation_time(spec: SpectralDecomposition) -> float:
    """t_rel = 1 / min_{k != l} d(lambda_k, lambda_l), arc distance on the circle."""
    return 1.0 / min_phase_gap(spec)


def chordal_relaxation_time(spec: SpectralDecomposition) -> float:
    """1 / min_{k != l} |lambda_k - lambda_l| (chordal reading)."""
    return 1.0 / (2.0 * np.sin(min_phase_gap(spec) / 2.0))


def smallest_gaps(spec: SpectralDecomposition, count: int) -> list[tuple[int, int, float]]:
    """The *count* closest pairs of distinct eigenphases as (k, l, distance)."""
    pairs = [
        (k, l, circular_distance(spec.phases[k], spec.phases[l]))
        for k in range(spec.m)
        for l in range(k + 1, spec.m)  # noqa: E741
    ]
    pairs.sort(key=lambda item: (item[2], item[0], item[1]))
    return pairs[:count]
