"""Cross-validation of numeric decompositions against closed-form oracles."""

from __future__ import annotations

import numpy as np
import structlog

from qwalk_lab.core.contracts import CrossValidationReport
from qwalk_lab.core.exceptions import DimensionMismatchError
from qwalk_lab.spectral.closed_form import ClosedFormSpectrum
from qwalk_lab.spectral.decomposition import SpectralDecomposition, circular_distances

logger = structlog.get_logger()

DEFAULT_VECTORS_PER_PHASE = 8


def _nearest(source: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    distances = circular_distances(source[:, None], target[None, :])
    nearest = np.argmin(distances, axis=1)
    return nearest, distances[np.arange(source.size), nearest]


def cross_validate(
    numeric: SpectralDecomposition,
    closed: ClosedFormSpectrum,
    tol: float,
    *,
    vectors_per_phase: int = DEFAULT_VECTORS_PER_PHASE,
) -> CrossValidationReport:
    """Compare phases, multiplicities and eigen-residuals of the two sides.

    Each side's phases are matched to their nearest neighbour on the circle in
    the other side. Multiplicities agree only if that matching is a bijection
    that pairs equal counts. Up to *vectors_per_phase* closed-form eigenvectors
    per phase are pushed through the numeric walk.
    """
    if numeric.dim != closed.dim:
        raise DimensionMismatchError(
            f"numeric decomposition has dim {numeric.dim}, closed form {closed.dim}"
        )

    forward, forward_err = _nearest(closed.phases, numeric.phases)
    backward, backward_err = _nearest(numeric.phases, closed.phases)
    max_phase_error = float(max(forward_err.max(), backward_err.max()))

    bijective = numeric.m == closed.m and np.array_equal(backward[forward], np.arange(closed.m))
    multiplicities_match = bijective and all(
        closed.multiplicities[k] == numeric.multiplicities[forward[k]] for k in range(closed.m)
    )

    pairs = closed.eigenvectors(limit_per_phase=vectors_per_phase)
    stacked = np.stack([vec for _, vec in pairs], axis=1)
    eigenvalues = np.exp(1j * closed.phases[[k for k, _ in pairs]])
    defects = numeric.apply_power(stacked, 1) - stacked * eigenvalues[None, :]
    max_eigen_residual = float(np.max(np.linalg.norm(defects, axis=0)))

    passed = max_phase_error < tol and multiplicities_match and max_eigen_residual < tol
    logger.info(
        "spectral.cross_validated",
        family=closed.family,
        n=closed.n,
        phase_error=max_phase_error,
        residual=max_eigen_residual,
        passed=passed,
    )
    return CrossValidationReport(
        family=closed.family,
        n=closed.n,
        dim=closed.dim,
        tol=tol,
        max_phase_error=max_phase_error,
        multiplicities_match=multiplicities_match,
        numeric_multiplicities=list(numeric.multiplicities),
        closed_multiplicities=list(closed.multiplicities),
        max_eigen_residual=max_eigen_residual,
        vectors_checked=len(pairs),
        passed=passed,
    )
