"""Classical Markov-chain baselines for the quantum mixing times."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
import structlog
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import InvalidParameterError
from qwalk_lab.walks.graphs import LabelledGraph, cycle_graph

logger = structlog.get_logger()

STOCHASTIC_TOL = 1e-12
GAP_TOL = 1e-12


def _stochastic(transition: ArrayLike) -> NDArray[np.float64]:
    matrix = np.asarray(transition, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:  # noqa: PLR2004
        raise InvalidParameterError(f"transition matrix must be square, got {matrix.shape}")
    if np.any(matrix < -STOCHASTIC_TOL):
        raise InvalidParameterError("transition matrix has negative entries")
    worst = float(np.max(np.abs(matrix.sum(axis=1) - 1.0)))
    if worst > STOCHASTIC_TOL:
        raise InvalidParameterError(f"rows must sum to 1 (worst deviation {worst:.2e})")
    return matrix


def stationary_distribution(transition: ArrayLike) -> NDArray[np.float64] | None:
    """The unique pi with pi P = pi, or None when it is not unique."""
    matrix = _stochastic(transition)
    kernel = scipy.linalg.null_space(matrix.T - np.eye(matrix.shape[0]))
    if kernel.shape[1] != 1:
        return None
    pi = np.abs(kernel[:, 0])
    return pi / pi.sum()


def spectral_step_ceiling(transition: ArrayLike, epsilon: float) -> int | None:
    """Step count after which a symmetric chain is certainly within *epsilon*.

    With absolute spectral gap gamma and uniform pi, every start satisfies
    sum_y |P^t(x, y) - pi(y)| <= n exp(-gamma t). Returns 0 for a periodic or
    reducible chain (gamma = 0, never mixes) and None when the chain is not
    symmetric.
    """
    matrix = _stochastic(transition)
    if not np.allclose(matrix, matrix.T, atol=STOCHASTIC_TOL):
        return None
    eigenvalues = np.sort(np.abs(scipy.linalg.eigvalsh(matrix)))
    gamma = 1.0 - float(eigenvalues[-2]) if eigenvalues.size > 1 else 1.0
    if gamma <= GAP_TOL:
        return 0
    return int(np.ceil(np.log(matrix.shape[0] / epsilon) / gamma)) + 1


def classical_mixing_time(
    transition: ArrayLike,
    epsilon: float,
    *,
    step_cap: int | None = None,
    starts: Sequence[int] | None = None,
) -> int | None:
    """Smallest t with max_x sum_y |P^t(x, y) - pi(y)| <= epsilon.

    The maximum runs over *starts* (every vertex by default); one start is
    enough on vertex-transitive graphs. Symmetric chains stop at their
    spectral ceiling instead of the full step budget. Returns None when the
    chain has no unique stationary distribution or does not get within
    epsilon in *step_cap* steps (periodic chains never do).
    """
    if epsilon <= 0.0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    matrix = _stochastic(transition)
    n = matrix.shape[0]
    pi = stationary_distribution(matrix)
    if pi is None:
        return None
    cap = get_settings().step_budget if step_cap is None else step_cap
    ceiling = spectral_step_ceiling(matrix, epsilon)
    if ceiling is not None:
        cap = min(cap, ceiling)
    columns = np.arange(n) if starts is None else np.asarray(starts, dtype=np.int64)
    if columns.size == 0 or columns.min() < 0 or columns.max() >= n:
        raise InvalidParameterError(f"start vertices must lie in [0, {n}), got {starts}")

    # Column j of ``rows`` is the distribution after t steps from columns[j].
    forward = scipy.sparse.csr_matrix(matrix.T)
    rows = np.eye(n)[:, columns]
    for t in range(1, cap + 1):
        rows = forward @ rows
        if float(np.max(np.abs(rows - pi[:, None]).sum(axis=0))) <= epsilon:
            logger.debug("classical.mixed", steps=t, epsilon=epsilon, starts=columns.size)
            return t
    logger.debug("classical.unmixed", cap=cap, epsilon=epsilon)
    return None


def simple_random_walk_chain(graph: LabelledGraph, *, lazy: bool = True) -> NDArray[np.float64]:
    """Uniform neighbour choice along the labels; lazy chains hold with probability 1/2."""
    n = graph.n_vertices
    matrix = np.zeros((n, n))
    rows = np.repeat(np.arange(n), graph.degree)
    np.add.at(matrix, (rows, graph.labelling.reshape(-1)), 1.0 / graph.degree)
    if lazy:
        matrix = 0.5 * (np.eye(n) + matrix)
    return matrix


def lazy_cycle_chain(n: int) -> NDArray[np.float64]:
    return simple_random_walk_chain(cycle_graph(n), lazy=True)
