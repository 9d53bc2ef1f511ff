"""Unitaries with a prescribed real orthogonal eigenbasis."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import ortho_group

from qwalk_lab.core.exceptions import InvalidParameterError
from qwalk_lab.core.rng import make_rng
from qwalk_lab.walks.operators import UnitaryWalk, walk_from_matrix

MIN_SYNTHETIC_DIM = 2


def real_eigenbasis_walk(
    phases: ArrayLike, *, seed: int = 0
) -> tuple[UnitaryWalk, NDArray[np.float64]]:
    """U = V diag(e^{i beta}) V^T with V Haar-random in O(N).

    Every eigenvector is real, so the two-eigenvector lower bound applies to U
    exactly. Returns the walk and V (column k has phase ``phases[k]``).
    """
    betas = np.asarray(phases, dtype=np.float64).reshape(-1)
    if betas.size < MIN_SYNTHETIC_DIM:
        raise InvalidParameterError(f"need at least {MIN_SYNTHETIC_DIM} phases, got {betas.size}")
    basis = ortho_group.rvs(dim=betas.size, random_state=make_rng(seed))
    matrix = (basis * np.exp(1j * betas)[None, :]) @ basis.T
    walk = walk_from_matrix(matrix, name=f"real-eigenbasis:{betas.size}")
    return walk, np.asarray(basis, dtype=np.float64)
