"""Coin operators acting on the chirality register."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.exceptions import CoinError

COIN_UNITARY_TOL = 1e-12
HADAMARD_DIM = 2


class CoinKind(StrEnum):
    HADAMARD = "hadamard"
    GROVER = "grover"
    FOURIER = "fourier"
    IDENTITY = "identity"


@dataclass(frozen=True, eq=False)
class Coin:
    """A d x d unitary matrix."""

    matrix: NDArray[np.complex128]
    kind: str = "custom"

    @classmethod
    def from_matrix(cls, matrix: ArrayLike, kind: str = "custom") -> Coin:
        mat = np.array(matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:  # noqa: PLR2004
            raise CoinError(f"coin must be a non-empty square matrix, got shape {mat.shape}")
        residual = unitarity_residual(mat)
        if residual > COIN_UNITARY_TOL:
            raise CoinError(f"coin is not unitary (residual {residual:.2e})")
        mat.setflags(write=False)
        return cls(matrix=mat, kind=kind)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


def unitarity_residual(matrix: NDArray[np.complex128]) -> float:
    """max |(M^dagger M - I)_ij|."""
    eye = np.eye(matrix.shape[0], dtype=np.complex128)
    return float(np.max(np.abs(matrix.conj().T @ matrix - eye), initial=0.0))


def standard_coin(kind: CoinKind | str, d: int) -> Coin:
    """Build one of the standard coins of dimension *d*."""
    try:
        kind = CoinKind(kind)
    except ValueError:
        valid = [k.value for k in CoinKind]
        raise CoinError(f"Unknown coin kind '{kind}'. Valid: {valid}") from None
    if d < 1:
        raise CoinError(f"coin dimension must be >= 1, got {d}")

    match kind:
        case CoinKind.HADAMARD:
            if d != HADAMARD_DIM:
                raise CoinError(f"hadamard coin requires d = 2, got {d}")
            matrix = np.array([[1.0, 1.0], [-1.0, 1.0]], dtype=np.complex128) / np.sqrt(2.0)
        case CoinKind.GROVER:
            matrix = np.eye(d, dtype=np.complex128) - (2.0 / d) * np.ones((d, d))
        case CoinKind.FOURIER:
            jk = np.outer(np.arange(d), np.arange(d))
            matrix = np.exp(2j * np.pi * jk / d) / np.sqrt(d)
        case CoinKind.IDENTITY:
            matrix = np.eye(d, dtype=np.complex128)
    return Coin.from_matrix(matrix, kind=kind.value)
