"""Quantum channels in Kraus form, their vectorization and iterated application."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import (
    CapacityExceededError,
    ChannelError,
    DimensionMismatchError,
    InvalidParameterError,
)
from qwalk_lab.states import DensityMatrix

KRAUS_TOL = 1e-10

ComplexArray = NDArray[np.complex128]


@dataclass(frozen=True, eq=False)
class Superoperator:
    """T(rho) = sum_i K_i rho K_i^dagger + q Tr(rho) I / N.

    ``replacement`` is the weight q of the completely depolarizing part. It
    stands for the N^2 Kraus operators sqrt(q / N) |x><y| without storing them.
    """

    kraus: ComplexArray
    replacement: float = 0.0
    name: str = "channel"

    @classmethod
    def from_kraus(
        cls, operators: ArrayLike, *, replacement: float = 0.0, name: str = "channel"
    ) -> Superoperator:
        stack = np.array(operators, dtype=np.complex128)
        if stack.ndim == 2:  # noqa: PLR2004
            stack = stack[None]
        if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:  # noqa: PLR2004
            raise DimensionMismatchError(f"Kraus operators must be N x N, got {stack.shape}")
        if not 0.0 <= replacement <= 1.0:
            raise InvalidParameterError(f"replacement weight must lie in [0, 1], got {replacement}")
        stack.setflags(write=False)
        channel = cls(kraus=stack, replacement=replacement, name=name)
        residual = channel.kraus_residual()
        if residual > KRAUS_TOL:
            raise ChannelError(
                f"channel '{name}' is not trace preserving (Kraus residual {residual:.2e})"
            )
        return channel

    @property
    def dim(self) -> int:
        return int(self.kraus.shape[1])

    @property
    def n_kraus(self) -> int:
        extra = self.dim**2 if self.replacement > 0.0 else 0
        return int(self.kraus.shape[0]) + extra

    def kraus_residual(self) -> float:
        """max |(sum K^dagger K - I)_ij| with the depolarizing part included."""
        completeness = np.einsum("kji,kjl->il", self.kraus.conj(), self.kraus)
        completeness += self.replacement * np.eye(self.dim)
        return float(np.max(np.abs(completeness - np.eye(self.dim))))

    def kraus_operators(self) -> ComplexArray:
        """Every Kraus operator, the depolarizing part expanded (N^2 extra matrices)."""
        if self.replacement == 0.0:
            return self.kraus
        n = self.dim
        units = np.zeros((n * n, n, n), dtype=np.complex128)
        rows, cols = np.divmod(np.arange(n * n), n)
        units[np.arange(n * n), rows, cols] = np.sqrt(self.replacement / n)
        return np.concatenate([self.kraus, units])

    @cached_property
    def vectorized(self) -> ComplexArray:
        """N^2 x N^2 matrix L with vec(T(rho)) = L vec(rho), row-major vec."""
        cap = get_settings().vector_cap
        if self.dim > cap:
            raise CapacityExceededError(
                f"channel '{self.name}' has dimension {self.dim} above the vectorization cap {cap}"
            )
        matrix = np.einsum("kij,klm->iljm", self.kraus, self.kraus.conj()).reshape(
            self.dim**2, self.dim**2
        )
        if self.replacement > 0.0:
            identity = np.eye(self.dim).reshape(-1)
            matrix = matrix + (self.replacement / self.dim) * np.outer(identity, identity)
        return matrix

    def apply(self, matrix: ArrayLike) -> ComplexArray:
        """One application to an arbitrary N x N matrix."""
        rho = np.asarray(matrix, dtype=np.complex128)
        if rho.shape != (self.dim, self.dim):
            raise DimensionMismatchError(
                f"channel acts on {self.dim} x {self.dim}, got {rho.shape}"
            )
        out = np.sum(self.kraus @ rho @ self.kraus.conj().transpose(0, 2, 1), axis=0)
        if self.replacement > 0.0:
            out += (self.replacement * np.trace(rho) / self.dim) * np.eye(self.dim)
        return out

    def power(self, matrix: ArrayLike, t: int) -> ComplexArray:
        if t < 0:
            raise InvalidParameterError(f"number of steps must be >= 0, got {t}")
        out = np.array(matrix, dtype=np.complex128)
        for _ in range(t):
            out = self.apply(out)
        return out


def apply_channel(channel: Superoperator, rho: DensityMatrix, t: int = 1) -> DensityMatrix:
    """T^t(rho), re-Hermitized after the last step."""
    if rho.dim != channel.dim:
        raise DimensionMismatchError(f"channel dim {channel.dim}, density matrix {rho.dim}")
    out = channel.power(rho.matrix, t)
    return DensityMatrix(matrix=(out + out.conj().T) / 2)
