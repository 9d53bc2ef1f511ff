"""State types, norms, distances and the overlap functional.

Sites are flattened vertex-major: ``flat = vertex * n_chiralities + chirality``.
Every module shares this layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NormalizationError,
)

UNIT_TOL = 1e-12
RENORMALIZE_TOL = 1e-6
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10

ComplexArray = NDArray[np.complex128]
RealArray = NDArray[np.float64]


class NormKind(StrEnum):
    TRACE = "trace"
    L2 = "l2"
    L2_MU = "l2_mu"


@dataclass(frozen=True)
class SiteIndex:
    """A pair (vertex, chirality)."""

    vertex: int
    chirality: int

    def flat(self, n_chiralities: int) -> int:
        return self.vertex * n_chiralities + self.chirality

    @classmethod
    def from_flat(cls, index: int, n_chiralities: int) -> SiteIndex:
        vertex, chirality = divmod(index, n_chiralities)
        return cls(vertex=vertex, chirality=chirality)


def _check_dims(dims: tuple[int, int], length: int) -> tuple[int, int]:
    n_vertices, n_chiralities = (int(d) for d in dims)
    if n_vertices < 1 or n_chiralities < 1:
        raise InvalidParameterError(f"dims must be positive, got {dims}")
    if n_vertices * n_chiralities != length:
        raise DimensionMismatchError(
            f"dims {dims} describe {n_vertices * n_chiralities} sites, vector has {length}"
        )
    return n_vertices, n_chiralities


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Unit-norm complex amplitude vector over vertex x chirality sites."""

    amplitudes: ComplexArray
    dims: tuple[int, int]

    @classmethod
    def from_amplitudes(cls, amplitudes: ArrayLike, dims: tuple[int, int]) -> WaveFunction:
        """Validate and renormalize; norms further than 1e-6 from one are rejected."""
        vec = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        checked = _check_dims(dims, vec.size)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > RENORMALIZE_TOL:
            raise NormalizationError(f"wave function norm {norm:.3e} is not within 1e-6 of 1")
        if abs(norm - 1.0) > UNIT_TOL:
            vec = vec / norm
        vec.setflags(write=False)
        return cls(amplitudes=vec, dims=checked)

    @classmethod
    def normalized(cls, amplitudes: ArrayLike, dims: tuple[int, int]) -> WaveFunction:
        """Scale an arbitrary nonzero vector to unit norm."""
        vec = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return cls.from_amplitudes(vec / norm, dims)

    @classmethod
    def basis(cls, dims: tuple[int, int], site: SiteIndex | int) -> WaveFunction:
        n_vertices, n_chiralities = dims
        index = site.flat(n_chiralities) if isinstance(site, SiteIndex) else int(site)
        size = n_vertices * n_chiralities
        if not 0 <= index < size:
            raise InvalidParameterError(f"site {index} outside [0, {size})")
        vec = np.zeros(size, dtype=np.complex128)
        vec[index] = 1.0
        return cls.from_amplitudes(vec, dims)

    @property
    def size(self) -> int:
        return int(self.amplitudes.size)

    def probabilities(self) -> Distribution:
        return Distribution.from_probabilities(np.abs(self.amplitudes) ** 2, self.dims)

    def with_phase(self, phase: float) -> WaveFunction:
        return WaveFunction.from_amplitudes(np.exp(1j * phase) * self.amplitudes, self.dims)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "dims": list(self.dims),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json_dict(cls, payload: dict[str, Any]) -> WaveFunction:
        pairs = np.asarray(payload["amplitudes"], dtype=np.float64).reshape(-1, 2)
        dims = tuple(payload["dims"])
        return cls.from_amplitudes(pairs[:, 0] + 1j * pairs[:, 1], (dims[0], dims[1]))


@dataclass(frozen=True, eq=False)
class Distribution:
    """Nonnegative real weights over sites."""

    probabilities: RealArray
    dims: tuple[int, int]

    @classmethod
    def from_probabilities(
        cls, probabilities: ArrayLike, dims: tuple[int, int], *, full: bool = True
    ) -> Distribution:
        vec = np.array(probabilities, dtype=np.float64).reshape(-1)
        checked = _check_dims(dims, vec.size)
        if np.any(vec < -UNIT_TOL):
            raise InvalidParameterError("probabilities must be nonnegative")
        vec = np.clip(vec, 0.0, None)
        if full:
            total = float(vec.sum())
            if abs(total - 1.0) > RENORMALIZE_TOL:
                raise NormalizationError(f"probabilities sum to {total:.3e}, not 1")
            vec = vec / total
        vec.setflags(write=False)
        return cls(probabilities=vec, dims=checked)

    def vertex_marginal(self) -> RealArray:
        return self.probabilities.reshape(self.dims).sum(axis=1)

    def to_json_dict(self) -> dict[str, Any]:
        return {"dims": list(self.dims), "probabilities": [float(p) for p in self.probabilities]}

    @classmethod
    def from_json_dict(cls, payload: dict[str, Any]) -> Distribution:
        dims = tuple(payload["dims"])
        return cls.from_probabilities(payload["probabilities"], (dims[0], dims[1]))


def _hermitian_matrix(matrix: ArrayLike) -> ComplexArray:
    mat = np.array(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T), initial=0.0) > HERMITIAN_TOL * max(
        1.0, float(np.max(np.abs(mat), initial=0.0))
    ):
        raise InvalidParameterError("matrix is not Hermitian within 1e-12")
    return (mat + mat.conj().T) / 2


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Hermitian operator on the site space (not necessarily positive)."""

    matrix: ComplexArray

    @classmethod
    def from_matrix(cls, matrix: ArrayLike) -> HermitianOperator:
        return cls(matrix=_hermitian_matrix(matrix))

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    matrix: ComplexArray

    @classmethod
    def from_matrix(cls, matrix: ArrayLike) -> DensityMatrix:
        mat = _hermitian_matrix(matrix)
        trace = float(np.trace(mat).real)
        if abs(trace - 1.0) > RENORMALIZE_TOL:
            raise NormalizationError(f"density matrix trace {trace:.3e} is not 1")
        if abs(trace - 1.0) > UNIT_TOL:
            mat = mat / trace
        min_eig = float(np.linalg.eigvalsh(mat)[0])
        if min_eig < -PSD_TOL:
            raise InvalidParameterError(f"density matrix has eigenvalue {min_eig:.3e} < 0")
        return cls(matrix=mat)

    @classmethod
    def pure(cls, psi: WaveFunction) -> DensityMatrix:
        return cls.from_matrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))

    @classmethod
    def basis_projector(cls, dim: int, index: int) -> DensityMatrix:
        mat = np.zeros((dim, dim), dtype=np.complex128)
        mat[index, index] = 1.0
        return cls(matrix=mat)

    @classmethod
    def maximally_mixed(cls, dim: int) -> DensityMatrix:
        return cls(matrix=np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def diagonal(self) -> RealArray:
        return np.real(np.diag(self.matrix)).astype(np.float64)


def _amplitudes(state: WaveFunction | ArrayLike) -> ComplexArray:
    if isinstance(state, WaveFunction):
        return state.amplitudes
    return np.asarray(state, dtype=np.complex128).reshape(-1)


def _weights(dist: Distribution | ArrayLike) -> RealArray:
    if isinstance(dist, Distribution):
        return dist.probabilities
    return np.asarray(dist, dtype=np.float64).reshape(-1)


def overlap(phi: WaveFunction | ArrayLike, psi: WaveFunction | ArrayLike) -> float:
    """Sum over sites of |phi(x) psi(x)|."""
    a, b = _amplitudes(phi), _amplitudes(psi)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"overlap of vectors of length {a.size} and {b.size}")
    return float(np.sum(np.abs(a) * np.abs(b)))


def tv_distance(p: Distribution | ArrayLike, q: Distribution | ArrayLike) -> float:
    """L1 distance sum_x |p(x) - q(x)|, in [0, 2] for distributions."""
    a, b = _weights(p), _weights(q)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"tv_distance of lengths {a.size} and {b.size}")
    return float(np.sum(np.abs(a - b)))


def trace_norm(matrix: ArrayLike) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    mat = np.asarray(matrix, dtype=np.complex128)
    return float(np.sum(np.abs(np.linalg.eigvalsh((mat + mat.conj().T) / 2))))


def operator_norm(
    operator: HermitianOperator | DensityMatrix,
    kind: NormKind | str,
    mu: DensityMatrix | None = None,
) -> float:
    """Trace, Hilbert-Schmidt or mu-weighted L2 norm of a Hermitian operator."""
    kind = NormKind(kind)
    mat = operator.matrix
    if (kind is NormKind.L2_MU) != (mu is not None):
        raise InvalidParameterError("mu must be supplied exactly when kind is l2_mu")
    match kind:
        case NormKind.TRACE:
            return trace_norm(mat)
        case NormKind.L2:
            return float(np.sqrt(max(np.trace(mat @ mat).real, 0.0)))
        case NormKind.L2_MU:
            assert mu is not None
            if not isinstance(mu, DensityMatrix):
                raise InvalidParameterError("mu must be a DensityMatrix")
            if mu.dim != mat.shape[0]:
                raise DimensionMismatchError(f"mu has dim {mu.dim}, operator {mat.shape[0]}")
            return float(np.sqrt(max(np.trace(mu.matrix @ mat @ mat).real, 0.0)))
