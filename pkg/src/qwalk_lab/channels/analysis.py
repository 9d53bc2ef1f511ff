"""Contraction, primitivity and stationary densities of channels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import structlog
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.channels.superoperator import Superoperator
from qwalk_lab.core.config import get_settings
from qwalk_lab.core.contracts import (
    CertificateRoute,
    PrimitivityCertificate,
    StationaryReport,
    Verdict,
)
from qwalk_lab.core.exceptions import (
    CapacityExceededError,
    InvalidParameterError,
    StationaryDensityError,
)
from qwalk_lab.core.rng import STREAM_CONTRACTION, STREAM_PROBES, make_rng
from qwalk_lab.states import DensityMatrix, trace_norm

logger = structlog.get_logger()

CONTRACTION_TOL = 1e-10
STATIONARY_TOL = 1e-10
# Eigenvalues this close to 1 count towards the eigenvalue-1 rank.
ONE_TOL = 1e-8
# eta in [1 - BORDERLINE_FACTOR * tol, 1 - tol) is too close to call.
BORDERLINE_FACTOR = 100.0
PROBE_BASIS_STATES = 8
PROBE_RANDOM_STATES = 4
POLISH_STEPS = 200

ComplexArray = NDArray[np.complex128]


def _random_hermitian(rng: np.random.Generator, dim: int) -> ComplexArray:
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (raw + raw.conj().T) / 2


def contraction_check(channel: Superoperator, samples: int = 100, seed: int = 0) -> bool:
    """||T(A)||_1 <= ||A||_1 for *samples* random Hermitian A of mixed sign and trace."""
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1, got {samples}")
    rng = make_rng(seed, STREAM_CONTRACTION)
    for index in range(samples):
        sample = _random_hermitian(rng, channel.dim) * rng.uniform(0.1, 10.0)
        before = trace_norm(sample)
        after = trace_norm(channel.apply(sample))
        if after > before + CONTRACTION_TOL * max(1.0, before):
            logger.warning("channel.contraction_failed", sample=index, before=before, after=after)
            return False
    return True


def _eigenvalues(channel: Superoperator) -> ComplexArray:
    return np.asarray(scipy.linalg.eigvals(channel.vectorized), dtype=np.complex128)


def _drop_nearest_one(eigenvalues: ComplexArray) -> ComplexArray:
    return np.delete(eigenvalues, int(np.argmin(np.abs(eigenvalues - 1.0))))


def traceless_spectral_radius(channel: Superoperator) -> float:
    """eta: spectral radius of T on trace-zero matrices.

    T preserves the trace, so its spectrum there is the full spectrum with one
    copy of the eigenvalue 1 removed.
    """
    rest = _drop_nearest_one(_eigenvalues(channel))
    return float(np.max(np.abs(rest), initial=0.0))


def eigenvalue_one_structure(
    vectorized: ArrayLike, eigenvalues: ArrayLike | None = None
) -> tuple[int, int]:
    """(multiplicity, rank) of the eigenvalue 1 of a vectorized map L.

    The multiplicity is dim ker(L - I). The rank is sup_p dim ker(L - I)^p,
    the size of the generalized eigenspace, read off as the number of
    eigenvalues within ONE_TOL of 1. The eigenvalue is simple when the rank is 1.
    """
    matrix = np.asarray(vectorized, dtype=np.complex128)
    values = scipy.linalg.eigvals(matrix) if eigenvalues is None else np.asarray(eigenvalues)
    singular = scipy.linalg.svdvals(matrix - np.eye(matrix.shape[0]))
    multiplicity = int(np.sum(singular <= ONE_TOL))
    rank = int(np.sum(np.abs(values - 1.0) <= ONE_TOL))
    return multiplicity, rank


@dataclass(frozen=True, eq=False)
class StationaryDensity:
    """A fixed point of the channel and how well it is fixed."""

    rho: DensityMatrix
    residual: float
    method: str

    def to_report(self) -> StationaryReport:
        return StationaryReport(
            dim=self.rho.dim,
            residual=self.residual,
            min_eigenvalue=float(np.linalg.eigvalsh(self.rho.matrix)[0]),
            diagonal=self.rho.diagonal().tolist(),
            method=self.method,
        )


def _normalized_density(matrix: ComplexArray) -> ComplexArray:
    hermitian = (matrix + matrix.conj().T) / 2
    return hermitian / np.trace(hermitian).real


def _residual(channel: Superoperator, matrix: ComplexArray) -> float:
    return trace_norm(channel.apply(matrix) - matrix)


def _spectral_fixed_point(channel: Superoperator) -> ComplexArray:
    """Spectral projection of I/N onto the eigenvalue-1 space: R (W^H R)^-1 W^H vec(I/N)."""
    values, left, right = scipy.linalg.eig(channel.vectorized, left=True, right=True)
    near = np.flatnonzero(np.abs(values - 1.0) <= ONE_TOL)
    if near.size == 0:
        raise StationaryDensityError("the vectorized channel has no eigenvalue within 1e-8 of 1")
    r, w = right[:, near], left[:, near]
    start = np.eye(channel.dim).reshape(-1) / channel.dim
    coefficients = np.linalg.solve(w.conj().T @ r, w.conj().T @ start)
    return _normalized_density((r @ coefficients).reshape(channel.dim, channel.dim))


def _iterated_fixed_point(channel: Superoperator, tol: float) -> tuple[ComplexArray, str]:
    """Power iteration from I/N, falling back to the Cesaro average of the iterates."""
    cap = get_settings().channel_step_cap
    current = np.eye(channel.dim, dtype=np.complex128) / channel.dim
    average = np.zeros_like(current)
    for step in range(1, cap + 1):
        average += (current - average) / step
        current = channel.apply(current)
        if _residual(channel, current) <= tol:
            return current, "power"
    if _residual(channel, average) <= tol:
        return average, "cesaro"
    raise StationaryDensityError(f"no fixed point within {tol:.0e} after {cap} steps")


def stationary_density(channel: Superoperator, tol: float = STATIONARY_TOL) -> StationaryDensity:
    """rho_st with T(rho_st) = rho_st, Hermitized and of unit trace."""
    if channel.dim <= get_settings().vector_cap:
        matrix = _spectral_fixed_point(channel)
        method = "spectral"
        for _ in range(POLISH_STEPS):
            if _residual(channel, matrix) <= tol:
                break
            matrix = _normalized_density(channel.apply(matrix))
    else:
        matrix, method = _iterated_fixed_point(channel, tol)

    matrix = _normalized_density(matrix)
    residual = _residual(channel, matrix)
    if residual > tol:
        raise StationaryDensityError(f"fixed-point residual {residual:.2e} exceeds {tol:.0e}")
    logger.debug("channel.stationary", method=method, residual=residual)
    return StationaryDensity(rho=DensityMatrix(matrix=matrix), residual=residual, method=method)


def _probe_states(channel: Superoperator, seed: int) -> list[ComplexArray]:
    dim = channel.dim
    sites = np.unique(np.linspace(0, dim - 1, num=min(PROBE_BASIS_STATES, dim)).astype(int))
    states = [DensityMatrix.basis_projector(dim, int(x)).matrix for x in sites]
    rng = make_rng(seed, STREAM_PROBES)
    for _ in range(PROBE_RANDOM_STATES):
        vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        vec /= np.linalg.norm(vec)
        states.append(np.outer(vec, vec.conj()))
    return states


def _probe(
    channel: Superoperator, start: ComplexArray, cap: int, positivity_tol: float
) -> int | None:
    """First n <= cap with T^n(rho) strictly positive, relative to its trace."""
    current = start
    for step in range(1, cap + 1):
        current = channel.apply(current)
        hermitian = (current + current.conj().T) / 2
        if np.linalg.eigvalsh(hermitian)[0] > positivity_tol * np.trace(hermitian).real:
            return step
    return None


def primitivity_check(
    channel: Superoperator,
    probe_cap: int | None = None,
    tol: float | None = None,
    *,
    probe_only: bool = False,
    seed: int = 0,
) -> PrimitivityCertificate:
    """Decide whether the channel is strongly positive.

    The spectral route is authoritative: eigenvalue 1 simple (one eigenvalue
    near 1 with a one-dimensional fixed space), every other eigenvalue inside
    the disc of radius 1 - tol, and a strictly positive fixed point. Probes
    only corroborate; on their own the verdict is at best inconclusive.
    """
    settings = get_settings()
    cap = settings.probe_cap if probe_cap is None else probe_cap
    peripheral_tol = settings.peripheral_tol if tol is None else tol
    positivity_tol = settings.positivity_tol

    if channel.dim > settings.vector_cap and not probe_only:
        raise CapacityExceededError(
            f"channel dimension {channel.dim} exceeds the vectorization cap "
            f"{settings.vector_cap}; rerun with the probe route"
        )
    probe_steps = [_probe(channel, s, cap, positivity_tol) for s in _probe_states(channel, seed)]
    if probe_only:
        failed = sum(step is None for step in probe_steps)
        notes = [
            "probe route only: finitely many states cannot prove strong positivity",
            f"{failed} of {len(probe_steps)} probes never became strictly positive",
        ]
        return PrimitivityCertificate(
            verdict=Verdict.INCONCLUSIVE,
            route=CertificateRoute.PROBE,
            dim=channel.dim,
            probe_steps=probe_steps,
            notes=notes,
        )

    eigenvalues = _eigenvalues(channel)
    moduli = np.abs(eigenvalues)
    radius = float(moduli.max())
    peripheral = eigenvalues[moduli >= radius - peripheral_tol]
    multiplicity, rank = eigenvalue_one_structure(channel.vectorized, eigenvalues)
    eta = float(np.max(np.abs(_drop_nearest_one(eigenvalues)), initial=0.0))

    notes: list[str] = []
    fixed_min: float | None = None
    try:
        fixed = stationary_density(channel)
        fixed_min = float(np.linalg.eigvalsh(fixed.rho.matrix)[0])
    except StationaryDensityError as exc:
        notes.append(str(exc))

    if abs(radius - 1.0) > peripheral_tol:
        notes.append(f"spectral radius {radius:.12g} differs from 1")
    if multiplicity != 1 or rank != 1:
        notes.append(f"eigenvalue 1 has multiplicity {multiplicity} and rank {rank}")
    if eta >= 1.0 - peripheral_tol:
        notes.append(f"another eigenvalue lies on the unit circle (eta = {eta:.12g})")
    if fixed_min is not None and fixed_min <= positivity_tol:
        notes.append(f"fixed point is not strictly positive (min eigenvalue {fixed_min:.3e})")

    if notes:
        verdict = Verdict.NOT_PRIMITIVE
    elif eta >= 1.0 - BORDERLINE_FACTOR * peripheral_tol:
        verdict = Verdict.INCONCLUSIVE
        notes.append(f"eta = {eta:.12g} is within {BORDERLINE_FACTOR:g} tol of the unit circle")
    else:
        verdict = Verdict.PRIMITIVE

    logger.info("channel.certified", channel=channel.name, verdict=verdict.value, eta=eta)
    return PrimitivityCertificate(
        verdict=verdict,
        route=CertificateRoute.SPECTRAL,
        dim=channel.dim,
        spectral_radius=radius,
        peripheral_eigenvalues=[(float(z.real), float(z.imag)) for z in peripheral],
        eigenvalue_one_multiplicity=multiplicity,
        eigenvalue_one_rank=rank,
        fixed_point_min_eigenvalue=fixed_min,
        eta=eta,
        probe_steps=probe_steps,
        notes=notes,
    )
