"""Time-averaged distributions and the averaged distance d(T, psi)."""

from __future__ import annotations

from enum import StrEnum

import numpy as np
import structlog
from numpy.typing import NDArray

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    StepBudgetExceededError,
)
from qwalk_lab.spectral.decomposition import SpectralDecomposition, decompose
from qwalk_lab.states import Distribution, WaveFunction
from qwalk_lab.walks.operators import UnitaryWalk

logger = structlog.get_logger()

CURVE_CHUNK = 1024

RealArray = NDArray[np.float64]
ComplexArray = NDArray[np.complex128]


class DistanceMode(StrEnum):
    SPECTRAL = "spectral"
    BRUTEFORCE = "bruteforce"


def _components(spec: SpectralDecomposition, psi: WaveFunction) -> ComplexArray:
    if psi.size != spec.dim:
        raise DimensionMismatchError(f"decomposition has dim {spec.dim}, state {psi.size}")
    return spec.components(psi.amplitudes)


def _limit(components: ComplexArray) -> RealArray:
    return np.sum(np.abs(components) ** 2, axis=0)


def averaged_distribution(spec: SpectralDecomposition, psi: WaveFunction) -> Distribution:
    """p(x) = sum_k |(P_k psi)(x)|^2, the Cesaro limit of |psi_t(x)|^2."""
    return Distribution.from_probabilities(_limit(_components(spec, psi)), psi.dims)


def averaging_kernel(delta: NDArray[np.float64], T: int) -> ComplexArray:
    """(1/T) sum_{t<T} e^{i delta t} for nonzero delta (mod 2 pi)."""
    step = np.exp(1j * delta)
    return (np.exp(1j * delta * T) - 1.0) / (T * (step - 1.0))


def _spectral_distance(spec: SpectralDecomposition, components: ComplexArray, T: int) -> float:
    delta = spec.phases[:, None] - spec.phases[None, :]
    off_diagonal = ~np.eye(spec.m, dtype=bool)
    kernel = np.zeros((spec.m, spec.m), dtype=np.complex128)
    kernel[off_diagonal] = averaging_kernel(delta[off_diagonal], T)
    # p_T(x) - p(x) = sum_{k != l} g_T(beta_k - beta_l) a_k(x) conj(a_l(x))
    cross = np.real(np.sum(components * (kernel @ components.conj()), axis=0))
    return float(np.sum(np.abs(cross)))


def _bruteforce_distance(
    walk: UnitaryWalk, psi: WaveFunction, T: int, limit: RealArray
) -> float:
    budget = get_settings().step_budget
    if T > budget:
        raise StepBudgetExceededError(
            f"brute-force averaging over T={T} steps exceeds the step budget {budget}"
        )
    current = psi.amplitudes.astype(np.complex128)
    total = np.zeros(walk.dim)
    for _ in range(T):
        total += np.abs(current) ** 2
        current = walk.apply(current)
    return float(np.sum(np.abs(total / T - limit)))


def averaged_distance(
    source: UnitaryWalk | SpectralDecomposition,
    psi: WaveFunction,
    T: int,
    *,
    mode: DistanceMode | str = DistanceMode.SPECTRAL,
    spec: SpectralDecomposition | None = None,
) -> float:
    """d(T, psi) = sum_x |p_T(x) - p(x)| with p_T the average over t = 0..T-1.

    ``spectral`` evaluates the cross-term expansion exactly in O(N m^2).
    ``bruteforce`` steps the walk *T* times; it needs a walk and takes the
    limit p from *spec* (or a fresh numeric decomposition).
    """
    if T < 1:
        raise InvalidParameterError(f"T must be >= 1, got {T}")
    mode = DistanceMode(mode)
    if isinstance(source, SpectralDecomposition):
        spec = source
    elif spec is None:
        spec = decompose(source)
    components = _components(spec, psi)

    match mode:
        case DistanceMode.SPECTRAL:
            return _spectral_distance(spec, components, T)
        case DistanceMode.BRUTEFORCE:
            if not isinstance(source, UnitaryWalk):
                raise InvalidParameterError("bruteforce mode needs the walk itself")
            return _bruteforce_distance(source, psi, T, _limit(components))


def distance_curve(spec: SpectralDecomposition, psi: WaveFunction, t_max: int) -> RealArray:
    """d(T) for T = 1..t_max, from psi_t = sum_k e^{i beta_k t} P_k psi in batches."""
    if t_max < 1:
        raise InvalidParameterError(f"t_max must be >= 1, got {t_max}")
    components = _components(spec, psi)
    limit = _limit(components)
    curve = np.empty(t_max)
    running = np.zeros(spec.dim)
    for start in range(0, t_max, CURVE_CHUNK):
        times = np.arange(start, min(start + CURVE_CHUNK, t_max))
        states = np.exp(1j * np.outer(times, spec.phases)) @ components
        cumulative = running + np.cumsum(np.abs(states) ** 2, axis=0)
        curve[times] = np.sum(np.abs(cumulative / (times + 1)[:, None] - limit), axis=1)
        running = cumulative[-1]
    return curve


def distance_envelope(spec: SpectralDecomposition, psi: WaveFunction) -> float:
    """B with d(T, psi) <= B / T for every T.

    B = 2 sum_{k != l} |c_k| |c_l| / |lambda_k conj(lambda_l) - 1| with
    |c_k| = ||P_k psi||, since |g_T| <= 2 / (T |lambda_k conj(lambda_l) - 1|).
    """
    weights = np.linalg.norm(_components(spec, psi), axis=1)
    chord = np.abs(np.exp(1j * (spec.phases[:, None] - spec.phases[None, :])) - 1.0)
    np.fill_diagonal(chord, np.inf)
    return float(2.0 * weights @ (1.0 / chord) @ weights)
