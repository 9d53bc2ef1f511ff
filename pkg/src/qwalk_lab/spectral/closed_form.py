"""Closed-form eigen-systems of the cycle, hypercube and complete-graph walks.

These are independent oracles for the numeric decomposition, and the only
route to spectra above the dense cap.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np
import scipy.linalg
import structlog
from numpy.typing import NDArray

from qwalk_lab.core.exceptions import InvalidParameterError, UnknownEntryError
from qwalk_lab.core.rng import make_rng
from qwalk_lab.spectral.decomposition import SpectralDecomposition, circular_distance
from qwalk_lab.states import overlap
from qwalk_lab.walks.coins import standard_coin
from qwalk_lab.walks.graphs import cycle_graph
from qwalk_lab.walks.operators import (
    UnitaryWalk,
    build_coined_walk,
    complete_graph_walk,
    hypercube_walk,
)

logger = structlog.get_logger()

TWO_PI = 2.0 * np.pi
SQRT2 = np.sqrt(2.0)
RESIDUAL_PROBE_SEED = 20_240_615

ComplexArray = NDArray[np.complex128]
VectorSource = Callable[[int, int | None], list[ComplexArray]]

MIN_N: dict[str, int] = {"cycle": 3, "hypercube": 2, "complete": 2}


@dataclass(frozen=True, eq=False)
class ClosedFormSpectrum:
    """Analytic phases, multiplicities and eigenvector generators of one walk family."""

    family: str
    n: int
    dim: int
    phases: NDArray[np.float64]
    multiplicities: tuple[int, ...]
    vector_source: VectorSource
    decomposition_factory: Callable[[], SpectralDecomposition]
    walk_factory: Callable[[], UnitaryWalk]

    @property
    def m(self) -> int:
        return len(self.multiplicities)

    def vectors_for(self, k: int, limit: int | None = None) -> list[ComplexArray]:
        """Unit eigenvectors with phase ``phases[k]``, in generator order."""
        return self.vector_source(k, limit)

    def eigenvectors(self, limit_per_phase: int | None = None) -> list[tuple[int, ComplexArray]]:
        return [
            (k, vec) for k in range(self.m) for vec in self.vectors_for(k, limit_per_phase)
        ]

    @cached_property
    def decomposition(self) -> SpectralDecomposition:
        return self.decomposition_factory()

    def walk(self) -> UnitaryWalk:
        return self.walk_factory()


def _unit(vec: ComplexArray) -> ComplexArray:
    return vec / np.linalg.norm(vec)


def _orthonormal(vectors: list[ComplexArray]) -> ComplexArray:
    basis, _ = scipy.linalg.qr(np.stack(vectors, axis=1), mode="economic")
    return np.asarray(basis, dtype=np.complex128)


def _basis_residual(
    walk: UnitaryWalk, phases: NDArray[np.float64], bases: list[ComplexArray]
) -> float:
    residual = 0.0
    for phase, basis in zip(phases, bases, strict=True):
        defect = walk.apply(basis) - np.exp(1j * phase) * basis
        residual = max(residual, float(np.linalg.norm(defect, 2)))
    return residual


def _from_bases(
    family: str,
    n: int,
    phases: NDArray[np.float64],
    generators: list[list[ComplexArray]],
    walk_factory: Callable[[], UnitaryWalk],
) -> ClosedFormSpectrum:
    dim = generators[0][0].size
    multiplicities = tuple(len(g) for g in generators)

    def source(k: int, limit: int | None) -> list[ComplexArray]:
        chosen = generators[k] if limit is None else generators[k][:limit]
        return [_unit(v) for v in chosen]

    def factory() -> SpectralDecomposition:
        bases = [_orthonormal(g) for g in generators]
        residual = _basis_residual(walk_factory(), phases, bases)
        return SpectralDecomposition(
            phases=phases,
            multiplicities=multiplicities,
            dim=dim,
            residual=residual,
            bases=tuple(bases),
            source="closed_form",
        )

    return ClosedFormSpectrum(
        family=family,
        n=n,
        dim=dim,
        phases=phases,
        multiplicities=multiplicities,
        vector_source=source,
        decomposition_factory=factory,
        walk_factory=walk_factory,
    )


def cycle_block_eigenpair(n: int, k: int, sign: int) -> tuple[float, ComplexArray]:
    """Eigenphase and normalised chirality vector of the 2x2 block A_k.

    A_k = diag(e^{-i theta}, e^{i theta}) H with theta = 2 pi k / n, eigenvalues
    (cos theta +/- i sqrt(1 + sin^2 theta)) / sqrt 2, eigenvector (c, 1) with
    c = 1 - sqrt(2) t e^{-i theta}.
    """
    theta = TWO_PI * k / n
    t = (np.cos(theta) + sign * 1j * np.sqrt(1.0 + np.sin(theta) ** 2)) / SQRT2
    c = 1.0 - SQRT2 * t * np.exp(-1j * theta)
    return float(np.mod(np.angle(t), TWO_PI)), _unit(np.array([c, 1.0], dtype=np.complex128))


def cycle_eigenvector(n: int, k: int, sign: int) -> ComplexArray:
    """(c, 1) x chi_k laid out vertex-major, chi_k(v) = e^{2 pi i k v / n} / sqrt n."""
    _, chirality = cycle_block_eigenpair(n, k, sign)
    chi = np.exp(1j * TWO_PI * k * np.arange(n) / n) / np.sqrt(n)
    return np.outer(chi, chirality).reshape(-1)


def _cycle(n: int) -> ClosedFormSpectrum:
    keyed: dict[tuple[int, int], list[ComplexArray]] = {}
    phase_of: dict[tuple[int, int], float] = {}
    for k in range(n):
        for sign in (1, -1):
            key = (min(k, n - k), sign)
            phase, _ = cycle_block_eigenpair(n, key[0], sign)
            phase_of[key] = phase
            keyed.setdefault(key, []).append(cycle_eigenvector(n, k, sign))
    keys = sorted(keyed, key=lambda key: phase_of[key])
    phases = np.array([phase_of[key] for key in keys])

    def walk() -> UnitaryWalk:
        return build_coined_walk(cycle_graph(n), standard_coin("hadamard", 2))

    return _from_bases("cycle", n, phases, [keyed[key] for key in keys], walk)


def _complete(n: int) -> ClosedFormSpectrum:
    ones = np.ones(n)

    def unit_matrix(i: int, j: int) -> NDArray[np.float64]:
        e = np.zeros((n, n))
        e[i, j] = 1.0
        return e

    plus_one = [
        (unit_matrix(i, j) + unit_matrix(j, i) - unit_matrix(i, i) - unit_matrix(j, j))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    minus_one = [np.ones((n, n))]
    for j in range(1, n):
        for k in range(j + 1, n):
            minus_one.append(
                unit_matrix(0, j) - unit_matrix(j, 0)
                + unit_matrix(j, k) - unit_matrix(k, j)
                + unit_matrix(k, 0) - unit_matrix(0, k)
            )
    plus_i, minus_i = [], []
    for j in range(1, n):
        r = np.zeros(n)
        r[0], r[j] = 1.0, -1.0
        plus_i.append(np.outer(r, ones) - 1j * np.outer(ones, r))
        minus_i.append(np.outer(r, ones) + 1j * np.outer(ones, r))

    generators = [
        [np.asarray(x, dtype=np.complex128).reshape(-1) for x in group]
        for group in (plus_one, plus_i, minus_one, minus_i)
    ]
    phases = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
    return _from_bases("complete", n, phases, generators, lambda: complete_graph_walk(n))


def hypercube_phase_index(n: int, weight: int, sign: int) -> int:
    """Position of lambda_weight^sign among the 2n sorted phases."""
    return weight if sign > 0 else 2 * n - weight


def hypercube_phases(n: int) -> NDArray[np.float64]:
    k = np.arange(1, n)
    upper = np.arccos(1.0 - 2.0 * k / n)
    return np.concatenate([[0.0], upper, [np.pi], TWO_PI - upper[::-1]])


def hypercube_multiplicities(n: int) -> tuple[int, ...]:
    plus = 1 + (n - 1) + sum(comb(n, k) * (k - 1) for k in range(1, n))
    minus = (n - 1) + 1 + sum(comb(n, k) * (n - k - 1) for k in range(1, n))
    upper = [comb(n, k) for k in range(1, n)]
    return (plus, *upper, minus, *upper[::-1])


def hypercube_chirality_vector(n: int, bits: NDArray[np.bool_], sign: int) -> ComplexArray:
    """v_r = x^{1 - t_r}, x = sign * i sqrt(k / (n - k)), normalised (|v|^2 = 2k)."""
    k = int(bits.sum())
    x = sign * 1j * np.sqrt(k / (n - k))
    return np.where(bits, 1.0 + 0j, x) / np.sqrt(2.0 * k)


def _characters(n: int) -> tuple[NDArray[np.int64], NDArray[np.bool_]]:
    t = np.arange(2**n)
    bits = ((t[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    return bits.sum(axis=1), bits


def _character(n: int, t: int) -> NDArray[np.float64]:
    w = np.arange(2**n)
    parity = np.array([bin(x).count("1") & 1 for x in (w & t)])
    return (1.0 - 2.0 * parity) / np.sqrt(2.0**n)


def _zero_sum_vectors(n: int, support: NDArray[np.bool_]) -> list[ComplexArray]:
    idx = np.flatnonzero(support)
    vectors = []
    for j in idx[1:]:
        v = np.zeros(n, dtype=np.complex128)
        v[idx[0]], v[j] = 1.0, -1.0
        vectors.append(v / SQRT2)
    return vectors


def _hypercube_chirality_vectors(
    n: int, phase_index: int, weights: NDArray[np.int64], bits: NDArray[np.bool_], limit: int | None
) -> list[tuple[int, ComplexArray]]:
    """(character t, chirality vector) pairs spanning the eigenspace of *phase_index*."""
    out: list[tuple[int, ComplexArray]] = []
    for t in range(2**n):
        if limit is not None and len(out) >= limit:
            break
        k, mask = int(weights[t]), bits[t]
        if phase_index == 0:
            chirality = _zero_sum_vectors(n, mask)
            if k == 0:
                chirality = [np.ones(n, dtype=np.complex128) / np.sqrt(n)]
        elif phase_index == n:
            chirality = _zero_sum_vectors(n, ~mask)
            if k == n:
                chirality = [np.ones(n, dtype=np.complex128) / np.sqrt(n)]
        else:
            weight = phase_index if phase_index < n else 2 * n - phase_index
            sign = 1 if phase_index < n else -1
            chirality = [hypercube_chirality_vector(n, mask, sign)] if k == weight else []
        out.extend((t, v) for v in chirality)
    return out if limit is None else out[:limit]


def walsh_hadamard(array: ComplexArray, n: int, axis: int = 0) -> ComplexArray:
    """Orthonormal Walsh-Hadamard transform over an axis of length 2^n (self-inverse)."""
    moved = np.moveaxis(array, axis, 0)
    rest = moved.shape[1:]
    work = moved.reshape((2,) * n + rest)
    for bit_axis in range(n):
        a0 = np.take(work, 0, axis=bit_axis)
        a1 = np.take(work, 1, axis=bit_axis)
        work = np.stack([a0 + a1, a0 - a1], axis=bit_axis) / SQRT2
    return np.moveaxis(work.reshape((2**n, *rest)), 0, axis)


def _hypercube_components(n: int) -> Callable[[ComplexArray], ComplexArray]:
    weights, bits = _characters(n)
    m = 2 * n
    ones = np.ones(n)

    def components(vec: ComplexArray) -> ComplexArray:
        hat = walsh_hadamard(vec.reshape(2**n, n), n, axis=0)
        comps = np.zeros((m, 2**n, n), dtype=np.complex128)
        for k in range(n + 1):
            rows = np.flatnonzero(weights == k)
            y, mask = hat[rows], bits[rows]
            total_mean = y.mean(axis=1, keepdims=True)
            if k >= 1:
                mean1 = (y * mask).sum(axis=1, keepdims=True) / k
                comps[0, rows] += mask * (y - mean1)
            else:
                comps[0, rows] += total_mean * ones
            if k <= n - 1:
                mean0 = (y * ~mask).sum(axis=1, keepdims=True) / (n - k)
                comps[n, rows] += ~mask * (y - mean0)
            else:
                comps[n, rows] += total_mean * ones
            if 1 <= k <= n - 1:
                for sign in (1, -1):
                    x = sign * 1j * np.sqrt(k / (n - k))
                    u = np.where(mask, 1.0 + 0j, x) / np.sqrt(2.0 * k)
                    coef = np.sum(u.conj() * y, axis=1, keepdims=True)
                    comps[hypercube_phase_index(n, k, sign), rows] = coef * u
        return walsh_hadamard(comps.reshape(m, 2**n, n), n, axis=1).reshape(m, -1)

    return components


def _hypercube(n: int) -> ClosedFormSpectrum:
    phases = hypercube_phases(n)
    multiplicities = hypercube_multiplicities(n)
    weights, bits = _characters(n)
    dim = n * 2**n

    def source(k: int, limit: int | None) -> list[ComplexArray]:
        return [
            np.outer(_character(n, t), chirality).reshape(-1)
            for t, chirality in _hypercube_chirality_vectors(n, k, weights, bits, limit)
        ]

    def factory() -> SpectralDecomposition:
        component_fn = _hypercube_components(n)
        walk = hypercube_walk(n)
        rng = make_rng(RESIDUAL_PROBE_SEED)
        probe = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        comps = component_fn(probe)
        defects = walk.apply(comps.T).T - np.exp(1j * phases)[:, None] * comps
        norms = np.maximum(np.linalg.norm(comps, axis=1), 1e-300)
        residual = float(np.max(np.linalg.norm(defects, axis=1) / norms))
        return SpectralDecomposition(
            phases=phases,
            multiplicities=multiplicities,
            dim=dim,
            residual=residual,
            component_fn=component_fn,
            source="closed_form",
        )

    return ClosedFormSpectrum(
        family="hypercube",
        n=n,
        dim=dim,
        phases=phases,
        multiplicities=multiplicities,
        vector_source=source,
        decomposition_factory=factory,
        walk_factory=lambda: hypercube_walk(n),
    )


_BUILDERS: dict[str, Callable[[int], ClosedFormSpectrum]] = {
    "cycle": _cycle,
    "hypercube": _hypercube,
    "complete": _complete,
}


def closed_form_spectrum(family: str, n: int) -> ClosedFormSpectrum:
    """Analytic eigen-system of the named family's walk at size *n*."""
    if family not in _BUILDERS:
        raise UnknownEntryError(
            f"No closed form for family '{family}'. Available: {sorted(_BUILDERS)}"
        )
    if n < MIN_N[family]:
        raise InvalidParameterError(f"{family} closed form needs n >= {MIN_N[family]}, got {n}")
    spectrum = _BUILDERS[family](n)
    logger.debug("spectral.closed_form", family=family, n=n, m=spectrum.m)
    return spectrum


def hypercube_overlap(n: int, k: int, k_prime: int) -> float:
    """Largest overlap between eigenvectors of lambda_k and lambda_k' over all characters.

    |v_t x chi_t| is |v_t[s]| / sqrt(2^n) on every vertex, so the overlap only
    depends on how the supports T1, T1' intersect. Signs of x do not change moduli,
    so the + and - pairings give the same value.
    """
    a, b = 1.0 / np.sqrt(2.0 * (n - k)), 1.0 / np.sqrt(2.0 * k)
    a2, b2 = 1.0 / np.sqrt(2.0 * (n - k_prime)), 1.0 / np.sqrt(2.0 * k_prime)
    best = 0.0
    for j in range(max(0, k + k_prime - n), min(k, k_prime) + 1):
        c11, c10, c01 = j, k - j, k_prime - j
        c00 = n - k - k_prime + j
        best = max(best, c11 * b * b2 + c10 * b * a2 + c01 * a * b2 + c00 * a * a2)
    return float(best)


@dataclass(frozen=True)
class PairOverlap:
    """Overlap and arc gap of one pair of eigenspaces."""

    label: str
    k: int
    l: int  # noqa: E741
    gap: float
    overlap: float


def closest_pair_overlap(family: str, n: int) -> PairOverlap:
    """Q of the closest eigenpair that the family's mixing bound is built on.

    cycle: the k = 0 and k = 1 eigenvectors on the same branch; hypercube: the
    adjacent lambda_m^+ and lambda_{m+1}^+ with the smallest gap; complete: best
    generator pair between the 1 and i eigenspaces.
    """
    spectrum = closed_form_spectrum(family, n)
    match family:
        case "cycle":
            best: PairOverlap | None = None
            for sign in (1, -1):
                phase0, _ = cycle_block_eigenpair(n, 0, sign)
                phase1, _ = cycle_block_eigenpair(n, 1, sign)
                q = overlap(cycle_eigenvector(n, 0, sign), cycle_eigenvector(n, 1, sign))
                pair = PairOverlap(
                    label=f"k0/k1 branch {'+' if sign > 0 else '-'}",
                    k=int(np.argmin(np.abs(spectrum.phases - phase0))),
                    l=int(np.argmin(np.abs(spectrum.phases - phase1))),
                    gap=circular_distance(phase0, phase1),
                    overlap=q,
                )
                if best is None or pair.overlap > best.overlap:
                    best = pair
            assert best is not None
            return best
        case "hypercube":
            return min(hypercube_pairings(n), key=lambda p: (p.gap, -p.overlap))
        case _:
            ones = np.abs(np.stack(spectrum.vectors_for(0), axis=1))
            plus_i = np.abs(np.stack(spectrum.vectors_for(1), axis=1))
            return PairOverlap(
                label="1/i", k=0, l=1, gap=np.pi / 2, overlap=float(np.max(ones.T @ plus_i))
            )


def hypercube_pairings(n: int) -> list[PairOverlap]:
    """Both readings of the adjacent-eigenvalue pairing on the hypercube.

    For each weight m in [1, n-2], lambda_m^+ is paired with lambda_{m+1}^+ and
    with lambda_{m+1}^-; overlaps coincide but gaps differ.
    """
    phases = hypercube_phases(n)
    pairings: list[PairOverlap] = []
    for m in range(1, n - 1):
        q = hypercube_overlap(n, m, m + 1)
        for sign, tag in ((1, "+"), (-1, "-")):
            k = hypercube_phase_index(n, m, 1)
            l = hypercube_phase_index(n, m + 1, sign)  # noqa: E741
            pairings.append(
                PairOverlap(
                    label=f"m={m}+/m+1{tag}",
                    k=k,
                    l=l,
                    gap=circular_distance(phases[k], phases[l]),
                    overlap=q,
                )
            )
    return pairings
