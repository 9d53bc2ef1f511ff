"""Tests for the closed-form cycle, hypercube and complete-graph eigen-systems."""

from __future__ import annotations

from math import comb

import numpy as np
import pytest

from qwalk_lab.core.exceptions import InvalidParameterError, UnknownEntryError
from qwalk_lab.core.rng import make_rng
from qwalk_lab.spectral.closed_form import (
    closed_form_spectrum,
    closest_pair_overlap,
    cycle_block_eigenpair,
    hypercube_multiplicities,
    hypercube_overlap,
    hypercube_pairings,
    hypercube_phase_index,
    hypercube_phases,
    walsh_hadamard,
)
from qwalk_lab.spectral.decomposition import decompose, relaxation_time
from qwalk_lab.states import overlap

CYCLE_Q_THRESHOLD = 0.97
HYPERCUBE4_OVERLAP = 0.965925


def _random_vector(dim: int, seed: int = 0) -> np.ndarray:
    rng = make_rng(seed)
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def _hadamard_block(n: int, k: int) -> np.ndarray:
    theta = 2 * np.pi * k / n
    hadamard = np.array([[1, 1], [-1, 1]]) / np.sqrt(2.0)
    return np.diag([np.exp(-1j * theta), np.exp(1j * theta)]) @ hadamard


class TestCycleClosedForm:
    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_block_eigenpair(self, k):
        n = 7
        for sign in (1, -1):
            phase, vec = cycle_block_eigenpair(n, k, sign)
            block = _hadamard_block(n, k)
            np.testing.assert_allclose(block @ vec, np.exp(1j * phase) * vec, atol=1e-12)

    def test_four_vertices(self):
        spectrum = closed_form_spectrum("cycle", 4)
        assert spectrum.m == 6
        assert sum(spectrum.multiplicities) == 8

    def test_eigenvectors_are_eigenvectors(self):
        spectrum = closed_form_spectrum("cycle", 10)
        walk = spectrum.walk()
        for k, vec in spectrum.eigenvectors():
            np.testing.assert_allclose(
                walk.apply(vec), np.exp(1j * spectrum.phases[k]) * vec, atol=1e-12
            )

    def test_overlap_grows_towards_one(self):
        overlaps = [closest_pair_overlap("cycle", n).overlap for n in (4, 8, 16)]
        assert overlaps == sorted(overlaps)
        assert overlaps[-1] < 1.0

    @pytest.mark.parametrize("n", [12, 16, 32])
    def test_overlap_above_threshold(self, n):
        assert closest_pair_overlap("cycle", n).overlap > CYCLE_Q_THRESHOLD

    def test_closest_pair_gap_shrinks_like_one_over_n_squared(self):
        gaps = [closest_pair_overlap("cycle", n).gap for n in (32, 64)]
        assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.05)


class TestHypercubeClosedForm:
    def test_phases(self):
        phases = hypercube_phases(4)
        assert phases.size == 8
        np.testing.assert_allclose(np.cos(phases[1:4]), [0.5, 0.0, -0.5], atol=1e-12)
        assert np.all(np.diff(phases) > 0)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_multiplicities_sum_to_dimension(self, n):
        assert sum(hypercube_multiplicities(n)) == n * 2**n

    def test_weight_multiplicities_are_binomial(self):
        mult = hypercube_multiplicities(5)
        for k in range(1, 5):
            assert mult[hypercube_phase_index(5, k, 1)] == comb(5, k)
            assert mult[hypercube_phase_index(5, k, -1)] == comb(5, k)

    def test_distinct_eigenvalue_count(self):
        assert closed_form_spectrum("hypercube", 16).m == 32

    def test_relaxation_time_of_sixteen_cube(self):
        spectrum = closed_form_spectrum("hypercube", 16)
        phases = spectrum.phases
        gap = np.min(np.append(np.diff(phases), 2 * np.pi - phases[-1]))
        assert 1.0 / gap < 8.0

    def test_walsh_hadamard_is_self_inverse(self):
        x = _random_vector(2**4 * 3, seed=2).reshape(16, 3)
        np.testing.assert_allclose(walsh_hadamard(walsh_hadamard(x, 4), 4), x, atol=1e-13)

    def test_components_match_numeric_decomposition(self):
        spectrum = closed_form_spectrum("hypercube", 3)
        numeric = decompose(spectrum.walk())
        psi = _random_vector(spectrum.dim, seed=4)
        np.testing.assert_allclose(
            spectrum.decomposition.components(psi), numeric.components(psi), atol=1e-9
        )

    def test_decomposition_residual(self):
        spectrum = closed_form_spectrum("hypercube", 6)
        assert spectrum.decomposition.residual < 1e-10
        assert spectrum.decomposition.source == "closed_form"

    def test_overlap_formula_of_four_cube(self):
        assert hypercube_overlap(4, 1, 2) == pytest.approx(HYPERCUBE4_OVERLAP, abs=1e-6)

    def test_overlap_formula_matches_vectors(self):
        n = 4
        spectrum = closed_form_spectrum("hypercube", n)
        left = spectrum.vectors_for(hypercube_phase_index(n, 1, 1))
        right = spectrum.vectors_for(hypercube_phase_index(n, 2, 1))
        best = max(overlap(a, b) for a in left for b in right)
        assert best == pytest.approx(hypercube_overlap(n, 1, 2), abs=1e-12)

    def test_pairings_cover_both_signs(self):
        pairings = hypercube_pairings(5)
        assert len(pairings) == 2 * 3
        plus, minus = pairings[0], pairings[1]
        assert plus.overlap == minus.overlap
        assert plus.gap != pytest.approx(minus.gap)


class TestCompleteClosedForm:
    def test_multiplicities(self):
        n = 6
        spectrum = closed_form_spectrum("complete", n)
        assert spectrum.multiplicities == (
            n * (n - 1) // 2,
            n - 1,
            1 + (n - 1) * (n - 2) // 2,
            n - 1,
        )

    def test_relaxation_time(self):
        spectrum = closed_form_spectrum("complete", 8)
        assert relaxation_time(spectrum.decomposition) == pytest.approx(2 / np.pi)

    def test_closest_pair_is_one_and_i(self):
        pair = closest_pair_overlap("complete", 5)
        assert pair.gap == pytest.approx(np.pi / 2)
        assert 0.0 < pair.overlap <= 1.0


class TestLookup:
    def test_unknown_family(self):
        with pytest.raises(UnknownEntryError):
            closed_form_spectrum("torus", 4)

    def test_too_small(self):
        with pytest.raises(InvalidParameterError):
            closed_form_spectrum("cycle", 2)
