"""Tests for state types, norms, distances and the overlap functional."""

from __future__ import annotations

import numpy as np
import pytest

from qwalk_lab.core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NormalizationError,
)
from qwalk_lab.core.rng import make_rng
from qwalk_lab.states import (
    DensityMatrix,
    Distribution,
    HermitianOperator,
    NormKind,
    SiteIndex,
    WaveFunction,
    operator_norm,
    overlap,
    trace_norm,
    tv_distance,
)

SQRT_HALF = 1.0 / np.sqrt(2.0)


def _random_state(dims: tuple[int, int], seed: int = 0) -> WaveFunction:
    rng = make_rng(seed)
    size = dims[0] * dims[1]
    return WaveFunction.normalized(rng.normal(size=size) + 1j * rng.normal(size=size), dims)


def _random_distribution(size: int, seed: int) -> Distribution:
    weights = make_rng(seed).uniform(size=size)
    return Distribution.from_probabilities(weights / weights.sum(), (size, 1))


class TestWaveFunction:
    def test_renormalizes_small_drift(self):
        psi = WaveFunction.from_amplitudes([1.0 + 5e-7, 0.0], (2, 1))
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_large_drift(self):
        with pytest.raises(NormalizationError):
            WaveFunction.from_amplitudes([1.1, 0.0], (2, 1))

    def test_rejects_wrong_dims(self):
        with pytest.raises(DimensionMismatchError):
            WaveFunction.from_amplitudes([1.0, 0.0, 0.0], (2, 2))

    def test_normalized_rejects_zero_vector(self):
        with pytest.raises(NormalizationError):
            WaveFunction.normalized([0.0, 0.0], (1, 2))

    def test_basis_uses_vertex_major_layout(self):
        psi = WaveFunction.basis((3, 2), SiteIndex(vertex=1, chirality=1))
        assert np.flatnonzero(psi.amplitudes).tolist() == [3]

    def test_basis_rejects_out_of_range_site(self):
        with pytest.raises(InvalidParameterError):
            WaveFunction.basis((2, 2), 4)

    def test_amplitudes_are_read_only(self):
        psi = WaveFunction.basis((2, 2), 0)
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.5

    def test_json_dict_roundtrip_keeps_amplitudes(self):
        psi = _random_state((3, 2))
        again = WaveFunction.from_json_dict(psi.to_json_dict())
        np.testing.assert_allclose(again.amplitudes, psi.amplitudes, atol=1e-15)
        assert again.dims == (3, 2)

    def test_probabilities_sum_to_one(self):
        dist = _random_state((4, 2)).probabilities()
        assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert dist.vertex_marginal().shape == (4,)


class TestSiteIndex:
    def test_flat_and_back(self):
        site = SiteIndex(vertex=2, chirality=1)
        assert site.flat(3) == 7
        assert SiteIndex.from_flat(7, 3) == site


class TestOverlap:
    def test_self_overlap_is_one(self):
        psi = _random_state((5, 2), seed=3)
        assert overlap(psi, psi) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_supports_give_zero(self):
        phi = WaveFunction.basis((2, 2), 0)
        psi = WaveFunction.basis((2, 2), 3)
        assert overlap(phi, psi) == 0.0

    def test_ignores_phases(self):
        phi = WaveFunction.from_amplitudes([SQRT_HALF, SQRT_HALF], (1, 2))
        psi = WaveFunction.from_amplitudes([SQRT_HALF, -SQRT_HALF], (1, 2))
        assert overlap(phi, psi) == pytest.approx(1.0, abs=1e-15)

    def test_symmetric_and_below_norm_product(self):
        phi = _random_state((4, 3), seed=1)
        psi = _random_state((4, 3), seed=2)
        assert overlap(phi, psi) == pytest.approx(overlap(psi, phi))
        assert 0.0 <= overlap(phi, psi) <= 1.0 + 1e-12

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(DimensionMismatchError):
            overlap(np.ones(2), np.ones(3))


class TestTvDistance:
    def test_identical_distributions(self):
        p = _random_distribution(6, seed=4)
        assert tv_distance(p, p) == 0.0

    def test_disjoint_point_masses(self):
        assert tv_distance([1.0, 0.0], [0.0, 1.0]) == pytest.approx(2.0)

    def test_half_and_point_mass(self):
        assert tv_distance([0.5, 0.5], [1.0, 0.0]) == pytest.approx(1.0)

    def test_triangle_inequality(self):
        p, q, r = (_random_distribution(8, seed=s) for s in (10, 11, 12))
        assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-15

    def test_distribution_rejects_negative_weights(self):
        with pytest.raises(InvalidParameterError):
            Distribution.from_probabilities([1.5, -0.5], (2, 1))

    def test_partial_distribution_skips_sum_check(self):
        dist = Distribution.from_probabilities([0.2, 0.1], (2, 1), full=False)
        assert dist.probabilities.sum() == pytest.approx(0.3)


class TestOperatorNorm:
    def test_trace_norm_of_sign_matrix(self):
        op = HermitianOperator.from_matrix(np.diag([1.0, -1.0]))
        assert operator_norm(op, NormKind.TRACE) == pytest.approx(2.0)

    def test_l2_norm_of_identity(self):
        op = HermitianOperator.from_matrix(np.eye(2))
        assert operator_norm(op, "l2") == pytest.approx(np.sqrt(2.0))

    def test_weighted_l2_norm(self):
        op = HermitianOperator.from_matrix(np.eye(2))
        mu = DensityMatrix.maximally_mixed(2)
        assert operator_norm(op, NormKind.L2_MU, mu) == pytest.approx(1.0)

    def test_weighted_norm_requires_mu(self):
        op = HermitianOperator.from_matrix(np.eye(2))
        with pytest.raises(InvalidParameterError):
            operator_norm(op, NormKind.L2_MU)

    def test_mu_rejected_for_plain_norms(self):
        op = HermitianOperator.from_matrix(np.eye(2))
        with pytest.raises(InvalidParameterError):
            operator_norm(op, NormKind.TRACE, DensityMatrix.maximally_mixed(2))

    def test_trace_norm_of_density_matrix_is_one(self):
        rho = DensityMatrix.pure(_random_state((3, 2), seed=7))
        assert operator_norm(rho, NormKind.TRACE) == pytest.approx(1.0, abs=1e-12)

    def test_trace_norm_of_difference_bounded_by_two(self):
        a = DensityMatrix.pure(_random_state((3, 2), seed=8))
        b = DensityMatrix.pure(_random_state((3, 2), seed=9))
        assert trace_norm(a.matrix - b.matrix) <= 2.0 + 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidParameterError):
            HermitianOperator.from_matrix([[0.0, 1.0], [0.0, 0.0]])


class TestDensityMatrix:
    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidParameterError):
            DensityMatrix.from_matrix(np.diag([1.5, -0.5]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(NormalizationError):
            DensityMatrix.from_matrix(np.eye(2))

    def test_basis_projector_diagonal(self):
        rho = DensityMatrix.basis_projector(3, 1)
        np.testing.assert_allclose(rho.diagonal(), [0.0, 1.0, 0.0])
