"""Tests for the analytic bounds and the classical Markov-chain baselines."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qwalk_lab.core.exceptions import HypothesisViolationError, InvalidParameterError
from qwalk_lab.mixing.bounds import (
    reference_points,
    theorem1_upper_bound,
    theorem2_lower_bound,
    theorem2_status,
    two_eigenvector_distance,
)
from qwalk_lab.mixing.classical import (
    classical_mixing_time,
    lazy_cycle_chain,
    simple_random_walk_chain,
    spectral_step_ceiling,
    stationary_distribution,
)
from qwalk_lab.walks.graphs import cycle_graph, hypercube_graph


class TestTheorem1:
    def test_cycle_four_value(self):
        bound = theorem1_upper_bound(6, 4 / math.pi, 0.1)
        assert bound == pytest.approx(8 * math.log(12) / 0.1)
        assert bound == pytest.approx(198.79, abs=0.01)

    def test_halving_epsilon_doubles_bound(self):
        assert theorem1_upper_bound(6, 1.3, 0.05) == pytest.approx(
            2 * theorem1_upper_bound(6, 1.3, 0.1)
        )

    @pytest.mark.parametrize(("m", "t_rel", "epsilon"), [(0, 1.0, 0.1), (3, 0.0, 0.1), (3, 1.0, 0)])
    def test_rejects_bad_arguments(self, m, t_rel, epsilon):
        with pytest.raises(InvalidParameterError):
            theorem1_upper_bound(m, t_rel, epsilon)


class TestTheorem2:
    def test_value(self):
        assert theorem2_lower_bound(0.8, 0.1, 0.01) == pytest.approx(100.0)

    def test_epsilon_at_boundary_is_accepted(self):
        overlap = 0.9
        epsilon = overlap / 80
        assert theorem2_lower_bound(overlap, 0.2, epsilon) == pytest.approx(
            overlap / (8 * epsilon * 0.2)
        )

    def test_large_gap_is_rejected(self):
        with pytest.raises(HypothesisViolationError):
            theorem2_lower_bound(0.8, 2.5, 0.001)

    def test_large_epsilon_is_rejected(self):
        with pytest.raises(HypothesisViolationError):
            theorem2_lower_bound(0.8, 0.1, 0.05)

    def test_status_lists_every_reason(self):
        status = theorem2_status(0.8, 2.5, 0.05)
        assert not status.holds
        assert status.bound is None
        assert len(status.reasons) == 2

    def test_status_when_hypotheses_hold(self):
        status = theorem2_status(0.8, 0.1, 0.01)
        assert status.holds
        assert status.bound == pytest.approx(100.0)

    def test_rejects_zero_overlap(self):
        with pytest.raises(InvalidParameterError):
            theorem2_status(0.0, 0.1, 0.01)


class TestTwoEigenvectorDistance:
    def test_full_turn_cancels(self):
        assert two_eigenvector_distance(0.9, math.pi / 2, 4) == pytest.approx(0.0, abs=1e-15)

    def test_first_step_equals_overlap(self):
        assert two_eigenvector_distance(0.7, 0.3, 1) == pytest.approx(0.7)

    def test_decays_like_one_over_t(self):
        overlap, gap = 1.0, 0.2
        envelope = overlap / (1 - math.cos(gap))
        for T in (10, 100, 1000):
            assert two_eigenvector_distance(overlap, gap, T) <= envelope / T + 1e-12

    def test_rejects_zero_gap(self):
        with pytest.raises(InvalidParameterError):
            two_eigenvector_distance(0.5, 2 * math.pi, 3)


class TestReferencePoints:
    def test_cycle(self):
        points = reference_points("cycle", 8, 0.1)
        assert points["lower_n2_over_eps"] == pytest.approx(640.0)
        assert points["upper_n2_log_n_over_eps"] == pytest.approx(640.0 * math.log(8))

    def test_hypercube(self):
        points = reference_points("hypercube", 6, 0.1)
        assert points["lower_n_over_2eps"] == pytest.approx(30.0)

    def test_unknown_family_has_none(self):
        assert reference_points(None, None, 0.1) == {}
        assert reference_points("file", 5, 0.1) == {}


class TestClassical:
    def test_two_state_uniform_chain_mixes_in_one_step(self):
        assert classical_mixing_time(np.full((2, 2), 0.5), 0.01) == 1

    def test_rotation_never_mixes(self):
        rotation = np.roll(np.eye(5), 1, axis=1)
        np.testing.assert_allclose(stationary_distribution(rotation), np.full(5, 0.2))
        assert classical_mixing_time(rotation, 0.1, step_cap=500) is None

    def test_reducible_chain_has_no_unique_stationary(self):
        assert stationary_distribution(np.eye(3)) is None
        assert classical_mixing_time(np.eye(3), 0.1) is None

    def test_rejects_non_stochastic(self):
        with pytest.raises(InvalidParameterError):
            classical_mixing_time([[0.5, 0.4], [0.5, 0.5]], 0.1)

    def test_hypercube_chain_is_doubly_stochastic(self):
        chain = simple_random_walk_chain(hypercube_graph(3))
        np.testing.assert_allclose(chain.sum(axis=0), 1.0)
        np.testing.assert_allclose(stationary_distribution(chain), np.full(8, 1 / 8))

    def test_lazy_cycle_holds_half(self):
        np.testing.assert_allclose(np.diag(lazy_cycle_chain(6)), 0.5)
        assert simple_random_walk_chain(cycle_graph(6), lazy=False)[0, 0] == 0.0

    def test_single_start_matches_every_start_on_hypercube(self):
        chain = simple_random_walk_chain(hypercube_graph(4))
        assert classical_mixing_time(chain, 0.05, starts=(0,)) == classical_mixing_time(
            chain, 0.05
        )

    def test_periodic_symmetric_chain_stops_at_once(self):
        chain = simple_random_walk_chain(cycle_graph(6), lazy=False)
        assert spectral_step_ceiling(chain, 0.05) == 0
        assert classical_mixing_time(chain, 0.05, step_cap=10**9) is None

    def test_non_symmetric_chain_has_no_ceiling(self):
        assert spectral_step_ceiling(np.roll(np.eye(5), 1, axis=1), 0.1) is None

    def test_rejects_out_of_range_start(self):
        with pytest.raises(InvalidParameterError):
            classical_mixing_time(lazy_cycle_chain(5), 0.1, starts=(5,))

    @pytest.mark.slow
    def test_hypercube_ten_stops_well_before_step_budget(self):
        chain = simple_random_walk_chain(hypercube_graph(10))
        # Lazy hypercube: absolute gap 1/n, so ceil(10 * ln(1024 / 0.05)) + 1.
        assert spectral_step_ceiling(chain, 0.05) == 101
        steps = classical_mixing_time(chain, 0.05, starts=(0,))
        assert steps is not None
        assert steps <= 101

    @pytest.mark.slow
    def test_lazy_cycle_grows_quadratically(self):
        times = [classical_mixing_time(lazy_cycle_chain(n), 0.25) for n in (8, 16, 32)]
        assert all(t is not None for t in times)
        for small, large in zip(times, times[1:], strict=False):
            assert 3.0 < large / small < 5.0
