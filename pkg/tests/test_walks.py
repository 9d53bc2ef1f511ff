"""Tests for graphs, coins, walk unitaries, locality and evolution."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from qwalk_lab.core.exceptions import (
    CapacityExceededError,
    CoinError,
    DimensionMismatchError,
    GraphError,
    InvalidParameterError,
    NonUnitaryError,
    SpecParseError,
    UnknownEntryError,
)
from qwalk_lab.core.rng import make_rng
from qwalk_lab.spectral.decomposition import decompose
from qwalk_lab.states import SiteIndex, WaveFunction
from qwalk_lab.walks.coins import Coin, standard_coin, unitarity_residual
from qwalk_lab.walks.factory import DEFAULT_WALKS, build_walk, parse_graph_spec
from qwalk_lab.walks.graphs import (
    LabelledGraph,
    complete_graph,
    cycle_graph,
    hypercube_graph,
    load_graph_file,
)
from qwalk_lab.walks.operators import (
    CoinOrder,
    build_coined_walk,
    complete_graph_walk,
    evolve,
    hypercube_walk,
    identity_walk,
    locality_check,
    walk_from_matrix,
    walk_unitarity_residual,
)

SQRT_HALF = 1.0 / np.sqrt(2.0)


def _random_state(dims: tuple[int, int], seed: int = 0) -> WaveFunction:
    rng = make_rng(seed)
    size = dims[0] * dims[1]
    return WaveFunction.normalized(rng.normal(size=size) + 1j * rng.normal(size=size), dims)


def _write_graph(tmp_path, payload: dict) -> str:
    path = tmp_path / "graph.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestGraphs:
    def test_cycle_labels(self):
        graph = cycle_graph(5)
        assert graph.labelling[0].tolist() == [1, 4]
        assert graph.check() == []

    def test_hypercube_label_flips_bit(self):
        graph = hypercube_graph(3)
        assert graph.labelling[0b101].tolist() == [0b100, 0b111, 0b001]
        assert graph.check() == []

    def test_complete_graph_with_loops(self):
        graph = complete_graph(4)
        assert graph.degree == 4
        assert graph.adjacency()[2, 2]
        assert graph.check() == []

    def test_complete_graph_without_loops(self):
        graph = complete_graph(4, loops=False)
        assert graph.degree == 3
        assert not graph.adjacency().diagonal().any()

    def test_small_cycle_rejected(self):
        with pytest.raises(InvalidParameterError):
            cycle_graph(2)

    def test_self_loop_detected(self):
        table = np.array([[0, 1], [0, 1]])
        graph = LabelledGraph(n_vertices=2, degree=2, labelling=table)
        assert any("self-loop" in e for e in graph.check())

    def test_non_permutation_label_detected(self):
        table = np.array([[1, 2], [2, 0], [1, 0]])
        graph = LabelledGraph(n_vertices=3, degree=2, labelling=table)
        errors = graph.check()
        assert any("label 0" in e for e in errors)
        with pytest.raises(GraphError):
            graph.validate()

    def test_graph_file_loads(self, tmp_path):
        path = _write_graph(
            tmp_path,
            {"n_vertices": 4, "degree": 2, "labelling": [[1, 3], [2, 0], [3, 1], [0, 2]]},
        )
        graph = load_graph_file(Path(path))
        assert graph.n_vertices == 4
        assert graph.name.startswith("@")

    def test_missing_graph_file(self, tmp_path):
        with pytest.raises(SpecParseError):
            parse_graph_spec(f"@{tmp_path / 'absent.json'}")

    def test_ragged_graph_file(self, tmp_path):
        path = _write_graph(tmp_path, {"n_vertices": 2, "degree": 1, "labelling": [[1], [0, 1]]})
        with pytest.raises(GraphError):
            parse_graph_spec(f"@{path}")


class TestGraphSpec:
    def test_family_spec(self):
        spec = parse_graph_spec("cycle:6")
        assert (spec.family, spec.n, spec.graph.n_vertices) == ("cycle", 6, 6)

    def test_unknown_family(self):
        with pytest.raises(UnknownEntryError):
            parse_graph_spec("nosuch:4")

    def test_malformed_spec(self):
        with pytest.raises(SpecParseError):
            parse_graph_spec("cycle-6")

    def test_default_walks(self):
        for family, kind in DEFAULT_WALKS.items():
            walk = build_walk(f"{family}:4")
            assert walk.name.startswith(f"{kind}@")

    def test_complete_walk_needs_complete_graph(self):
        with pytest.raises(InvalidParameterError):
            build_walk("cycle:4", "complete")


class TestCoins:
    def test_hadamard(self):
        coin = standard_coin("hadamard", 2)
        np.testing.assert_allclose(coin.matrix, np.array([[1, 1], [-1, 1]]) * SQRT_HALF)

    def test_grover_two(self):
        np.testing.assert_allclose(standard_coin("grover", 2).matrix, [[0, -1], [-1, 0]])

    def test_grover_four(self):
        coin = standard_coin("grover", 4)
        np.testing.assert_allclose(np.diag(coin.matrix), 0.5)
        assert coin.matrix[0, 1] == pytest.approx(-0.5)
        assert unitarity_residual(coin.matrix) < 1e-15

    def test_fourier_is_unitary(self):
        assert unitarity_residual(standard_coin("fourier", 5).matrix) < 1e-12

    def test_hadamard_needs_dimension_two(self):
        with pytest.raises(CoinError):
            standard_coin("hadamard", 3)

    def test_unknown_kind(self):
        with pytest.raises(CoinError):
            standard_coin("nosuch", 2)

    def test_non_unitary_matrix_rejected(self):
        with pytest.raises(CoinError):
            Coin.from_matrix([[1.0, 1.0], [0.0, 1.0]])


class TestCoinedWalk:
    def test_single_step_from_delta(self, cycle4_walk):
        psi = WaveFunction.basis((4, 2), SiteIndex(0, 0))
        out = evolve(cycle4_walk, psi, 1).amplitudes
        assert out[SiteIndex(1, 0).flat(2)] == pytest.approx(SQRT_HALF)
        assert out[SiteIndex(3, 1).flat(2)] == pytest.approx(-SQRT_HALF)
        assert np.count_nonzero(np.abs(out) > 1e-15) == 2

    @pytest.mark.parametrize("kind", ["hadamard", "grover", "fourier"])
    def test_unitary(self, kind):
        walk = build_walk("cycle:7", kind)
        assert walk_unitarity_residual(walk) < 1e-12

    def test_orders_share_spectrum(self):
        graph, coin = cycle_graph(5), standard_coin("hadamard", 2)
        first = decompose(build_coined_walk(graph, coin, CoinOrder.COIN_FIRST))
        second = decompose(build_coined_walk(graph, coin, CoinOrder.SHIFT_FIRST))
        np.testing.assert_allclose(first.phases, second.phases, atol=1e-9)
        assert first.multiplicities == second.multiplicities

    def test_applier_matches_dense_matrix(self, cycle8_walk):
        psi = _random_state((8, 2), seed=5)
        dense = cycle8_walk.dense() @ psi.amplitudes
        assert cycle8_walk.applier is not None
        np.testing.assert_allclose(cycle8_walk.applier(psi.amplitudes), dense, atol=1e-14)

    @pytest.mark.parametrize(
        ("graph", "kind", "degree"),
        [
            ("cycle:6", "hadamard", 2),
            ("cycle:7", "fourier", 2),
            ("hypercube:3", "grover", 3),
            ("complete:3", "complete", 3),
            ("complete:5", "complete", 5),
        ],
    )
    def test_each_column_reaches_degree_sites(self, graph, kind, degree):
        # Every coin entry is nonzero here, so a site feeds exactly d sites.
        matrix = build_walk(graph, kind).dense()
        counts = np.count_nonzero(np.abs(matrix) > 1e-14, axis=0)
        np.testing.assert_array_equal(counts, np.full(matrix.shape[1], degree))

    def test_coin_dimension_must_match_degree(self):
        with pytest.raises(DimensionMismatchError):
            build_coined_walk(hypercube_graph(3), standard_coin("hadamard", 2))

    def test_above_dense_cap_keeps_applier(self, monkeypatch):
        monkeypatch.setenv("QWLAB_DENSE_CAP", "8")
        walk = build_walk("cycle:8")
        assert not walk.is_dense
        with pytest.raises(CapacityExceededError):
            walk.dense()
        psi = WaveFunction.basis((8, 2), 0)
        assert np.linalg.norm(evolve(walk, psi, 3).amplitudes) == pytest.approx(1.0)


class TestCompleteGraphWalk:
    def test_two_vertex_amplitudes(self):
        matrix = complete_graph_walk(2).dense()
        for v in range(2):
            for s in range(2):
                for s_new in range(2):
                    amp = matrix[s * 2 + s_new, v * 2 + s]
                    assert amp == pytest.approx(0.0 if s_new == v else -1.0)

    def test_spectrum_of_four_vertices(self):
        spec = decompose(complete_graph_walk(4))
        np.testing.assert_allclose(spec.phases, [0, np.pi / 2, np.pi, 3 * np.pi / 2], atol=1e-9)
        assert spec.multiplicities == (6, 3, 4, 3)

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_unitary(self, n):
        assert walk_unitarity_residual(complete_graph_walk(n)) < 1e-12

    def test_acts_as_transpose_then_reflection(self):
        n = 5
        x = _random_state((n, n), seed=6).amplitudes.reshape(n, n)
        reflection = np.eye(n) - (2.0 / n) * np.ones((n, n))
        out = complete_graph_walk(n).apply(x.reshape(-1)).reshape(n, n)
        np.testing.assert_allclose(out, x.T @ reflection.T, atol=1e-13)

    def test_local_on_looped_graph(self):
        assert locality_check(complete_graph_walk(4))


class TestHypercubeWalk:
    def test_two_dimensional_spectrum(self):
        spec = decompose(hypercube_walk(2))
        np.testing.assert_allclose(spec.phases, [0, np.pi / 2, np.pi, 3 * np.pi / 2], atol=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_unitary(self, n):
        assert walk_unitarity_residual(hypercube_walk(n)) < 1e-10

    def test_action_on_character_block(self):
        n, t = 3, 0b011
        bits = np.array([(t >> r) & 1 for r in range(n)])
        w = np.arange(2**n)
        parity = np.array([bin(x).count("1") & 1 for x in (w & t)])
        chi = (1.0 - 2.0 * parity) / np.sqrt(2.0**n)
        v = _random_state((1, n), seed=9).amplitudes

        coin = (2.0 / n) * np.ones((n, n)) - np.eye(n)
        block = coin * ((-1.0) ** bits)[None, :]
        out = hypercube_walk(n).apply(np.outer(chi, v).reshape(-1))
        np.testing.assert_allclose(out, np.outer(chi, block @ v).reshape(-1), atol=1e-13)


class TestLocality:
    def test_coined_walk_is_local(self, cycle4_walk):
        assert locality_check(cycle4_walk)

    def test_identity_is_not_local(self):
        assert not locality_check(identity_walk(cycle_graph(4)))

    def test_shift_by_two_is_not_local(self):
        n = 6
        perm = np.zeros((2 * n, 2 * n))
        for v in range(n):
            for s in range(2):
                perm[((v + 2) % n) * 2 + s, v * 2 + s] = 1.0
        walk = walk_from_matrix(perm, n_chiralities=2, graph=cycle_graph(n))
        assert not locality_check(walk)

    def test_structured_walk_checked_without_matrix(self, monkeypatch):
        monkeypatch.setenv("QWLAB_DENSE_CAP", "4")
        assert locality_check(build_walk("cycle:6"))

    def test_needs_graph(self):
        walk = walk_from_matrix(np.eye(2))
        with pytest.raises(GraphError):
            locality_check(walk)


class TestEvolve:
    def test_zero_steps_is_identity(self, cycle8_walk):
        psi = _random_state((8, 2), seed=1)
        np.testing.assert_allclose(evolve(cycle8_walk, psi, 0).amplitudes, psi.amplitudes)

    def test_norm_preserved(self, cycle8_walk):
        psi = _random_state((8, 2), seed=2)
        out = evolve(cycle8_walk, psi, 100)
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-12

    def test_agrees_with_spectral_reconstruction(self, cycle8_walk, cycle8_spec):
        psi = _random_state((8, 2), seed=3)
        direct = evolve(cycle8_walk, psi, 37).amplitudes
        spectral = cycle8_spec.apply_power(psi.amplitudes, 37)
        np.testing.assert_allclose(direct, spectral, atol=1e-10)

    def test_negative_steps(self, cycle4_walk):
        with pytest.raises(InvalidParameterError):
            evolve(cycle4_walk, WaveFunction.basis((4, 2), 0), -1)

    def test_non_unitary_matrix_rejected(self):
        with pytest.raises(NonUnitaryError):
            walk_from_matrix([[1.0, 0.0], [0.0, 0.5]])
