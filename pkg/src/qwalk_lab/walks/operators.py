"""Walk unitaries: coined walks, the complete-graph walk, locality and evolution."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import (
    CapacityExceededError,
    DimensionMismatchError,
    GraphError,
    InvalidParameterError,
    NonUnitaryError,
)
from qwalk_lab.states import WaveFunction
from qwalk_lab.walks.coins import Coin, unitarity_residual
from qwalk_lab.walks.graphs import (
    LabelledGraph,
    complete_graph,
    hypercube_graph,
)

logger = structlog.get_logger()

LOCALITY_TOL = 1e-12
WALK_UNITARY_TOL = 1e-10
LOCALITY_CHUNK = 128
MIN_COMPLETE_N = 2
MIN_HYPERCUBE_N = 2

ComplexArray = NDArray[np.complex128]
Applier = Callable[[ComplexArray], ComplexArray]


class CoinOrder(StrEnum):
    """Order of the two half-steps of a coined walk.

    ``coin_first``: (v, s) -> (v_{s'}, s') with weight C[s', s].
    ``shift_first``: (v, s) -> (v_s, s') with weight C[s', s].
    The two are conjugate under (I x C) and share their spectrum.
    """

    COIN_FIRST = "coin_first"
    SHIFT_FIRST = "shift_first"


@dataclass(frozen=True, eq=False)
class UnitaryWalk:
    """Walk unitary on ``n_vertices * n_chiralities`` sites.

    ``matrix`` is kept when the dimension fits the dense cap. ``applier`` applies
    the operator column-wise to an (N,) or (N, k) array without forming it.
    """

    dim: int
    n_chiralities: int
    name: str
    graph: LabelledGraph | None = None
    matrix: ComplexArray | None = None
    applier: Applier | None = None

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim // self.n_chiralities, self.n_chiralities)

    @property
    def is_dense(self) -> bool:
        return self.matrix is not None

    def dense(self) -> ComplexArray:
        if self.matrix is None:
            cap = get_settings().dense_cap
            raise CapacityExceededError(
                f"walk '{self.name}' has dimension {self.dim} above the dense cap {cap}; "
                "use the closed-form spectrum for this family"
            )
        return self.matrix

    def apply(self, vectors: ArrayLike) -> ComplexArray:
        arr = np.asarray(vectors, dtype=np.complex128)
        if arr.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"walk '{self.name}' acts on dimension {self.dim}, got {arr.shape[0]}"
            )
        if self.applier is not None:
            return self.applier(arr)
        assert self.matrix is not None
        return self.matrix @ arr


def _as_columns(vectors: ComplexArray, dims: tuple[int, int]) -> tuple[ComplexArray, bool]:
    single = vectors.ndim == 1
    cols = vectors[:, None] if single else vectors
    return cols.reshape(dims[0], dims[1], cols.shape[1]), single


def _finish(out: ComplexArray, single: bool) -> ComplexArray:
    flat = out.reshape(out.shape[0] * out.shape[1], out.shape[2])
    return flat[:, 0] if single else flat


def _coined_applier(table: NDArray[np.int64], coin: ComplexArray, order: CoinOrder) -> Applier:
    n_vertices, degree = table.shape
    labels = np.arange(degree)[None, :]

    def apply(vectors: ComplexArray) -> ComplexArray:
        psi, single = _as_columns(vectors, (n_vertices, degree))
        out = np.empty_like(psi)
        if order is CoinOrder.COIN_FIRST:
            mixed = np.einsum("ts,vsk->vtk", coin, psi)
            out[table, labels, :] = mixed
        else:
            moved = np.empty_like(psi)
            moved[table, labels, :] = psi
            out = np.einsum("ts,vsk->vtk", coin, moved)
        return _finish(out, single)

    return apply


def _coined_matrix(table: NDArray[np.int64], coin: ComplexArray, order: CoinOrder) -> ComplexArray:
    n_vertices, degree = table.shape
    dim = n_vertices * degree
    v, s_new, s_old = np.meshgrid(
        np.arange(n_vertices), np.arange(degree), np.arange(degree), indexing="ij"
    )
    target_vertex = table[v, s_new] if order is CoinOrder.COIN_FIRST else table[v, s_old]
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    matrix[(target_vertex * degree + s_new).ravel(), (v * degree + s_old).ravel()] = coin[
        s_new, s_old
    ].ravel()
    return matrix


def build_coined_walk(
    graph: LabelledGraph,
    coin: Coin,
    order: CoinOrder | str = CoinOrder.COIN_FIRST,
    *,
    name: str | None = None,
) -> UnitaryWalk:
    """Coined walk on *graph*; dense below the cap, structured above it."""
    order = CoinOrder(order)
    if coin.dim != graph.degree:
        raise DimensionMismatchError(
            f"coin dimension {coin.dim} does not match graph degree {graph.degree}"
        )
    graph.validate()
    dim = graph.n_vertices * graph.degree
    applier = _coined_applier(graph.labelling, coin.matrix, order)
    matrix = None
    if dim <= get_settings().dense_cap:
        matrix = _coined_matrix(graph.labelling, coin.matrix, order)
    walk_name = name or f"{coin.kind}@{graph.name}"
    logger.debug("walk.built", walk=walk_name, dim=dim, dense=matrix is not None, order=order)
    return UnitaryWalk(
        dim=dim,
        n_chiralities=graph.degree,
        name=walk_name,
        graph=graph,
        matrix=matrix,
        applier=applier,
    )


def complete_graph_walk(n: int) -> UnitaryWalk:
    """Walk on K_n with chirality naming the destination vertex.

    From (v, s) the particle moves to vertex s with new chirality s' and weight
    G[s', v], where G = I - (2/n) J. As a matrix map this is X -> X^T G.
    """
    if n < MIN_COMPLETE_N:
        raise InvalidParameterError(f"complete-graph walk needs n >= {MIN_COMPLETE_N}, got {n}")
    reflection = np.eye(n, dtype=np.complex128) - (2.0 / n) * np.ones((n, n))
    dim = n * n

    def apply(vectors: ComplexArray) -> ComplexArray:
        x, single = _as_columns(vectors, (n, n))
        return _finish(np.einsum("tv,vwk->wtk", reflection, x), single)

    matrix = None
    if dim <= get_settings().dense_cap:
        v, s, s_new = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        matrix = np.zeros((dim, dim), dtype=np.complex128)
        matrix[(s * n + s_new).ravel(), (v * n + s).ravel()] = reflection[s_new, v].ravel()
    return UnitaryWalk(
        dim=dim,
        n_chiralities=n,
        name=f"complete@complete:{n}",
        graph=complete_graph(n, loops=True),
        matrix=matrix,
        applier=apply,
    )


def hypercube_walk(n: int) -> UnitaryWalk:
    """Grover walk on (Z_2)^n with coin diagonal 2/n - 1 and off-diagonal 2/n.

    The shift uses the incoming chirality, so on v (x) chi_t the walk acts as
    A_t = D + bP with A_t[i, j] = C[i, j] (-1)^{t_j}.
    """
    if n < MIN_HYPERCUBE_N:
        raise InvalidParameterError(f"hypercube walk needs n >= {MIN_HYPERCUBE_N}, got {n}")
    coin = Coin.from_matrix(
        (2.0 / n) * np.ones((n, n)) - np.eye(n), kind="grover"
    )
    return build_coined_walk(
        hypercube_graph(n), coin, CoinOrder.SHIFT_FIRST, name=f"grover@hypercube:{n}"
    )


def identity_walk(graph: LabelledGraph) -> UnitaryWalk:
    """The identity operator on the sites of *graph* (a lazy step in mixtures)."""
    dim = graph.n_vertices * graph.degree
    matrix = np.eye(dim, dtype=np.complex128) if dim <= get_settings().dense_cap else None
    return UnitaryWalk(
        dim=dim,
        n_chiralities=graph.degree,
        name=f"identity@{graph.name}",
        graph=graph,
        matrix=matrix,
        applier=lambda vectors: np.array(vectors, dtype=np.complex128),
    )


def walk_from_matrix(
    matrix: ArrayLike,
    *,
    n_chiralities: int = 1,
    graph: LabelledGraph | None = None,
    name: str = "matrix",
) -> UnitaryWalk:
    """Wrap an explicit unitary matrix, checking unitarity to 1e-10."""
    mat = np.array(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:  # noqa: PLR2004
        raise DimensionMismatchError(f"walk matrix must be square, got shape {mat.shape}")
    if mat.shape[0] % n_chiralities:
        raise DimensionMismatchError(
            f"dimension {mat.shape[0]} is not a multiple of {n_chiralities} chiralities"
        )
    if graph is not None and graph.n_vertices * n_chiralities != mat.shape[0]:
        raise DimensionMismatchError("graph and matrix dimensions disagree")
    residual = unitarity_residual(mat)
    if residual > WALK_UNITARY_TOL:
        raise NonUnitaryError(f"matrix '{name}' is not unitary (residual {residual:.2e})")
    return UnitaryWalk(
        dim=int(mat.shape[0]), n_chiralities=n_chiralities, name=name, graph=graph, matrix=mat
    )


def walk_unitarity_residual(walk: UnitaryWalk) -> float:
    return unitarity_residual(walk.dense())


def locality_check(walk: UnitaryWalk) -> bool:
    """True iff every entry above 1e-12 connects adjacent (or identical-with-loop) vertices."""
    if walk.graph is None:
        raise GraphError(f"walk '{walk.name}' carries no graph to check locality against")
    adjacency = walk.graph.adjacency()
    n_chir = walk.n_chiralities
    for start in range(0, walk.dim, LOCALITY_CHUNK):
        stop = min(start + LOCALITY_CHUNK, walk.dim)
        if walk.matrix is not None:
            block = walk.matrix[:, start:stop]
        else:
            basis = np.zeros((walk.dim, stop - start), dtype=np.complex128)
            basis[np.arange(start, stop), np.arange(stop - start)] = 1.0
            block = walk.apply(basis)
        rows, cols = np.nonzero(np.abs(block) > LOCALITY_TOL)
        source = (cols + start) // n_chir
        target = rows // n_chir
        if not np.all(adjacency[source, target]):
            return False
    return True


def evolve_amplitudes(walk: UnitaryWalk, vectors: ArrayLike, t: int) -> ComplexArray:
    """Apply the walk *t* times to an (N,) or (N, k) array."""
    if t < 0:
        raise InvalidParameterError(f"number of steps must be >= 0, got {t}")
    out = np.array(vectors, dtype=np.complex128)
    if out.shape[0] != walk.dim:
        raise DimensionMismatchError(f"walk dimension {walk.dim}, state {out.shape[0]}")
    for _ in range(t):
        out = walk.apply(out)
    return out


def evolve(walk: UnitaryWalk, psi: WaveFunction, t: int) -> WaveFunction:
    """psi_t = U^t psi."""
    if psi.size != walk.dim:
        raise DimensionMismatchError(f"walk dimension {walk.dim}, state {psi.size}")
    return WaveFunction.from_amplitudes(evolve_amplitudes(walk, psi.amplitudes, t), psi.dims)
