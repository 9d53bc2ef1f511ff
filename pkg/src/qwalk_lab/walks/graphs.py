"""Regular labelled graphs and the built-in graph families."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import structlog
from numpy.typing import NDArray
from pydantic import BaseModel, Field, ValidationError

from qwalk_lab.core.exceptions import GraphError, InvalidParameterError, SpecParseError
from qwalk_lab.core.registry import register_graph

if TYPE_CHECKING:
    from pathlib import Path

logger = structlog.get_logger()

MIN_CYCLE_VERTICES = 3
MIN_HYPERCUBE_DIM = 2
MIN_COMPLETE_VERTICES = 2


@dataclass(frozen=True, eq=False)
class LabelledGraph:
    """A d-regular graph where ``labelling[v, i]`` is the neighbour of v along label i."""

    n_vertices: int
    degree: int
    labelling: NDArray[np.int64]
    name: str = "custom"
    loops: bool = False

    def check(self) -> list[str]:
        """Return every structural problem found; an empty list means valid."""
        errors: list[str] = []
        table = self.labelling
        if table.shape != (self.n_vertices, self.degree):
            return [
                f"labelling has shape {table.shape}, expected ({self.n_vertices}, {self.degree})"
            ]
        if self.degree < 1:
            errors.append("degree must be at least 1")
        if table.size and (table.min() < 0 or table.max() >= self.n_vertices):
            errors.append(f"labelling entries must lie in [0, {self.n_vertices})")
            return errors

        vertices = np.arange(self.n_vertices)
        if not self.loops:
            loop_rows, loop_labels = np.nonzero(table == vertices[:, None])
            errors.extend(
                f"self-loop at vertex {v} (label {i})"
                for v, i in zip(loop_rows.tolist(), loop_labels.tolist(), strict=True)
            )
        for v in range(self.n_vertices):
            if np.unique(table[v]).size != self.degree:
                errors.append(f"vertex {v} lists a neighbour twice: {table[v].tolist()}")
        for i in range(self.degree):
            if np.unique(table[:, i]).size != self.n_vertices:
                errors.append(f"label {i} maps two distinct vertices to the same neighbour")

        adjacency = self.adjacency()
        asymmetric = np.argwhere(adjacency & ~adjacency.T)
        errors.extend(f"edge {v}->{w} has no reverse edge" for v, w in asymmetric.tolist())
        return errors

    def validate(self) -> LabelledGraph:
        errors = self.check()
        if errors:
            raise GraphError(f"graph '{self.name}' is invalid: " + "; ".join(errors))
        return self

    def adjacency(self) -> NDArray[np.bool_]:
        adj = np.zeros((self.n_vertices, self.n_vertices), dtype=bool)
        rows = np.repeat(np.arange(self.n_vertices), self.degree)
        adj[rows, self.labelling.reshape(-1)] = True
        return adj


def _from_table(table: NDArray[np.int64], name: str, *, loops: bool = False) -> LabelledGraph:
    n_vertices, degree = table.shape
    return LabelledGraph(
        n_vertices=int(n_vertices),
        degree=int(degree),
        labelling=table.astype(np.int64),
        name=name,
        loops=loops,
    )


@register_graph("cycle")
def cycle_graph(n: int) -> LabelledGraph:
    """Cycle Z_n; label 0 moves v -> v+1, label 1 moves v -> v-1 (mod n)."""
    if n < MIN_CYCLE_VERTICES:
        raise InvalidParameterError(f"cycle needs n >= {MIN_CYCLE_VERTICES}, got {n}")
    v = np.arange(n)
    table = np.stack([(v + 1) % n, (v - 1) % n], axis=1)
    return _from_table(table, f"cycle:{n}")


@register_graph("hypercube")
def hypercube_graph(n: int) -> LabelledGraph:
    """Hypercube (Z_2)^n; label s flips bit s."""
    if n < MIN_HYPERCUBE_DIM:
        raise InvalidParameterError(f"hypercube needs n >= {MIN_HYPERCUBE_DIM}, got {n}")
    v = np.arange(2**n)
    table = v[:, None] ^ (1 << np.arange(n))[None, :]
    return _from_table(table, f"hypercube:{n}")


@register_graph("complete")
def complete_graph(n: int, *, loops: bool = True) -> LabelledGraph:
    """Complete graph K_n, labelled ``v_i = v + i`` (mod n).

    With ``loops`` every vertex also neighbours itself, which the complete-graph
    walk needs because it leaves the particle in place when chirality equals vertex.
    """
    if n < MIN_COMPLETE_VERTICES:
        raise InvalidParameterError(f"complete graph needs n >= {MIN_COMPLETE_VERTICES}, got {n}")
    v = np.arange(n)
    offsets = np.arange(n) if loops else np.arange(1, n)
    table = (v[:, None] + offsets[None, :]) % n
    return _from_table(table, f"complete:{n}", loops=loops)


class GraphFile(BaseModel):
    """On-disk description of a custom labelled graph."""

    n_vertices: int = Field(ge=1)
    degree: int = Field(ge=1)
    labelling: list[list[int]]


def read_graph_file(path: Path) -> LabelledGraph:
    """Read a custom graph from a JSON file without checking its structure."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        spec = GraphFile.model_validate(raw)
    except FileNotFoundError:
        raise SpecParseError(f"graph file not found: {path}") from None
    except (json.JSONDecodeError, ValidationError) as exc:
        raise SpecParseError(f"graph file {path} is malformed: {exc}") from None

    try:
        table = np.asarray(spec.labelling, dtype=np.int64)
    except ValueError:
        raise GraphError(f"graph file {path}: labelling rows have unequal lengths") from None
    if table.ndim != 2:  # noqa: PLR2004
        raise GraphError(f"graph file {path}: labelling must be a table")
    graph = LabelledGraph(
        n_vertices=spec.n_vertices,
        degree=spec.degree,
        labelling=table,
        name=f"@{path}",
    )
    logger.debug("graph.loaded", path=str(path), n_vertices=spec.n_vertices, degree=spec.degree)
    return graph


def load_graph_file(path: Path) -> LabelledGraph:
    """Read, validate and return a custom graph from a JSON file."""
    return read_graph_file(path).validate()
