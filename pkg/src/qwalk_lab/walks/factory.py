"""Graph specifiers and the registry of walk kinds."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from qwalk_lab.core.exceptions import InvalidParameterError, SpecParseError
from qwalk_lab.core.registry import get_entry, register_walk
from qwalk_lab.walks.coins import CoinKind, standard_coin
from qwalk_lab.walks.graphs import LabelledGraph, load_graph_file
from qwalk_lab.walks.operators import (
    UnitaryWalk,
    build_coined_walk,
    complete_graph_walk,
    hypercube_walk,
    identity_walk,
)

_FAMILY_RE = re.compile(r"^(?P<family>[a-z][a-z0-9_]*):(?P<n>\d+)$")

DEFAULT_WALKS: dict[str, str] = {
    "cycle": "hadamard",
    "hypercube": "grover",
    "complete": "complete",
}
DEFAULT_CUSTOM_WALK = "grover"


@dataclass(frozen=True)
class GraphSpec:
    """A parsed ``family:n`` or ``@path`` graph specifier."""

    text: str
    graph: LabelledGraph
    family: str | None = None
    n: int | None = None


def parse_graph_spec(text: str) -> GraphSpec:
    """Resolve ``cycle:8``, ``hypercube:4``, ``complete:5`` or ``@graph.json``."""
    text = text.strip()
    if text.startswith("@"):
        graph = load_graph_file(Path(text[1:]))
        return GraphSpec(text=text, graph=graph)
    match = _FAMILY_RE.match(text)
    if not match:
        raise SpecParseError(f"graph spec '{text}' is neither family:n nor @path")
    family, n = match.group("family"), int(match.group("n"))
    builder = get_entry("graph", family)
    return GraphSpec(text=text, graph=builder(n), family=family, n=n)


def default_walk_kind(spec: GraphSpec) -> str:
    if spec.family is None:
        return DEFAULT_CUSTOM_WALK
    return DEFAULT_WALKS.get(spec.family, DEFAULT_CUSTOM_WALK)


def build_walk(spec: GraphSpec | str, walk_kind: str | None = None) -> UnitaryWalk:
    """Build the walk of kind *walk_kind* (or the family default) on *spec*."""
    if isinstance(spec, str):
        spec = parse_graph_spec(spec)
    kind = walk_kind or default_walk_kind(spec)
    builder = get_entry("walk", kind)
    walk: UnitaryWalk = builder(spec)
    return walk


def _coined(spec: GraphSpec, kind: CoinKind) -> UnitaryWalk:
    return build_coined_walk(spec.graph, standard_coin(kind, spec.graph.degree))


@register_walk("hadamard")
def _hadamard_walk(spec: GraphSpec) -> UnitaryWalk:
    return _coined(spec, CoinKind.HADAMARD)


@register_walk("grover")
def _grover_walk(spec: GraphSpec) -> UnitaryWalk:
    if spec.family == "hypercube" and spec.n is not None:
        return hypercube_walk(spec.n)
    return _coined(spec, CoinKind.GROVER)


@register_walk("fourier")
def _fourier_walk(spec: GraphSpec) -> UnitaryWalk:
    return _coined(spec, CoinKind.FOURIER)


@register_walk("identity")
def _identity_walk(spec: GraphSpec) -> UnitaryWalk:
    return identity_walk(spec.graph)


@register_walk("complete")
def _complete_walk(spec: GraphSpec) -> UnitaryWalk:
    if spec.family != "complete" or spec.n is None:
        raise InvalidParameterError(
            f"walk 'complete' needs a complete:n graph, got '{spec.text}'"
        )
    return complete_graph_walk(spec.n)
