"""Graph validation: checks that a graph spec is a consistently labelled regular graph."""

from __future__ import annotations

from pathlib import Path

from qwalk_lab.core.exceptions import QWalkLabError
from qwalk_lab.walks.factory import GraphSpec, build_walk, parse_graph_spec
from qwalk_lab.walks.graphs import read_graph_file
from qwalk_lab.walks.operators import WALK_UNITARY_TOL, locality_check, walk_unitarity_residual


def _load(text: str, errors: list[str]) -> GraphSpec | None:
    text = text.strip()
    try:
        if text.startswith("@"):
            graph = read_graph_file(Path(text[1:]))
            return GraphSpec(text=text, graph=graph)
        return parse_graph_spec(text)
    except QWalkLabError as exc:
        errors.append(str(exc))
        return None


def check_graph(text: str, walk_kinds: tuple[str, ...] = ()) -> list[str]:
    """Validate a graph spec (and walks on it) and return a list of error messages."""
    errors: list[str] = []
    spec = _load(text, errors)
    if spec is None:
        return errors

    errors.extend(spec.graph.check())
    if errors:
        return errors

    for kind in walk_kinds:
        _check_walk(spec, kind, errors)
    return errors


def _check_walk(spec: GraphSpec, kind: str, errors: list[str]) -> None:
    """Build the walk, then verify it is unitary and moves only along edges."""
    try:
        walk = build_walk(spec, kind)
    except QWalkLabError as exc:
        errors.append(f"{kind}: build failed - {exc}")
        return

    if walk.is_dense:
        residual = walk_unitarity_residual(walk)
        if residual > WALK_UNITARY_TOL:
            errors.append(f"{kind}: not unitary (residual {residual:.2e})")

    if not locality_check(walk):
        errors.append(f"{kind}: moves amplitude between non-adjacent vertices")
