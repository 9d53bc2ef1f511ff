"""Walk construction: graphs, coins and unitaries."""

from __future__ import annotations

from qwalk_lab.walks.coins import Coin, CoinKind, standard_coin
from qwalk_lab.walks.graphs import LabelledGraph, complete_graph, cycle_graph, hypercube_graph
from qwalk_lab.walks.operators import (
    CoinOrder,
    UnitaryWalk,
    build_coined_walk,
    complete_graph_walk,
    evolve,
    hypercube_walk,
    locality_check,
)

__all__ = [
    "Coin",
    "CoinKind",
    "CoinOrder",
    "LabelledGraph",
    "UnitaryWalk",
    "build_coined_walk",
    "complete_graph",
    "complete_graph_walk",
    "cycle_graph",
    "evolve",
    "hypercube_graph",
    "hypercube_walk",
    "locality_check",
    "standard_coin",
]
