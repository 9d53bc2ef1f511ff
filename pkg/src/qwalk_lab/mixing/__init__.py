"""Averaged distances, mixing times, analytic bounds and classical baselines."""

from __future__ import annotations

from qwalk_lab.mixing.bounds import (
    theorem1_upper_bound,
    theorem2_lower_bound,
    theorem2_status,
    two_eigenvector_distance,
)
from qwalk_lab.mixing.classical import (
    classical_mixing_time,
    lazy_cycle_chain,
    simple_random_walk_chain,
)
from qwalk_lab.mixing.distance import (
    DistanceMode,
    averaged_distance,
    averaged_distribution,
    distance_curve,
    distance_envelope,
)
from qwalk_lab.mixing.mixing_time import (
    mixing_time_for_state,
    mixing_time_sup_estimate,
    state_mixing,
)

__all__ = [
    "DistanceMode",
    "averaged_distance",
    "averaged_distribution",
    "classical_mixing_time",
    "distance_curve",
    "distance_envelope",
    "lazy_cycle_chain",
    "mixing_time_for_state",
    "mixing_time_sup_estimate",
    "simple_random_walk_chain",
    "state_mixing",
    "theorem1_upper_bound",
    "theorem2_lower_bound",
    "theorem2_status",
    "two_eigenvector_distance",
]
