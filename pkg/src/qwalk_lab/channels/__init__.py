"""Non-unitary walks as quantum channels."""

from __future__ import annotations

from qwalk_lab.channels.analysis import (
    StationaryDensity,
    contraction_check,
    primitivity_check,
    stationary_density,
    traceless_spectral_radius,
)
from qwalk_lab.channels.builders import (
    ChannelKind,
    ProjectorKind,
    build_channel,
    channel_from_spec,
    parse_channel_spec,
)
from qwalk_lab.channels.mixing import (
    channel_locality_check,
    channel_mixing_report,
    channel_mixing_time,
    convergence_curve,
)
from qwalk_lab.channels.superoperator import Superoperator, apply_channel

__all__ = [
    "ChannelKind",
    "ProjectorKind",
    "StationaryDensity",
    "Superoperator",
    "apply_channel",
    "build_channel",
    "channel_from_spec",
    "channel_locality_check",
    "channel_mixing_report",
    "channel_mixing_time",
    "contraction_check",
    "convergence_curve",
    "parse_channel_spec",
    "primitivity_check",
    "stationary_density",
    "traceless_spectral_radius",
]
