"""Spectral decompositions, relaxation times and closed-form oracles."""

from __future__ import annotations

from qwalk_lab.spectral.closed_form import (
    ClosedFormSpectrum,
    closed_form_spectrum,
    closest_pair_overlap,
    hypercube_pairings,
)
from qwalk_lab.spectral.decomposition import (
    SpectralDecomposition,
    chordal_relaxation_time,
    circular_distance,
    decompose,
    min_phase_gap,
    relaxation_time,
)
from qwalk_lab.spectral.validation import cross_validate

__all__ = [
    "ClosedFormSpectrum",
    "SpectralDecomposition",
    "chordal_relaxation_time",
    "circular_distance",
    "closed_form_spectrum",
    "closest_pair_overlap",
    "cross_validate",
    "decompose",
    "hypercube_pairings",
    "min_phase_gap",
    "relaxation_time",
]
