"""Inputs and outputs shared by the candidate families."""

from __future__ import annotations

from dataclasses import dataclass

from qwalk_lab.spectral.closed_form import ClosedFormSpectrum
from qwalk_lab.spectral.decomposition import SpectralDecomposition
from qwalk_lab.states import WaveFunction


@dataclass(frozen=True)
class FamilyContext:
    """What a family may look at when generating its states."""

    spec: SpectralDecomposition
    dims: tuple[int, int]
    seed: int = 0
    closed: ClosedFormSpectrum | None = None


@dataclass(frozen=True)
class Candidate:
    """One initial state, with the eigenpair data it was built from if any."""

    label: str
    family: str
    psi: WaveFunction
    overlap: float | None = None
    gap: float | None = None
