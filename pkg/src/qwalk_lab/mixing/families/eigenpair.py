"""Equal superpositions of eigenvectors from the closest eigenvalue pairs."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, Field

from qwalk_lab.core.interfaces import BaseCandidateFamily
from qwalk_lab.core.registry import register_family
from qwalk_lab.mixing.families.context import Candidate, FamilyContext
from qwalk_lab.spectral.decomposition import circular_distances, smallest_gaps
from qwalk_lab.states import WaveFunction, overlap

DEFAULT_N_GAPS = 3
DEFAULT_MAX_VECTORS = 4


class EigenpairFamilyConfig(BaseModel):
    """How many of the smallest gaps to visit and how many vectors per eigenspace."""

    n_gaps: int = Field(default=DEFAULT_N_GAPS, ge=1)
    max_vectors: int = Field(default=DEFAULT_MAX_VECTORS, ge=1)


def _numeric_vectors(context: FamilyContext, k: int, limit: int) -> list[np.ndarray]:
    bases = context.spec.bases
    if bases is None:
        return []
    return [bases[k][:, j] for j in range(min(limit, bases[k].shape[1]))]


def _eigenspace_vectors(context: FamilyContext, k: int, limit: int) -> list[np.ndarray]:
    """Closed-form generators when available (they carry the printed structure)."""
    closed = context.closed
    if closed is not None and closed.m == context.spec.m:
        match = int(np.argmin(circular_distances(closed.phases, context.spec.phases[k])))
        return closed.vectors_for(match, limit)
    return _numeric_vectors(context, k, limit)


@register_family("eigenpair")
class EigenpairFamily(BaseCandidateFamily[EigenpairFamilyConfig]):
    """States (psi + psi') / sqrt 2 with psi, psi' from two close eigenspaces.

    Eigenspaces are orthogonal, so every such state has unit norm. In a
    degenerate eigenspace the overlap with the partner depends on the chosen
    vectors, so each generator pair up to ``max_vectors`` is tried.
    """

    config_model = EigenpairFamilyConfig

    @property
    def family_name(self) -> str:
        return "eigenpair"

    def generate(self, context: FamilyContext) -> list[Candidate]:
        if context.spec.m < 2:  # noqa: PLR2004
            return []
        limit = self.config.max_vectors
        candidates: list[Candidate] = []
        for k, l, gap in smallest_gaps(context.spec, self.config.n_gaps):  # noqa: E741
            left = _eigenspace_vectors(context, k, limit)
            right = _eigenspace_vectors(context, l, limit)
            for i, phi in enumerate(left):
                for j, chi in enumerate(right):
                    candidates.append(
                        Candidate(
                            label=f"eigenpair[{k},{l}]#{i}.{j}",
                            family=self.family_name,
                            psi=WaveFunction.normalized((phi + chi) / np.sqrt(2.0), context.dims),
                            overlap=overlap(phi, chi),
                            gap=gap,
                        )
                    )
        return candidates
