"""Delta-function initial states (the basis-restricted mixing time)."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, Field

from qwalk_lab.core.interfaces import BaseCandidateFamily
from qwalk_lab.core.registry import register_family
from qwalk_lab.core.rng import STREAM_BASIS_SAMPLE, make_rng
from qwalk_lab.mixing.families.context import Candidate, FamilyContext
from qwalk_lab.states import SiteIndex, WaveFunction

DEFAULT_MAX_STATES = 256


class BasisFamilyConfig(BaseModel):
    """Every site, or a seeded sample of sites when there are too many."""

    max_states: int | None = Field(default=DEFAULT_MAX_STATES, ge=1)


@register_family("basis")
class BasisFamily(BaseCandidateFamily[BasisFamilyConfig]):
    config_model = BasisFamilyConfig

    @property
    def family_name(self) -> str:
        return "basis"

    def generate(self, context: FamilyContext) -> list[Candidate]:
        size = context.dims[0] * context.dims[1]
        limit = self.config.max_states
        if limit is None or size <= limit:
            sites = np.arange(size)
        else:
            rng = make_rng(context.seed, STREAM_BASIS_SAMPLE)
            sites = np.sort(rng.choice(size, size=limit, replace=False))

        candidates = []
        for index in sites.tolist():
            site = SiteIndex.from_flat(index, context.dims[1])
            candidates.append(
                Candidate(
                    label=f"basis({site.vertex},{site.chirality})",
                    family=self.family_name,
                    psi=WaveFunction.basis(context.dims, index),
                )
            )
        return candidates
