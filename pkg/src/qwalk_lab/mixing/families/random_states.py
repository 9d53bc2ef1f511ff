"""Haar-random initial states."""

from __future__ import annotations

from pydantic import BaseModel, Field

from qwalk_lab.core.interfaces import BaseCandidateFamily
from qwalk_lab.core.registry import register_family
from qwalk_lab.core.rng import STREAM_RANDOM_STATES, make_rng
from qwalk_lab.mixing.families.context import Candidate, FamilyContext
from qwalk_lab.states import WaveFunction

DEFAULT_RANDOM_COUNT = 50


class RandomFamilyConfig(BaseModel):
    count: int = Field(default=DEFAULT_RANDOM_COUNT, ge=1)


@register_family("random")
class RandomFamily(BaseCandidateFamily[RandomFamilyConfig]):
    """Normalised complex Gaussian vectors, which are Haar distributed on the sphere."""

    config_model = RandomFamilyConfig

    @property
    def family_name(self) -> str:
        return "random"

    def generate(self, context: FamilyContext) -> list[Candidate]:
        rng = make_rng(context.seed, STREAM_RANDOM_STATES)
        size = context.dims[0] * context.dims[1]
        draws = rng.normal(size=(self.config.count, size)) + 1j * rng.normal(
            size=(self.config.count, size)
        )
        return [
            Candidate(
                label=f"random#{i}",
                family=self.family_name,
                psi=WaveFunction.normalized(vec, context.dims),
            )
            for i, vec in enumerate(draws)
        ]
