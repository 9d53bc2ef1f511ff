"""Abstract base class for pluggable candidate-state families."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, ClassVar, Generic, TypeVar

if TYPE_CHECKING:
    from qwalk_lab.mixing.families.context import Candidate, FamilyContext

ConfigT = TypeVar("ConfigT")


class BaseCandidateFamily(ABC, Generic[ConfigT]):
    """Generates the initial states over which the mixing-time sup is estimated."""

    config_model: ClassVar[type[Any]]

    def __init__(self, config: ConfigT) -> None:
        self.config = config

    @property
    @abstractmethod
    def family_name(self) -> str: ...

    @abstractmethod
    def generate(self, context: FamilyContext) -> list[Candidate]: ...
