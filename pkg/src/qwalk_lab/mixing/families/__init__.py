"""Built-in candidate families; importing this package registers them."""

from __future__ import annotations

import re
from typing import Any

from qwalk_lab.core.exceptions import SpecParseError
from qwalk_lab.core.interfaces import BaseCandidateFamily
from qwalk_lab.core.registry import get_entry
from qwalk_lab.mixing.families.basis import BasisFamily, BasisFamilyConfig
from qwalk_lab.mixing.families.context import Candidate, FamilyContext
from qwalk_lab.mixing.families.eigenpair import EigenpairFamily, EigenpairFamilyConfig
from qwalk_lab.mixing.families.random_states import RandomFamily, RandomFamilyConfig

_ITEM_RE = re.compile(r"^(?P<name>[a-z_]+)(?::(?P<count>\d+))?$")

# The optional ``:count`` of each family sets this config field.
_COUNT_FIELDS: dict[str, str] = {
    "basis": "max_states",
    "eigenpair": "n_gaps",
    "random": "count",
}

DEFAULT_FAMILIES = "basis,eigenpair,random:50"


def parse_families(text: str) -> list[BaseCandidateFamily[Any]]:
    """Build families from ``"basis,eigenpair:2,random:50"``."""
    families: list[BaseCandidateFamily[Any]] = []
    for item in (part.strip() for part in text.split(",")):
        if not item:
            continue
        match = _ITEM_RE.match(item)
        if not match:
            raise SpecParseError(f"family '{item}' is not of the form name[:count]")
        name = match.group("name")
        family_cls = get_entry("family", name)
        config_cls = family_cls.config_model
        params: dict[str, int] = {}
        if match.group("count") is not None:
            params[_COUNT_FIELDS.get(name, "count")] = int(match.group("count"))
        families.append(family_cls(config_cls(**params)))
    if not families:
        raise SpecParseError(f"no candidate families in '{text}'")
    return families


__all__ = [
    "DEFAULT_FAMILIES",
    "BasisFamily",
    "BasisFamilyConfig",
    "Candidate",
    "EigenpairFamily",
    "EigenpairFamilyConfig",
    "FamilyContext",
    "RandomFamily",
    "RandomFamilyConfig",
    "parse_families",
]
