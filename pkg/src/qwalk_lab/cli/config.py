"""Experiment configuration for CLI runs, from flags and an optional YAML file."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from qwalk_lab.channels.mixing import DEFAULT_WINDOW
from qwalk_lab.core.exceptions import SpecParseError
from qwalk_lab.mixing.families import DEFAULT_FAMILIES

DEFAULT_EPSILON = 0.05
DEFAULT_TOL = 1e-9
DEFAULT_CHANNEL_STEPS = 200


class ExperimentConfig(BaseModel):
    """Everything one CLI command needs; flags override values read from YAML."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    graph: str = Field(min_length=1)
    walk: str | None = None
    eps: float = Field(default=DEFAULT_EPSILON, gt=0.0, lt=2.0)
    families: str = DEFAULT_FAMILIES
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=DEFAULT_TOL, gt=0.0)
    out: Path | None = None
    curve: Path | None = None
    decohere: str | None = None
    steps: int = Field(default=DEFAULT_CHANNEL_STEPS, ge=0)
    window: int = Field(default=DEFAULT_WINDOW, ge=0)
    probe_only: bool = False


def _read_yaml(path: Path) -> dict[str, Any]:
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SpecParseError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise SpecParseError(f"config file {path} is not valid YAML: {exc}") from None
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise SpecParseError(f"config file {path} must hold a mapping, got {type(raw).__name__}")
    return raw


def load_config(path: Path | None = None, **overrides: Any) -> ExperimentConfig:
    """Merge the YAML file at *path* with every override that is not None.

    Raises pydantic ``ValidationError`` naming the offending field.
    """
    payload = _read_yaml(path) if path is not None else {}
    payload.update({key: value for key, value in overrides.items() if value is not None})
    return ExperimentConfig.model_validate(payload)


def offending_fields(exc: ValidationError) -> list[str]:
    """Dotted field paths of every error in *exc*, for diagnostics."""
    return [".".join(str(part) for part in err["loc"]) or "<root>" for err in exc.errors()]
