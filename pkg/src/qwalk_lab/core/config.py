"""Global settings via pydantic-settings."""

from __future__ import annotations

from functools import lru_cache

from pydantic_settings import BaseSettings


class QWalkLabSettings(BaseSettings):
    """Global configuration loaded from env vars / .env."""

    model_config = {"env_prefix": "QWLAB_"}

    log_level: str = "INFO"
    log_json: bool = False

    dense_cap: int = 4096
    vector_cap: int = 64

    cluster_tol: float = 1e-8
    peripheral_tol: float = 1e-9
    positivity_tol: float = 1e-10

    step_budget: int = 100_000
    mixing_window_cap: int = 2_000_000
    channel_step_cap: int = 20_000
    probe_cap: int = 200


@lru_cache(maxsize=1)
def get_settings() -> QWalkLabSettings:
    """Process-wide settings instance."""
    return QWalkLabSettings()
