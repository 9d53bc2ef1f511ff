"""Registry of graph families, walk kinds and candidate families."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any, TypeVar

from qwalk_lab.core.exceptions import UnknownEntryError

_VALID_KINDS = frozenset({"graph", "walk", "family"})

_REGISTRY: dict[str, dict[str, Any]] = {kind: {} for kind in _VALID_KINDS}

EntryT = TypeVar("EntryT")


def register(kind: str, name: str) -> Callable[[EntryT], EntryT]:
    """Decorator that registers a builder or class under *kind*/*name*."""

    def decorator(entry: EntryT) -> EntryT:
        if kind not in _VALID_KINDS:
            msg = f"Unknown registry kind '{kind}'. Valid: {sorted(_VALID_KINDS)}"
            raise ValueError(msg)
        _REGISTRY[kind][name] = entry
        return entry

    return decorator


def get_entry(kind: str, name: str) -> Any:
    """Retrieve a registered entry."""
    _ensure_builtins_loaded()
    try:
        return _REGISTRY[kind][name]
    except KeyError:
        available = sorted(_REGISTRY.get(kind, {}).keys())
        raise UnknownEntryError(
            f"Unknown {kind} '{name}'. Available: {available}"
        ) from None


def list_entries(kind: str | None = None) -> dict[str, list[str]]:
    """List registered entries, optionally filtered by kind."""
    _ensure_builtins_loaded()
    if kind:
        return {kind: sorted(_REGISTRY.get(kind, {}).keys())}
    return {k: sorted(entries.keys()) for k, entries in _REGISTRY.items()}


def register_graph(name: str) -> Callable[[EntryT], EntryT]:
    return register("graph", name)


def register_walk(name: str) -> Callable[[EntryT], EntryT]:
    return register("walk", name)


def register_family(name: str) -> Callable[[EntryT], EntryT]:
    return register("family", name)


def _ensure_builtins_loaded() -> None:
    """Import the modules whose decorators populate the registry."""
    import qwalk_lab.mixing.families
    import qwalk_lab.walks.factory
    import qwalk_lab.walks.graphs  # noqa: F401
