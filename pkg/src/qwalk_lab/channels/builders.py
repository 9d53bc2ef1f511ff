"""Channel constructors and the textual/JSON channel specs used by the CLI."""

from __future__ import annotations

import json
from collections.abc import Sequence
from enum import StrEnum
from typing import Annotated, Any, Literal

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from qwalk_lab.channels.superoperator import Superoperator
from qwalk_lab.core.exceptions import ChannelError, InvalidParameterError, SpecParseError
from qwalk_lab.walks.coins import unitarity_residual
from qwalk_lab.walks.factory import GraphSpec, build_walk
from qwalk_lab.walks.operators import WALK_UNITARY_TOL, UnitaryWalk

logger = structlog.get_logger()

WEIGHT_TOL = 1e-12
PROJECTOR_TOL = 1e-10

ComplexArray = NDArray[np.complex128]
UnitaryLike = UnitaryWalk | ArrayLike


class ChannelKind(StrEnum):
    UNITARY = "unitary"
    MIXTURE = "mixture"
    MEASURED = "measured"
    DEPOLARIZING = "depolarizing"


class ProjectorKind(StrEnum):
    SITE_BASIS = "site-basis"
    VERTEX = "vertex"


def _unitary_matrix(unitary: UnitaryLike) -> ComplexArray:
    matrix = unitary.dense() if isinstance(unitary, UnitaryWalk) else np.asarray(unitary)
    matrix = np.asarray(matrix, dtype=np.complex128)
    residual = unitarity_residual(matrix)
    if residual > WALK_UNITARY_TOL:
        raise ChannelError(f"channel term is not unitary (residual {residual:.2e})")
    return matrix


def site_projectors(dim: int) -> ComplexArray:
    """Rank-1 projectors |x><x| onto every site."""
    projectors = np.zeros((dim, dim, dim), dtype=np.complex128)
    projectors[np.arange(dim), np.arange(dim), np.arange(dim)] = 1.0
    return projectors


def vertex_projectors(dims: tuple[int, int]) -> ComplexArray:
    """P_v = |v><v| x I_S, one per vertex."""
    n_vertices, n_chiralities = dims
    dim = n_vertices * n_chiralities
    projectors = np.zeros((n_vertices, dim, dim), dtype=np.complex128)
    for v in range(n_vertices):
        block = np.arange(v * n_chiralities, (v + 1) * n_chiralities)
        projectors[v, block, block] = 1.0
    return projectors


def _check_projectors(projectors: ComplexArray) -> None:
    dim = projectors.shape[1]
    for i, proj in enumerate(projectors):
        if np.max(np.abs(proj @ proj - proj)) > PROJECTOR_TOL or np.max(
            np.abs(proj - proj.conj().T)
        ) > PROJECTOR_TOL:
            raise ChannelError(f"operator {i} is not an orthogonal projector")
    if np.max(np.abs(projectors.sum(axis=0) - np.eye(dim))) > PROJECTOR_TOL:
        raise ChannelError("projectors do not resolve the identity")


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"probability must lie in [0, 1], got {p}")


def unitary_channel(unitary: UnitaryLike, *, name: str = "unitary") -> Superoperator:
    return Superoperator.from_kraus(_unitary_matrix(unitary), name=name)


def mixture_channel(
    terms: Sequence[tuple[float, UnitaryLike]], *, name: str = "mixture"
) -> Superoperator:
    """T(rho) = sum_i p_i U_i rho U_i^dagger with p_i > 0 summing to 1."""
    if not terms:
        raise ChannelError("a mixture needs at least one term")
    weights = np.array([w for w, _ in terms], dtype=np.float64)
    if np.any(weights <= 0.0):
        raise ChannelError(f"mixture weights must be positive, got {weights.tolist()}")
    if abs(weights.sum() - 1.0) > WEIGHT_TOL:
        raise ChannelError(f"mixture weights sum to {weights.sum():.15g}, not 1")
    kraus = [np.sqrt(w) * _unitary_matrix(u) for w, u in terms]
    return Superoperator.from_kraus(kraus, name=name)


def measured_channel(
    unitary: UnitaryLike, p: float, projectors: ArrayLike, *, name: str = "measured"
) -> Superoperator:
    """T(rho) = p sum_i P_i rho P_i + (1 - p) U rho U^dagger."""
    _check_probability(p)
    matrix = _unitary_matrix(unitary)
    stack = np.asarray(projectors, dtype=np.complex128)
    if stack.ndim != 3 or stack.shape[1:] != matrix.shape:  # noqa: PLR2004
        raise ChannelError(f"projectors of shape {stack.shape} do not match U {matrix.shape}")
    _check_projectors(stack)
    kraus: list[ComplexArray] = []
    if p > 0.0:
        kraus.extend(np.sqrt(p) * stack)
    if p < 1.0:
        kraus.append(np.sqrt(1.0 - p) * matrix)
    return Superoperator.from_kraus(kraus, name=name)


def depolarizing_channel(
    unitary: UnitaryLike, p: float, *, name: str = "depolarizing"
) -> Superoperator:
    """T(rho) = p Tr(rho) I / N + (1 - p) U rho U^dagger."""
    _check_probability(p)
    matrix = _unitary_matrix(unitary)
    return Superoperator.from_kraus(np.sqrt(1.0 - p) * matrix, replacement=p, name=name)


def build_channel(kind: ChannelKind | str, **params: Any) -> Superoperator:
    """Dispatch to the constructor of *kind*.

    unitary: ``unitary``; mixture: ``terms`` as (weight, unitary) pairs;
    measured: ``unitary``, ``p``, ``projectors``; depolarizing: ``unitary``, ``p``.
    """
    try:
        kind = ChannelKind(kind)
    except ValueError:
        valid = [k.value for k in ChannelKind]
        raise InvalidParameterError(f"Unknown channel kind '{kind}'. Valid: {valid}") from None
    try:
        match kind:
            case ChannelKind.UNITARY:
                channel = unitary_channel(params["unitary"])
            case ChannelKind.MIXTURE:
                channel = mixture_channel(params["terms"])
            case ChannelKind.MEASURED:
                channel = measured_channel(params["unitary"], params["p"], params["projectors"])
            case ChannelKind.DEPOLARIZING:
                channel = depolarizing_channel(params["unitary"], params["p"])
    except KeyError as exc:
        raise InvalidParameterError(f"channel kind '{kind}' needs parameter {exc}") from None
    logger.debug(
        "channel.built",
        kind=kind.value,
        dim=channel.dim,
        n_kraus=channel.n_kraus,
        residual=channel.kraus_residual(),
    )
    return channel


class _SpecBase(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class UnitaryChannelSpec(_SpecBase):
    kind: Literal["unitary"] = "unitary"
    walk: str | None = None


class MixtureTerm(_SpecBase):
    weight: float = Field(gt=0.0, le=1.0)
    walk: str


class MixtureChannelSpec(_SpecBase):
    kind: Literal["mixture"] = "mixture"
    terms: list[MixtureTerm] = Field(min_length=1)


class MeasuredChannelSpec(_SpecBase):
    kind: Literal["measured"] = "measured"
    p: float = Field(ge=0.0, le=1.0)
    projectors: ProjectorKind = ProjectorKind.SITE_BASIS
    walk: str | None = None


class DepolarizingChannelSpec(_SpecBase):
    kind: Literal["depolarizing"] = "depolarizing"
    p: float = Field(ge=0.0, le=1.0)
    walk: str | None = None


ChannelSpec = Annotated[
    UnitaryChannelSpec | MixtureChannelSpec | MeasuredChannelSpec | DepolarizingChannelSpec,
    Field(discriminator="kind"),
]

_CHANNEL_SPEC_ADAPTER: TypeAdapter[ChannelSpec] = TypeAdapter(ChannelSpec)


def _shorthand(text: str) -> dict[str, Any]:
    """``measured:p=0.1,projectors=vertex`` into a dict."""
    kind, _, rest = text.partition(":")
    payload: dict[str, Any] = {"kind": kind.strip()}
    for item in filter(None, (part.strip() for part in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise SpecParseError(f"channel option '{item}' is not key=value")
        payload[key.strip()] = value.strip()
    return payload


def parse_channel_spec(text: str | dict[str, Any]) -> ChannelSpec:
    """Validate a channel spec given as JSON, a dict, or ``kind:key=value,...``."""
    try:
        if isinstance(text, dict):
            payload = text
        elif text.lstrip().startswith("{"):
            payload = json.loads(text)
        else:
            payload = _shorthand(text)
        return _CHANNEL_SPEC_ADAPTER.validate_python(payload)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"channel spec is not valid JSON: {exc}") from None
    except ValidationError as exc:
        raise SpecParseError(f"channel spec is invalid: {exc}") from None


def channel_from_spec(
    spec: ChannelSpec, graph: GraphSpec, default_walk: str | None = None
) -> Superoperator:
    """Build the channel described by *spec* from walks on *graph*."""
    name = f"{spec.kind}@{graph.graph.name}"
    match spec:
        case UnitaryChannelSpec():
            walk = build_walk(graph, spec.walk or default_walk)
            return unitary_channel(walk, name=name)
        case MixtureChannelSpec():
            terms = [(term.weight, build_walk(graph, term.walk)) for term in spec.terms]
            return mixture_channel(terms, name=name)
        case MeasuredChannelSpec():
            walk = build_walk(graph, spec.walk or default_walk)
            projectors = (
                site_projectors(walk.dim)
                if spec.projectors is ProjectorKind.SITE_BASIS
                else vertex_projectors(walk.dims)
            )
            return measured_channel(walk, spec.p, projectors, name=name)
        case DepolarizingChannelSpec():
            walk = build_walk(graph, spec.walk or default_walk)
            return depolarizing_channel(walk, spec.p, name=name)
