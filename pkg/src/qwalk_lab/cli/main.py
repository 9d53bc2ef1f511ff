"""CLI entry point for qwalk-lab."""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import structlog
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from qwalk_lab.cli.config import ExperimentConfig, load_config, offending_fields
from qwalk_lab.core.config import get_settings
from qwalk_lab.core.exceptions import (
    CapacityExceededError,
    CoinError,
    GraphError,
    InvalidParameterError,
    QWalkLabError,
    SpecParseError,
    UnknownEntryError,
)
from qwalk_lab.core.logging import setup_logging
from qwalk_lab.core.registry import list_entries

if TYPE_CHECKING:
    from pydantic import BaseModel

    from qwalk_lab.core.contracts import MixingReport, SpectrumSource
    from qwalk_lab.spectral.closed_form import ClosedFormSpectrum
    from qwalk_lab.spectral.decomposition import SpectralDecomposition
    from qwalk_lab.walks.factory import GraphSpec

app = typer.Typer(
    name="qwlab",
    help="qwalk-lab - spectra, mixing times and decoherence of discrete-time quantum walks",
    no_args_is_help=True,
)
console = Console(stderr=True)
logger = structlog.get_logger()

EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

CAPACITY_HINT = (
    "hint: raise QWLAB_DENSE_CAP / QWLAB_VECTOR_CAP, pick a family with a closed form "
    "(cycle, hypercube, complete with their default walks), or use --probe-only for channels"
)

GraphOpt = typer.Option(None, "--graph", "-g", help="cycle:n, hypercube:n, complete:n or @file")
WalkOpt = typer.Option(None, "--walk", "-w", help="hadamard, grover, fourier, complete, identity")
EpsOpt = typer.Option(None, "--eps", help="Distance threshold epsilon (default 0.05)")
SeedOpt = typer.Option(None, "--seed", help="Seed for every random candidate and probe")
OutOpt = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout")
ConfigOpt = typer.Option(None, "--config", help="YAML file with experiment settings")
FamiliesOpt = typer.Option(None, "--families", help="e.g. basis,eigenpair:3,random:50")
CurveOpt = typer.Option(None, "--curve", help="Write the distance curve as CSV")
TolOpt = typer.Option(None, "--tol", help="Cross-validation tolerance (default 1e-9)")


def _fail(message: str, code: int) -> typer.Exit:
    logger.error("cli.command_failed", error=message, exit_code=code)
    console.print(f"[red]{escape(message)}[/]")
    return typer.Exit(code=code)


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map domain errors to exit codes: 2 for bad input, 1 for failed computations."""
    try:
        yield
    except ValidationError as exc:
        fields = ", ".join(offending_fields(exc))
        raise _fail(f"invalid configuration ({fields}): {exc}", EXIT_BAD_INPUT) from None
    except CapacityExceededError as exc:
        raise _fail(f"{exc}\n{CAPACITY_HINT}", EXIT_BAD_INPUT) from None
    except (SpecParseError, UnknownEntryError, InvalidParameterError, GraphError, CoinError) as exc:
        raise _fail(str(exc), EXIT_BAD_INPUT) from None
    except QWalkLabError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}", EXIT_FAILED) from None


def _emit(report: BaseModel, out: Path | None) -> None:
    from qwalk_lab.cli.export import export_json, write_atomic

    text = export_json(report)
    if out is None:
        print(text, end="")
        return
    write_atomic(out, text)
    console.print(f"[green]Report saved to {out}[/]")


@dataclass(frozen=True)
class _Resolved:
    """A parsed graph with the decomposition of the requested walk on it."""

    graph: GraphSpec
    walk_kind: str
    dims: tuple[int, int]
    decomposition: SpectralDecomposition
    closed: ClosedFormSpectrum | None
    source: SpectrumSource


def _closed_form_for(graph: GraphSpec, walk_kind: str) -> ClosedFormSpectrum | None:
    from qwalk_lab.spectral.closed_form import closed_form_spectrum
    from qwalk_lab.walks.factory import DEFAULT_WALKS

    if graph.family is None or graph.n is None:
        return None
    if DEFAULT_WALKS.get(graph.family) != walk_kind:
        return None
    return closed_form_spectrum(graph.family, graph.n)


def _resolve(config: ExperimentConfig) -> _Resolved:
    """Numeric decomposition when the walk fits the dense cap, closed form otherwise."""
    from qwalk_lab.core.contracts import SpectrumSource
    from qwalk_lab.spectral.decomposition import decompose
    from qwalk_lab.walks.factory import build_walk, default_walk_kind, parse_graph_spec

    graph = parse_graph_spec(config.graph)
    kind = config.walk or default_walk_kind(graph)
    walk = build_walk(graph, kind)
    closed = _closed_form_for(graph, kind)

    if walk.is_dense:
        decomposition = decompose(walk)
        source = SpectrumSource.NUMERIC
    elif closed is not None:
        decomposition = closed.decomposition
        source = SpectrumSource.CLOSED_FORM
    else:
        raise CapacityExceededError(
            f"walk '{kind}' on {graph.text} has dimension {walk.dim} above the dense cap "
            f"{get_settings().dense_cap} and no closed form"
        )
    logger.info("cli.resolved", graph=graph.text, walk=kind, dim=walk.dim, source=source.value)
    return _Resolved(
        graph=graph,
        walk_kind=kind,
        dims=walk.dims,
        decomposition=decomposition,
        closed=closed,
        source=source,
    )


def _relaxation(decomposition: SpectralDecomposition) -> tuple[float | None, float | None]:
    from qwalk_lab.core.exceptions import RelaxationUndefinedError
    from qwalk_lab.spectral.decomposition import chordal_relaxation_time, relaxation_time

    try:
        return relaxation_time(decomposition), chordal_relaxation_time(decomposition)
    except RelaxationUndefinedError:
        return None, None


def _estimate(config: ExperimentConfig, resolved: _Resolved) -> MixingReport:
    from qwalk_lab.mixing.families import parse_families
    from qwalk_lab.mixing.mixing_time import mixing_time_sup_estimate

    return mixing_time_sup_estimate(
        resolved.decomposition,
        parse_families(config.families),
        config.eps,
        dims=resolved.dims,
        seed=config.seed,
        closed=resolved.closed,
    )


def _write_mixing_curve(
    config: ExperimentConfig, resolved: _Resolved, report: MixingReport, path: Path
) -> None:
    """d(T) of the slowest candidate over its certification window."""
    from qwalk_lab.cli.export import export_curve_csv, write_atomic
    from qwalk_lab.mixing.distance import distance_curve
    from qwalk_lab.mixing.families import FamilyContext, parse_families

    context = FamilyContext(
        spec=resolved.decomposition, dims=resolved.dims, seed=config.seed, closed=resolved.closed
    )
    slowest = next(c for c in report.candidates if c.label == report.argmax)
    for family in parse_families(config.families):
        match = next((c for c in family.generate(context) if c.label == report.argmax), None)
        if match is not None:
            curve = distance_curve(resolved.decomposition, match.psi, slowest.window)
            write_atomic(path, export_curve_csv(curve, slowest.envelope))
            console.print(f"[green]Curve saved to {path}[/]")
            return
    raise InvalidParameterError(f"candidate '{report.argmax}' could not be regenerated")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
    json_logs: bool | None = typer.Option(
        None, "--json-logs/--console-logs", help="Log renderer (default from QWLAB_LOG_JSON)"
    ),
) -> None:
    """Configure logging for every command."""
    settings = get_settings()
    level = "DEBUG" if verbose else settings.log_level
    with _exit_codes():
        setup_logging(
            json_output=settings.log_json if json_logs is None else json_logs, level=level
        )


@app.command()
def spectrum(
    graph: str | None = GraphOpt,
    walk: str | None = WalkOpt,
    out: Path | None = OutOpt,
    config_path: Path | None = ConfigOpt,
) -> None:
    """Distinct eigenphases, multiplicities and relaxation times of a walk."""
    from qwalk_lab.cli.panels import render_spectrum_panel
    from qwalk_lab.core.contracts import SpectrumReport

    with _exit_codes():
        config = load_config(config_path, graph=graph, walk=walk, out=out)
        resolved = _resolve(config)
        decomposition = resolved.decomposition
        t_rel, t_rel_chordal = _relaxation(decomposition)
        report = SpectrumReport(
            graph=resolved.graph.text,
            walk=resolved.walk_kind,
            dim=decomposition.dim,
            m=decomposition.m,
            phases=[float(beta) for beta in decomposition.phases],
            multiplicities=list(decomposition.multiplicities),
            t_rel=t_rel,
            t_rel_chordal=t_rel_chordal,
            residual=decomposition.residual,
            source=resolved.source,
        )
        render_spectrum_panel(report, console)
        _emit(report, config.out)


@app.command()
def mix(
    graph: str | None = GraphOpt,
    walk: str | None = WalkOpt,
    eps: float | None = EpsOpt,
    families: str | None = FamiliesOpt,
    seed: int | None = SeedOpt,
    out: Path | None = OutOpt,
    curve: Path | None = CurveOpt,
    config_path: Path | None = ConfigOpt,
    show_all: bool = typer.Option(False, "--all", help="Show every candidate"),
) -> None:
    """Certified lower estimate of the mixing time over candidate initial states."""
    from qwalk_lab.cli.panels import render_mixing_panel

    with _exit_codes():
        config = load_config(
            config_path,
            graph=graph,
            walk=walk,
            eps=eps,
            families=families,
            seed=seed,
            out=out,
            curve=curve,
        )
        resolved = _resolve(config)
        report = _estimate(config, resolved)
        render_mixing_panel(report, console, show_all=show_all)
        _emit(report, config.out)
        if config.curve is not None:
            _write_mixing_curve(config, resolved, report, config.curve)


@app.command()
def bounds(
    graph: str | None = GraphOpt,
    walk: str | None = WalkOpt,
    eps: float | None = EpsOpt,
    families: str | None = FamiliesOpt,
    seed: int | None = SeedOpt,
    out: Path | None = OutOpt,
    config_path: Path | None = ConfigOpt,
) -> None:
    """Measured estimate against the Theorem 1 upper and Theorem 2 lower bounds."""
    from qwalk_lab.cli.panels import render_bounds_panel
    from qwalk_lab.core.contracts import BoundsReport
    from qwalk_lab.mixing.bounds import reference_points
    from qwalk_lab.mixing.classical import classical_mixing_time, simple_random_walk_chain

    with _exit_codes():
        config = load_config(
            config_path, graph=graph, walk=walk, eps=eps, families=families, seed=seed, out=out
        )
        resolved = _resolve(config)
        mixing = _estimate(config, resolved)

        upper_ok = mixing.theorem1_bound is None or mixing.sup_estimate <= mixing.theorem1_bound
        bounded = [c for c in mixing.candidates if c.theorem2_bound is not None]
        lower_ok = (
            all(c.mixing_time >= (c.theorem2_bound or 0.0) for c in bounded) if bounded else None
        )
        chain = simple_random_walk_chain(resolved.graph.graph)
        # Built-in families are vertex-transitive: every start mixes alike.
        starts = None if resolved.graph.family is None else (0,)
        report = BoundsReport(
            graph=resolved.graph.text,
            walk=resolved.walk_kind,
            epsilon=config.eps,
            m=mixing.m,
            t_rel=mixing.t_rel,
            t_rel_chordal=mixing.t_rel_chordal,
            theorem1_bound=mixing.theorem1_bound,
            theorem2=mixing.theorem2,
            measured_sup=mixing.sup_estimate,
            argmax=mixing.argmax,
            upper_respected=upper_ok,
            lower_respected=lower_ok,
            classical_mixing_time=classical_mixing_time(chain, config.eps, starts=starts),
            reference_points=reference_points(resolved.graph.family, resolved.graph.n, config.eps),
        )
        render_bounds_panel(report, console)
        _emit(report, config.out)

    if not upper_ok or lower_ok is False:
        raise _fail("measured mixing time falls outside the analytic bounds", EXIT_FAILED)


@app.command()
def channel(
    graph: str | None = GraphOpt,
    walk: str | None = WalkOpt,
    decohere: str | None = typer.Option(
        None, "--decohere", "-d", help="e.g. measured:p=0.1 or a JSON channel spec"
    ),
    eps: float | None = EpsOpt,
    seed: int | None = SeedOpt,
    steps: int | None = typer.Option(None, "--steps", help="Length of the convergence curve"),
    window: int | None = typer.Option(None, "--window", help="Steps d(t) must stay settled"),
    probe_only: bool | None = typer.Option(
        None, "--probe-only", help="Skip the vectorized certificate (large channels)"
    ),
    out: Path | None = OutOpt,
    curve: Path | None = CurveOpt,
    config_path: Path | None = ConfigOpt,
) -> None:
    """Primitivity certificate, stationary density and convergence of a decohering walk."""
    from qwalk_lab.channels.analysis import contraction_check, primitivity_check
    from qwalk_lab.channels.analysis import stationary_density as find_stationary
    from qwalk_lab.channels.builders import channel_from_spec, parse_channel_spec
    from qwalk_lab.channels.mixing import (
        basis_projector_candidates,
        channel_mixing_report,
        convergence_curve,
    )
    from qwalk_lab.cli.export import export_channel_curve_csv, write_atomic
    from qwalk_lab.cli.panels import render_channel_panel
    from qwalk_lab.core.contracts import ChannelReport, Verdict
    from qwalk_lab.walks.factory import parse_graph_spec

    with _exit_codes():
        config = load_config(
            config_path,
            graph=graph,
            walk=walk,
            decohere=decohere,
            eps=eps,
            seed=seed,
            steps=steps,
            window=window,
            probe_only=probe_only,
            out=out,
            curve=curve,
        )
        graph_spec = parse_graph_spec(config.graph)
        channel_spec = parse_channel_spec(config.decohere or "measured:p=0.1")
        superop = channel_from_spec(channel_spec, graph_spec, config.walk)

        contraction_ok = contraction_check(superop, seed=config.seed)
        certificate = primitivity_check(superop, probe_only=config.probe_only, seed=config.seed)
        stationary = None
        mixing = None
        if certificate.verdict is Verdict.PRIMITIVE:
            stationary = find_stationary(superop)
            starts = basis_projector_candidates(superop.dim)
            mixing = channel_mixing_report(
                superop,
                config.eps,
                starts,
                config.window,
                certificate=certificate,
                stationary=stationary,
            )
            if config.curve is not None:
                trajectory = convergence_curve(superop, starts, stationary.rho, config.steps)
                write_atomic(config.curve, export_channel_curve_csv(trajectory))
                console.print(f"[green]Curve saved to {config.curve}[/]")

        report = ChannelReport(
            graph=graph_spec.text,
            channel=channel_spec.model_dump(mode="json"),
            dim=superop.dim,
            n_kraus=superop.n_kraus,
            kraus_residual=superop.kraus_residual(),
            contraction_ok=contraction_ok,
            certificate=certificate,
            stationary=stationary.to_report() if stationary is not None else None,
            mixing=mixing,
        )
        render_channel_panel(report, console)
        _emit(report, config.out)

    if not contraction_ok:
        raise _fail("channel failed the trace-norm contraction check", EXIT_FAILED)


@app.command()
def validate(
    graph: str | None = GraphOpt,
    tol: float | None = TolOpt,
    out: Path | None = OutOpt,
    config_path: Path | None = ConfigOpt,
) -> None:
    """Cross-validate the numeric spectrum of a built-in family against its closed form."""
    from qwalk_lab.cli.panels import render_validation_panel
    from qwalk_lab.spectral.closed_form import closed_form_spectrum
    from qwalk_lab.spectral.decomposition import decompose
    from qwalk_lab.spectral.validation import cross_validate
    from qwalk_lab.walks.factory import build_walk, parse_graph_spec

    with _exit_codes():
        config = load_config(config_path, graph=graph, tol=tol, out=out)
        graph_spec = parse_graph_spec(config.graph)
        if graph_spec.family is None or graph_spec.n is None:
            raise InvalidParameterError(
                f"validate needs a built-in family:n graph, got '{graph_spec.text}'"
            )
        closed = closed_form_spectrum(graph_spec.family, graph_spec.n)
        numeric = decompose(build_walk(graph_spec))
        report = cross_validate(numeric, closed, config.tol)
        render_validation_panel(report, console)
        _emit(report, config.out)

    if not report.passed:
        raise _fail(
            f"{graph_spec.text}: numeric and closed-form spectra disagree beyond {config.tol:g}",
            EXIT_FAILED,
        )


@app.command("check-graph")
def check_graph(
    graph: str = typer.Argument(help="Graph spec to validate, e.g. @my_graph.json"),
    walks: list[str] | None = typer.Option(
        None, "--walk", "-w", help="Also build and check this walk kind (repeatable)"
    ),
) -> None:
    """Validate that a graph is regular and consistently labelled."""
    from qwalk_lab.cli.checker import check_graph as do_check

    errors = do_check(graph, tuple(walks or ()))

    if errors:
        console.print(f"[red]Graph '{graph}' has {len(errors)} issue(s):[/]")
        for err in errors:
            console.print(f"  [red]x[/] {err}")
        raise typer.Exit(code=EXIT_FAILED)

    console.print(f"[green]Graph '{graph}' passed all checks.[/]")


@app.command()
def entries(
    kind: str | None = typer.Argument(None, help="Filter by kind: graph, walk or family"),
) -> None:
    """List registered graph families, walk kinds and candidate families."""
    registry = list_entries(kind)
    table = Table(title="Registered Entries")
    table.add_column("Kind", style="cyan")
    table.add_column("Names", style="green")

    for kind_name, names in sorted(registry.items()):
        table.add_row(kind_name, ", ".join(names) if names else "(none)")

    console.print(table)
