"""Rich panels summarising spectra, mixing estimates, bounds and channels."""

from __future__ import annotations

from typing import TYPE_CHECKING

from rich.panel import Panel
from rich.table import Table
from rich.text import Text

if TYPE_CHECKING:
    from rich.console import Console

    from qwalk_lab.core.contracts import (
        BoundsReport,
        CandidateResult,
        ChannelReport,
        CrossValidationReport,
        MixingReport,
        SpectrumReport,
    )

DEFAULT_MAX_CANDIDATES = 5
MAX_PHASES_SHOWN = 12

FAMILY_ICONS: dict[str, str] = {
    "basis": "[blue]#[/]",
    "eigenpair": "[magenta]~[/]",
    "random": "[yellow]?[/]",
}


def _fmt(value: float | None, spec: str = ".6g") -> str:
    return "n/a" if value is None else format(value, spec)


def _kv_table() -> Table:
    table = Table(show_header=False, show_edge=False, pad_edge=False, box=None)
    table.add_column("Quantity", min_width=18)
    table.add_column("Value", justify="right", min_width=10)
    return table


def render_spectrum_panel(report: SpectrumReport, console: Console) -> None:
    table = _kv_table()
    table.add_row("dimension N", str(report.dim))
    table.add_row("distinct phases m", str(report.m))
    table.add_row("t_rel (arc)", _fmt(report.t_rel))
    table.add_row("t_rel (chordal)", Text(_fmt(report.t_rel_chordal), style="dim"))
    table.add_row("residual", f"{report.residual:.2e}")

    shown = list(zip(report.phases, report.multiplicities, strict=True))[:MAX_PHASES_SHOWN]
    phases = ", ".join(f"{beta:.4f} (x{mult})" for beta, mult in shown)
    if report.m > MAX_PHASES_SHOWN:
        phases += f", ... {report.m - MAX_PHASES_SHOWN} more"

    console.print(
        Panel(
            table,
            title=f"[bold]Spectrum[/] - {report.walk} on {report.graph}",
            subtitle=f"source: {report.source.value}",
            border_style="cyan",
        )
    )
    console.print(Panel(Text(phases, style="dim"), title="phases", border_style="cyan"))


def _candidate_row(table: Table, candidate: CandidateResult) -> None:
    icon = FAMILY_ICONS.get(candidate.family, " ")
    label = Text(candidate.label, style="bold")
    if not candidate.certified:
        label.append("  (window capped)", style="yellow")
    extra = ""
    if candidate.overlap is not None:
        extra = f"Q={candidate.overlap:.3f}"
    table.add_row(icon, label, str(candidate.mixing_time), extra)


def render_mixing_panel(
    report: MixingReport,
    console: Console,
    *,
    show_all: bool = False,
) -> None:
    """Slowest candidates first, then the per-family maxima."""
    table = Table(show_header=True, show_edge=False, pad_edge=False, box=None, expand=True)
    table.add_column("", width=1)
    table.add_column("Candidate", min_width=24)
    table.add_column("t_mix", justify="right", width=10)
    table.add_column("", justify="right", width=10)

    ranked = sorted(report.candidates, key=lambda c: (-c.mixing_time, c.label))
    displayed = ranked if show_all else ranked[:DEFAULT_MAX_CANDIDATES]
    for candidate in displayed:
        _candidate_row(table, candidate)

    hidden = len(ranked) - len(displayed)
    subtitle = f"{hidden} more -- use --all to show all" if hidden > 0 else None

    maxima = ", ".join(f"{name}: {value}" for name, value in sorted(report.family_maxima.items()))
    summary = (
        f"sup estimate {report.sup_estimate} at eps={report.epsilon:g} ({report.argmax}); "
        f"Theorem 1 bound {_fmt(report.theorem1_bound, '.4g')}; per family {maxima}"
    )
    status = "[green]certified[/]" if report.certified else "[yellow]lower estimate[/]"
    console.print(
        Panel(Text(summary, style="dim italic"), title="[bold]Mixing[/]", subtitle=status)
    )
    console.print(Panel(table, subtitle=subtitle, border_style="cyan"))


def render_bounds_panel(report: BoundsReport, console: Console) -> None:
    table = _kv_table()
    table.add_row("measured sup", f"{report.measured_sup} ({report.argmax})")
    upper_style = "green" if report.upper_respected else "red"
    table.add_row("Theorem 1 upper", Text(_fmt(report.theorem1_bound, ".6g"), style=upper_style))
    if report.theorem2 is None:
        table.add_row("Theorem 2 lower", Text("hypotheses not met", style="dim"))
    else:
        lower_style = "green" if report.lower_respected else "red"
        table.add_row(
            "Theorem 2 lower", Text(_fmt(report.theorem2.bound, ".6g"), style=lower_style)
        )
    table.add_row("t_rel (arc)", _fmt(report.t_rel))
    table.add_row("t_rel (chordal)", Text(_fmt(report.t_rel_chordal), style="dim"))
    table.add_row("classical lazy walk", _fmt(report.classical_mixing_time, "d"))
    for name, value in sorted(report.reference_points.items()):
        table.add_row(name, Text(f"{value:.6g}", style="dim"))

    ok = report.upper_respected and report.lower_respected is not False
    console.print(
        Panel(
            table,
            title=f"[bold]Bounds[/] - {report.walk} on {report.graph}, eps={report.epsilon:g}",
            subtitle="[green]sandwich holds[/]" if ok else "[red]sandwich violated[/]",
            border_style="green" if ok else "red",
        )
    )


def render_channel_panel(report: ChannelReport, console: Console) -> None:
    cert = report.certificate
    table = _kv_table()
    table.add_row("dimension N", str(report.dim))
    table.add_row("Kraus operators", str(report.n_kraus))
    table.add_row("Kraus residual", f"{report.kraus_residual:.2e}")
    table.add_row(
        "contraction",
        Text("ok" if report.contraction_ok else "FAILED", style=_ok_style(report.contraction_ok)),
    )
    table.add_row("verdict", Text(cert.verdict.value, style=_verdict_style(cert.verdict.value)))
    table.add_row("route", cert.route.value)
    table.add_row("eta", _fmt(cert.eta, ".8g"))
    if report.stationary is not None:
        table.add_row("stationary residual", f"{report.stationary.residual:.2e}")
    if report.mixing is not None:
        table.add_row("measured t_mix", _fmt(report.mixing.t_mix, "d"))

    console.print(
        Panel(
            table,
            title=f"[bold]Channel[/] - {report.channel.get('kind', '?')} on {report.graph}",
            border_style="blue",
        )
    )
    notes = list(cert.notes)
    if report.mixing is not None and report.mixing.t_mix is not None:
        notes.append(report.mixing.caveat)
    if notes:
        console.print(Panel(Text("\n".join(notes), style="dim"), title="notes"))


def render_validation_panel(report: CrossValidationReport, console: Console) -> None:
    table = _kv_table()
    table.add_row("max phase error", f"{report.max_phase_error:.2e}")
    table.add_row(
        "multiplicities",
        Text(
            "match" if report.multiplicities_match else "differ",
            style=_ok_style(report.multiplicities_match),
        ),
    )
    table.add_row("max eigen-residual", f"{report.max_eigen_residual:.2e}")
    table.add_row("vectors checked", str(report.vectors_checked))
    console.print(
        Panel(
            table,
            title=f"[bold]Cross-validation[/] - {report.family}:{report.n}, tol={report.tol:g}",
            subtitle="[green]PASS[/]" if report.passed else "[red]FAIL[/]",
            border_style="green" if report.passed else "red",
        )
    )


def _ok_style(ok: bool) -> str:
    return "green" if ok else "red"


def _verdict_style(verdict: str) -> str:
    match verdict:
        case "primitive":
            return "green"
        case "inconclusive":
            return "yellow"
        case _:
            return "red"
