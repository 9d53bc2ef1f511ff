"""Export helpers for results: JSON reports and CSV curves, written atomically."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    import numpy as np
    from numpy.typing import NDArray
    from pydantic import BaseModel

    from qwalk_lab.channels.mixing import ConvergenceCurve

CURVE_HEADER = ("T", "d_T", "envelope_over_T")
CHANNEL_CURVE_HEADER = ("t", "trace_distance", "site_distance")


def _payload(report: BaseModel | dict[str, Any]) -> dict[str, Any]:
    if isinstance(report, dict):
        return report
    return report.model_dump(mode="json")


def export_json(report: BaseModel | dict[str, Any]) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(_payload(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _number(value: float) -> str:
    return repr(float(value))


def export_curve_csv(curve: NDArray[np.float64], envelope: float) -> str:
    """Rows T, d(T), B / T for T = 1..len(curve)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for index, value in enumerate(curve):
        T = index + 1
        writer.writerow([T, _number(value), _number(envelope / T)])
    return buf.getvalue()


def export_channel_curve_csv(curve: ConvergenceCurve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CHANNEL_CURVE_HEADER)
    for t, trace, site in zip(
        curve.steps, curve.trace_distance, curve.site_distance, strict=True
    ):
        writer.writerow([int(t), _number(trace), _number(site)])
    return buf.getvalue()


def write_atomic(path: Path, text: str) -> Path:
    """Write *text* to a temporary file next to *path*, then rename it over *path*."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path
