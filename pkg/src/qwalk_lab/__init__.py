"""qwalk-lab: numerical laboratory for discrete-time quantum walks."""

from __future__ import annotations

__version__ = "0.1.0"
