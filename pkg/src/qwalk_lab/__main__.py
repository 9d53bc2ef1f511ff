"""Allow running with `python -m qwalk_lab`."""

from qwalk_lab.cli.main import app

app()
