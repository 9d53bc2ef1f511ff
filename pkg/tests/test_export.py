"""Tests for report export and experiment-config loading."""

from __future__ import annotations

import json

import numpy as np
import pytest
from pydantic import ValidationError

from qwalk_lab.channels.mixing import ConvergenceCurve
from qwalk_lab.cli.config import DEFAULT_EPSILON, load_config, offending_fields
from qwalk_lab.cli.export import (
    export_channel_curve_csv,
    export_curve_csv,
    export_json,
    write_atomic,
)
from qwalk_lab.core.config import get_settings
from qwalk_lab.core.contracts import Theorem2Status
from qwalk_lab.core.exceptions import SpecParseError


class TestExportJson:
    def test_sorted_keys_and_trailing_newline(self):
        text = export_json({"b": 1, "a": [1.5, None]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')

    def test_model_is_dumped_in_json_mode(self):
        status = Theorem2Status(overlap=0.8, gap=0.1, epsilon=0.01, holds=True, bound=100.0)
        payload = json.loads(export_json(status))
        assert payload["bound"] == pytest.approx(100.0)
        assert payload["reasons"] == []


class TestCurves:
    def test_mixing_curve_rows(self):
        text = export_curve_csv(np.array([0.5, 0.25]), envelope=2.0)
        lines = text.splitlines()
        assert lines[0] == "T,d_T,envelope_over_T"
        assert lines[1] == "1,0.5,2.0"
        assert lines[2] == "2,0.25,1.0"

    def test_channel_curve_rows(self):
        curve = ConvergenceCurve(
            steps=np.arange(2),
            trace_distance=np.array([1.875, 0.5]),
            site_distance=np.array([1.875, 0.25]),
            limits=(),
        )
        lines = export_channel_curve_csv(curve).splitlines()
        assert lines == ["t,trace_distance,site_distance", "0,1.875,1.875", "1,0.5,0.25"]


class TestWriteAtomic:
    def test_creates_parents_and_leaves_no_temp_files(self, tmp_path):
        target = tmp_path / "nested" / "report.json"
        write_atomic(target, "first\n")
        write_atomic(target, "second\n")
        assert target.read_text(encoding="utf-8") == "second\n"
        assert [p.name for p in target.parent.iterdir()] == ["report.json"]


class TestExperimentConfig:
    def test_defaults(self):
        config = load_config(graph="cycle:4")
        assert config.eps == DEFAULT_EPSILON
        assert config.walk is None

    def test_none_overrides_are_ignored(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("graph: cycle:4\neps: 0.1\n", encoding="utf-8")
        config = load_config(path, eps=None, seed=7)
        assert config.eps == pytest.approx(0.1)
        assert config.seed == 7

    def test_offending_field_is_named(self):
        with pytest.raises(ValidationError) as info:
            load_config(graph="cycle:4", window=-1)
        assert offending_fields(info.value) == ["window"]

    def test_yaml_must_be_a_mapping(self, tmp_path):
        path = tmp_path / "c.yaml"
        path.write_text("- cycle:4\n", encoding="utf-8")
        with pytest.raises(SpecParseError):
            load_config(path)


class TestSettings:
    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("QWLAB_DENSE_CAP", "128")
        assert get_settings().dense_cap == 128

    def test_defaults(self):
        settings = get_settings()
        assert settings.vector_cap == 64
        assert settings.step_budget == 100_000
