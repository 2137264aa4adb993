"""Unit tests for the Lab facade."""

import json
import math
import tempfile
from pathlib import Path

import pytest

from kszforms import FormInstance, Lab, LabConfig, fourier_matrix
from kszforms.models import EstimatorSettings, ExperimentConfig


def _config(enabled: bool) -> LabConfig:
    return LabConfig(
        estimator=EstimatorSettings(starts=4),
        logging={"enabled": enabled, "output_dir": ".kszforms", "verbose": False},
    )


class TestLab:
    """Tests for Lab."""

    def test_defaults(self) -> None:
        """Test that Lab() uses the default configuration."""
        lab = Lab()
        assert lab.config.estimator == EstimatorSettings()
        assert lab.norms.settings == EstimatorSettings()

    def test_estimate(self) -> None:
        """Test that estimate dispatches to the norm service."""
        form = FormInstance.on(fourier_matrix(8), ["2", "2"])
        estimate = Lab(_config(False)).estimate(form)
        assert estimate.lower == pytest.approx(math.sqrt(8))
        assert estimate.method == "singular-value"

    def test_run_without_logging(self) -> None:
        """Test that a disabled run log writes nothing."""
        with tempfile.TemporaryDirectory() as tmpdir:
            lab = Lab(_config(False), cwd=Path(tmpdir))
            record = lab.run(ExperimentConfig(kind="conjecture-ratio", ps=("3/2", 3, 3),
                                              schedule=(1, 4)))
            assert not lab.records.enabled
            assert "run_id" not in record.metadata
            assert list(Path(tmpdir).iterdir()) == []

    def test_run_with_logging(self) -> None:
        """Test that an enabled run log holds invocation, record and rows."""
        with tempfile.TemporaryDirectory() as tmpdir:
            lab = Lab(_config(True), cwd=Path(tmpdir))
            record = lab.run(
                ExperimentConfig(kind="conjecture-ratio", ps=("3/2", 3, 3), schedule=(1, 4)),
                invocation={"subcommand": "conjecture"},
            )
            run_dir = lab.records.get_run_path(record.metadata["run_id"])
            assert run_dir.parent == Path(tmpdir) / ".kszforms" / "runs"
            assert {p.name for p in run_dir.iterdir()} == {
                "invocation.json", "record.json", "rows.csv"
            }
            saved = json.loads((run_dir / "record.json").read_text(encoding="utf-8"))
            assert saved["rows"] == record.results_dict()["rows"]

    def test_run_default_invocation(self) -> None:
        """Test that without an invocation the config is logged."""
        with tempfile.TemporaryDirectory() as tmpdir:
            lab = Lab(_config(True), cwd=Path(tmpdir))
            config = ExperimentConfig(kind="conjecture-ratio", ps=("3/2", 3, 3), schedule=(1, 4))
            record = lab.run(config)
            run_dir = lab.records.get_run_path(record.metadata["run_id"])
            invocation = json.loads((run_dir / "invocation.json").read_text(encoding="utf-8"))
            assert invocation["config"] == config.to_dict()
