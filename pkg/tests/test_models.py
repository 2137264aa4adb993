"""Unit tests for kszforms models."""

import math
from fractions import Fraction

import numpy as np
import pytest

from kszforms.errors import ArgumentError, SchemaError, SchemaVersionError
from kszforms.models import (
    INF,
    DomainSpec,
    EstimatorSettings,
    ExperimentConfig,
    ExtendedExponent,
    FormInstance,
    FourierGrid,
    Invocation,
    NormEstimate,
    RunRecord,
    RunRow,
    UnimodularTensor,
)
from kszforms.models.ExtendedExponent import format_real, read_real
from kszforms.tensors import rademacher


class TestExtendedExponent:
    """Tests for ExtendedExponent."""

    def test_parse_decimal_and_fraction_agree(self) -> None:
        """Test that "1.5" and "3/2" are the same exponent."""
        assert ExtendedExponent.parse("1.5") == ExtendedExponent.parse("3/2")
        assert ExtendedExponent.parse("1.5").value == Fraction(3, 2)

    def test_parse_infinity(self) -> None:
        """Test that "inf" in any case is infinity."""
        assert ExtendedExponent.parse("INF") == INF
        assert ExtendedExponent.parse(" inf ").is_infinite

    def test_parse_rejects_garbage(self) -> None:
        """Test that non-numbers and p < 1 are argument errors."""
        with pytest.raises(ArgumentError, match="invalid exponent 'abc'"):
            ExtendedExponent.parse("abc")
        with pytest.raises(ArgumentError, match="below 1"):
            ExtendedExponent.parse("0.5")

    def test_constructor_checks(self) -> None:
        """Test that bools, NaN and values below 1 are rejected."""
        for bad in (True, math.nan, 0.25):
            with pytest.raises(ArgumentError):
                ExtendedExponent(bad)  # type: ignore[arg-type]

    def test_int_becomes_fraction(self) -> None:
        """Test that integer input is held exactly."""
        p = ExtendedExponent(3)  # type: ignore[arg-type]
        assert isinstance(p.value, Fraction)
        assert p.is_exact

    def test_ordering(self) -> None:
        """Test that exponents compare by value with inf largest."""
        assert ExtendedExponent.of(2) < ExtendedExponent.of("3") < INF

    def test_reciprocal_and_conjugate(self) -> None:
        """Test 1/inf = 0 and (4/3)* = 4."""
        assert INF.reciprocal == 0
        assert ExtendedExponent.of("4/3").conjugate() == ExtendedExponent.of(4)

    def test_to_json(self) -> None:
        """Test the JSON form of exact, infinite and float exponents."""
        assert ExtendedExponent.of("3/2").to_json() == "3/2"
        assert INF.to_json() == "inf"
        assert ExtendedExponent.of(2.5).to_json() == 2.5

    def test_format_and_read_real(self) -> None:
        """Test that format_real and read_real invert each other."""
        for value in (Fraction(5, 6), Fraction(-1, 6), 0.25):
            assert read_real(format_real(value)) == value
        assert format_real(None) is None


class TestDomainSpec:
    """Tests for DomainSpec."""

    def test_from_lists(self) -> None:
        """Test that dims and ps pair position by position."""
        domain = DomainSpec.from_lists((1, 64, 64), ["3/2", 3, 3])
        assert domain.m == 3
        assert domain.dims == (1, 64, 64)
        assert domain.ps[0] == ExtendedExponent.of("3/2")

    def test_length_mismatch(self) -> None:
        """Test that unequal list lengths are argument errors."""
        with pytest.raises(ArgumentError, match="2 dimensions but 3 exponents"):
            DomainSpec.from_lists((2, 2), [2, 2, 2])

    def test_rejects_bad_dimension(self) -> None:
        """Test that zero and bool dimensions are rejected."""
        with pytest.raises(ArgumentError):
            DomainSpec.from_lists((0, 2), [2, 2])
        with pytest.raises(ArgumentError):
            DomainSpec(((True, INF),))  # type: ignore[arg-type]

    def test_drop(self) -> None:
        """Test dropping a slot and the single-slot guard."""
        domain = DomainSpec.uniform([2, 3, "inf"], 4)
        assert domain.drop(1).ps == (ExtendedExponent.of(2), INF)
        with pytest.raises(ArgumentError):
            DomainSpec.uniform([2], 4).drop(0)

    def test_dict_round_trip(self) -> None:
        """Test to_dict / from_dict."""
        domain = DomainSpec.from_lists((3, 5), ["4/3", "inf"])
        assert domain.to_dict() == {"dims": [3, 5], "ps": ["4/3", "inf"]}
        assert DomainSpec.from_dict(domain.to_dict()) == domain


class TestUnimodularTensor:
    """Tests for UnimodularTensor."""

    def test_rejects_non_signs(self) -> None:
        """Test that real tensors hold exact +-1 entries only."""
        with pytest.raises(ArgumentError, match="exactly"):
            UnimodularTensor(entries=np.array([1.0, 0.5]))

    def test_rejects_off_circle(self) -> None:
        """Test that complex entries must have modulus 1."""
        with pytest.raises(ArgumentError, match="unimodular"):
            UnimodularTensor(entries=np.array([1.0, 1.1j]), field="complex")

    def test_rejects_unknown_field(self) -> None:
        """Test that field must be real or complex."""
        with pytest.raises(ArgumentError):
            UnimodularTensor(entries=np.ones(2), field="quaternion")

    def test_real_from_complex_array(self) -> None:
        """Test that a complex array with zero imaginary part can be real."""
        tensor = UnimodularTensor(entries=np.array([1 + 0j, -1 + 0j]))
        assert tensor.entries.dtype == np.float64

    def test_properties(self) -> None:
        """Test dims, m and is_real."""
        tensor = rademacher((2, 3, 4), 0)
        assert tensor.dims == (2, 3, 4)
        assert tensor.m == 3
        assert tensor.is_real

    def test_from_dict_missing_key(self) -> None:
        """Test that a file without dims is a schema error."""
        with pytest.raises(SchemaError, match="dims"):
            UnimodularTensor.from_dict({"field": "real", "entries": [1]})

    def test_from_dict_bad_pairs(self) -> None:
        """Test that complex entries must be [re, im] pairs."""
        data = {"dims": [2], "field": "complex", "entries": [1.0, 1.0]}
        with pytest.raises(SchemaError, match="pairs"):
            UnimodularTensor.from_dict(data)


class TestFormInstance:
    """Tests for FormInstance."""

    def test_on(self) -> None:
        """Test that `on` takes the dimensions from the tensor."""
        form = FormInstance.on(rademacher((2, 5), 1), [2, "inf"])
        assert form.dims == (2, 5)
        assert form.m == 2
        assert form.ps[1] == INF

    def test_dims_must_match(self) -> None:
        """Test that tensor and domain dims must agree."""
        with pytest.raises(ArgumentError, match="do not match"):
            FormInstance(rademacher((2, 2), 0), DomainSpec.uniform([2, 2], 3))


class TestNormEstimate:
    """Tests for NormEstimate."""

    def test_complex_witness_as_pairs(self) -> None:
        """Test that complex witness coordinates serialize as [re, im]."""
        estimate = NormEstimate(
            lower=1.0,
            witness=(np.array([1j, 0.0]), np.array([1.0])),
            method="alternating",
        )
        data = estimate.to_dict()
        assert data["witness"] == [[[0.0, 1.0], [0.0, 0.0]], [1.0]]
        assert data["upper"] is None
        assert not estimate.is_exact

    def test_without_witness(self) -> None:
        """Test that include_witness=False drops the witness."""
        estimate = NormEstimate(lower=2.0, witness=(), method="vertex-exact", upper=2.0)
        assert "witness" not in estimate.to_dict(include_witness=False)
        assert estimate.is_exact


class TestEstimatorSettings:
    """Tests for EstimatorSettings."""

    def test_defaults(self) -> None:
        """Test the default settings."""
        settings = EstimatorSettings()
        assert settings.starts == 32
        assert settings.tol == 1e-10
        assert settings.max_iter == 500
        assert settings.vertex_cap == 2**24
        assert settings.threads == 1

    def test_from_dict_unknown_key(self) -> None:
        """Test that unknown keys are rejected."""
        with pytest.raises(ValueError, match="Unknown estimator settings: bogus"):
            EstimatorSettings.from_dict({"bogus": 1})

    def test_range_checks(self) -> None:
        """Test that nonpositive values are argument errors."""
        for bad in ({"starts": 0}, {"tol": 0.0}, {"max_iter": 0}, {"threads": 0}):
            with pytest.raises(ArgumentError):
                EstimatorSettings.from_dict(bad)


class TestExperimentConfig:
    """Tests for ExperimentConfig and FourierGrid."""

    def test_round_trip(self) -> None:
        """Test that to_dict / from_dict reproduce the config."""
        config = ExperimentConfig(
            kind="slope", ps=("inf", "3/2"), schedule=(2, 4, 8), trials=5, seed=7,
            field="complex",
        )
        assert ExperimentConfig.from_dict(config.to_dict()) == config
        assert config.to_dict()["ps"] == ["inf", "3/2"]

    def test_grid_round_trip(self) -> None:
        """Test a Fourier config with its grid."""
        grid = FourierGrid(n1s=(1, 2), n2s=(4,), p1s=(2,), p2s=("inf",))
        config = ExperimentConfig(kind="fourier-scan", grid=grid)
        assert grid.size == 2
        assert config.expected_rows() == 2
        assert ExperimentConfig.from_dict(config.to_dict()) == config

    def test_validation(self) -> None:
        """Test the per-kind checks."""
        with pytest.raises(ArgumentError, match="unknown experiment kind"):
            ExperimentConfig(kind="bogus")
        with pytest.raises(ArgumentError, match="exactly one dimension"):
            ExperimentConfig(kind="min-norm-search", ps=(2,), schedule=(2, 3))
        with pytest.raises(ArgumentError, match="at least two"):
            ExperimentConfig(kind="slope", ps=(2,), schedule=(2,))
        with pytest.raises(ArgumentError, match="strictly increasing"):
            ExperimentConfig(kind="slope", ps=(2,), schedule=(4, 2))
        with pytest.raises(ArgumentError, match="Fourier grid"):
            ExperimentConfig(kind="constant-one")
        with pytest.raises(ArgumentError, match="real signs"):
            ExperimentConfig(
                kind="min-norm-search", ps=(2,), schedule=(2,), field="complex", exhaustive=True
            )
        with pytest.raises(ArgumentError, match="seed"):
            ExperimentConfig(kind="min-norm-search", ps=(2,), schedule=(2,), seed=-1)

    def test_empty_grid_axis(self) -> None:
        """Test that an empty grid axis is an argument error."""
        with pytest.raises(ArgumentError, match="n2s"):
            FourierGrid(n1s=(1,), n2s=(), p1s=(2,), p2s=(2,))

    def test_from_dict_malformed(self) -> None:
        """Test that a malformed config is a schema error."""
        with pytest.raises(SchemaError):
            ExperimentConfig.from_dict({"kind": "slope", "ps": ["x"], "schedule": [1, 2]})


class TestRunRecord:
    """Tests for RunRecord."""

    def _record(self) -> RunRecord:
        config = ExperimentConfig(
            kind="conjecture-ratio", ps=("3/2", 3, 3), schedule=(1, 4)
        )
        rows = [RunRow(dims=(1, n, n), values={"N": n, "ratio": 0.5}) for n in (1, 4)]
        return RunRecord(config=config, rows=rows, derived={"slope": -0.1},
                         metadata={"run_id": "abc"})

    def test_results_dict_excludes_metadata(self) -> None:
        """Test that metadata lives only in to_dict."""
        record = self._record()
        assert "metadata" not in record.results_dict()
        assert record.to_dict()["metadata"] == {"run_id": "abc"}

    def test_from_dict_round_trip(self) -> None:
        """Test that from_dict rebuilds rows and derived values."""
        record = self._record()
        loaded = RunRecord.from_dict(record.to_dict())
        assert loaded.rows == record.rows
        assert loaded.derived == record.derived
        assert loaded.kind == "conjecture-ratio"

    def test_from_dict_errors(self) -> None:
        """Test version, config and row checks."""
        data = self._record().to_dict()
        with pytest.raises(SchemaVersionError):
            RunRecord.from_dict({**data, "schema_version": 2})
        with pytest.raises(SchemaError, match="config"):
            RunRecord.from_dict({**data, "config": None})
        with pytest.raises(SchemaError, match="row"):
            RunRecord.from_dict({**data, "rows": [{"dims": [1]}, {"dims": [2]}]})


class TestInvocation:
    """Tests for Invocation."""

    def test_to_dict(self) -> None:
        """Test the serialized keys."""
        invocation = Invocation(
            subcommand="norm", flags={"p": "2,2"}, seed=3, input_path="t.json"
        )
        assert invocation.to_dict() == {
            "subcommand": "norm",
            "flags": {"p": "2,2"},
            "seed": 3,
            "format": "json",
            "input": "t.json",
            "output": None,
        }
