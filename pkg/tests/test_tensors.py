"""Unit tests for tensor generators and form evaluation."""

import json
import tempfile
from pathlib import Path

import numpy as np
import pytest

from kszforms.errors import ArgumentError, SchemaError
from kszforms.models import FormInstance, UnimodularTensor
from kszforms.tensors import (
    _checked_output,
    evaluate,
    fourier_matrix,
    freeze,
    orthogonality_defect,
    partial_coefficients,
    rademacher,
    read_tensor,
    restrict,
    steinhaus,
    write_tensor,
)


def _ones(*dims: int) -> UnimodularTensor:
    return UnimodularTensor(entries=np.ones(dims))


class TestRademacher:
    """Tests for the Rademacher generator."""

    def test_deterministic(self) -> None:
        """Test that the same (dims, seed) gives the same tensor."""
        assert rademacher((2, 2), 42) == rademacher((2, 2), 42)

    def test_entries_are_signs(self) -> None:
        """Test that every entry is exactly +1 or -1."""
        tensor = rademacher((3, 4, 5), 1)
        assert set(np.unique(tensor.entries).tolist()) <= {-1.0, 1.0}
        assert tensor.field == "real"
        assert tensor.provenance.kind == "rademacher"
        assert tensor.provenance.seed == 1

    def test_single_entry(self) -> None:
        """Test dims (1,) gives a single sign."""
        assert rademacher((1,), 3).entries.tolist() in ([1.0], [-1.0])

    def test_mean_is_small(self) -> None:
        """Test that entry means over many seeds are near zero."""
        total = sum(float(rademacher((4, 4), seed).entries.sum()) for seed in range(10_000))
        assert abs(total / 160_000) <= 0.02

    def test_rejects_zero_dimension(self) -> None:
        """Test that a zero dimension is an argument error."""
        with pytest.raises(ArgumentError):
            rademacher((2, 0), 0)

    def test_rejects_negative_seed(self) -> None:
        """Test that seeds must lie in [0, 2**64)."""
        with pytest.raises(ArgumentError):
            rademacher((2,), -1)

    def test_tensor_is_read_only(self) -> None:
        """Test that tensor storage cannot be modified in place."""
        tensor = rademacher((2, 2), 0)
        with pytest.raises(ValueError):
            tensor.entries[0, 0] = 5.0


class TestSteinhaus:
    """Tests for the Steinhaus generator."""

    def test_unimodular(self) -> None:
        """Test that every entry has modulus 1 within 1e-12."""
        tensor = steinhaus((2, 2), 8)
        assert tensor.unimodularity_defect() <= 1e-12
        assert tensor.field == "complex"

    def test_reproducible(self) -> None:
        """Test that a fixed seed gives the same tensor."""
        assert steinhaus((3,), 5) == steinhaus((3,), 5)

    def test_rejects_drift_beyond_generator_tolerance(self) -> None:
        """Test that generated entries off the circle by more than 1e-12 are refused."""
        drifted = UnimodularTensor(entries=np.array([1.0 + 5e-10, 1j]), field="complex")
        with pytest.raises(ArgumentError, match="drift"):
            _checked_output(drifted)
        exact = UnimodularTensor(entries=np.array([1.0, 1j]), field="complex")
        assert _checked_output(exact) is exact

    def test_entry_sums_concentrate(self) -> None:
        """Test that |sum of entries| / 64 is small on average."""
        mean = np.mean([abs(steinhaus((8, 8), s).entries.sum()) / 64 for s in range(1000)])
        assert mean < 0.5


class TestFourierMatrix:
    """Tests for fourier_matrix and orthogonality_defect."""

    def test_n1(self) -> None:
        """Test that n = 1 gives [[1]]."""
        assert fourier_matrix(1).entries[0, 0] == pytest.approx(1.0)

    def test_n4_first_entry(self) -> None:
        """Test that entry (1, 1) of the 4 x 4 matrix is i."""
        assert fourier_matrix(4).entries[0, 0] == pytest.approx(1j)

    def test_n2_is_real_signs(self) -> None:
        """Test that n = 2 gives [[-1, 1], [1, 1]]."""
        entries = fourier_matrix(2).entries
        assert np.allclose(entries, [[-1, 1], [1, 1]], atol=1e-12)

    def test_rejects_zero(self) -> None:
        """Test that n = 0 is an argument error."""
        with pytest.raises(ArgumentError):
            fourier_matrix(0)

    def test_orthogonal_rows(self) -> None:
        """Test that A A* = n I within 1e-9 n for every n up to 256."""
        for n in range(1, 257):
            assert orthogonality_defect(fourier_matrix(n)) <= 1e-9 * n, n

    def test_entries_within_generator_tolerance(self) -> None:
        """Test that every entry is within 1e-12 of the unit circle."""
        for n in (1, 7, 64, 255):
            assert fourier_matrix(n).unimodularity_defect() <= 1e-12

    def test_defect_of_all_ones(self) -> None:
        """Test that the all-ones 2 x 2 matrix has defect 2."""
        assert orthogonality_defect(_ones(2, 2)) == pytest.approx(2.0)

    def test_defect_rejects_non_square(self) -> None:
        """Test that non-square tensors are rejected."""
        with pytest.raises(ArgumentError):
            orthogonality_defect(_ones(2, 3))


class TestEvaluate:
    """Tests for evaluate and partial_coefficients."""

    def test_all_ones(self) -> None:
        """Test that the all-ones 2 x 2 form at (1,1), (1,1) is 4."""
        form = FormInstance.on(_ones(2, 2), ["inf", "inf"])
        assert evaluate(form, [[1, 1], [1, 1]]) == pytest.approx(4.0)

    def test_basis_extraction(self) -> None:
        """Test that e_1, e_2 picks entry a_12."""
        form = FormInstance.on(fourier_matrix(2), [2, 2])
        assert evaluate(form, [[1, 0], [0, 1]]) == pytest.approx(1.0)

    def test_multilinear_scaling(self) -> None:
        """Test that scaling one vector scales the value."""
        form = FormInstance.on(steinhaus((3, 2, 2), 1), [2, 2, 2])
        vectors = [np.array([1, 2j, -1]), np.array([0.5, 1]), np.array([1j, 1])]
        base = evaluate(form, vectors)
        scaled = evaluate(form, [vectors[0], 3.5j * vectors[1], vectors[2]])
        assert scaled == pytest.approx(3.5j * base)

    def test_length_mismatch(self) -> None:
        """Test that wrong vector lengths or counts are argument errors."""
        form = FormInstance.on(_ones(2, 3), [2, 2])
        with pytest.raises(ArgumentError):
            evaluate(form, [[1, 1], [1, 1]])
        with pytest.raises(ArgumentError):
            evaluate(form, [[1, 1]])

    def test_partial_coefficients_column_sums(self) -> None:
        """Test that freezing slot 1 of F_2 at (1, 1) gives c = (0, 2)."""
        form = FormInstance.on(fourier_matrix(2), [2, 2])
        c = partial_coefficients(form, [np.array([1, 1]), None], 1)
        assert np.allclose(c, [0, 2], atol=1e-12)

    def test_partial_coefficients_matrix_definition(self) -> None:
        """Test that c_j = sum_i M_ij x_i and c_i = sum_j M_ij y_j."""
        tensor = rademacher((3, 4), 2)
        form = FormInstance.on(tensor, [2, 2])
        x = np.array([0.5, -1.0, 2.0])
        y = np.array([1.0, 0.0, -1.0, 3.0])
        assert np.allclose(partial_coefficients(form, [x, None], 1), x @ tensor.entries)
        assert np.allclose(partial_coefficients(form, [None, y], 0), tensor.entries @ y)

    def test_partial_coefficients_at_basis_vector(self) -> None:
        """Test that freezing at e_i returns row i."""
        tensor = rademacher((3, 3), 4)
        form = FormInstance.on(tensor, [2, 2])
        c = partial_coefficients(form, [np.array([0, 1, 0]), None], 1)
        assert np.allclose(c, tensor.entries[1])

    def test_partial_coefficients_agree_with_evaluate(self) -> None:
        """Test sum_j c_j x_kj = A(x_1, ..., x_m) for a trilinear form."""
        form = FormInstance.on(steinhaus((2, 3, 4), 6), [2, 3, "inf"])
        rng = np.random.default_rng(0)
        vectors = [rng.standard_normal(n) for n in form.dims]
        c = partial_coefficients(form, vectors, 1)
        assert complex(np.dot(c, vectors[1])) == pytest.approx(evaluate(form, vectors))


class TestRestrictAndFreeze:
    """Tests for restrict and freeze."""

    def test_restrict_to_first_column(self) -> None:
        """Test restricting F_4 to (4, 1) keeps the first column."""
        form = FormInstance.on(fourier_matrix(4), [2, 2])
        column = restrict(form, (4, 1))
        assert column.dims == (4, 1)
        assert np.allclose(column.tensor.entries[:, 0], fourier_matrix(4).entries[:, 0])

    def test_restrict_identity(self) -> None:
        """Test restricting to the same dims keeps the tensor."""
        form = FormInstance.on(rademacher((3, 3), 1), [2, 2])
        assert restrict(form, (3, 3)).tensor == form.tensor

    def test_restrict_rejects_larger_dims(self) -> None:
        """Test that growing a dimension is an argument error."""
        form = FormInstance.on(rademacher((3, 3), 1), [2, 2])
        with pytest.raises(ArgumentError):
            restrict(form, (4, 3))

    def test_freeze_at_basis_vector_stays_unimodular(self) -> None:
        """Test that freezing at e_j returns the unimodular fiber form."""
        tensor = rademacher((2, 3, 4), 3)
        form = FormInstance.on(tensor, [2, 3, 4])
        reduced, fiber = freeze(form, 1, np.array([0.0, 0.0, 1.0]))
        assert fiber is not None
        assert fiber.dims == (2, 4)
        assert [str(p) for p in fiber.ps] == ["2", "4"]
        assert np.array_equal(reduced, tensor.entries[:, 2, :])

    def test_freeze_at_general_vector_returns_no_form(self) -> None:
        """Test that a non-basis vector leaves a coefficient tensor only."""
        form = FormInstance.on(rademacher((2, 2), 3), [2, 2])
        _, fiber = freeze(form, 0, np.array([0.6, 0.8]))
        assert fiber is None

    def test_freeze_rejects_linear_forms(self) -> None:
        """Test that a 1-linear form cannot be frozen."""
        with pytest.raises(ArgumentError):
            freeze(FormInstance.on(rademacher((3,), 1), [2]), 0, np.array([1, 0, 0]))


class TestTensorFiles:
    """Tests for the tensor file format."""

    def test_write_then_read_real(self) -> None:
        """Test that a Rademacher tensor survives a file round trip."""
        tensor = rademacher((3, 2, 2), 12)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "t.json"
            write_tensor(tensor, path)
            assert read_tensor(path) == tensor

    def test_write_then_read_complex_is_bit_exact(self) -> None:
        """Test that complex entries are reproduced bit for bit."""
        tensor = steinhaus((4, 3), 9)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "t.json"
            write_tensor(tensor, path)
            loaded = read_tensor(path)
            assert np.array_equal(loaded.entries, tensor.entries)
            data = json.loads(path.read_text(encoding="utf-8"))
            assert data["field"] == "complex"
            assert len(data["entries"][0]) == 2

    def test_missing_file(self) -> None:
        """Test that a missing tensor file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            read_tensor("/nonexistent/tensor.json")

    def test_rejects_non_unimodular_entries(self) -> None:
        """Test that entries off the unit circle are schema errors."""
        data = {"dims": [2], "field": "complex", "entries": [[1.0, 0.0], [0.5, 0.0]]}
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "bad.json"
            path.write_text(json.dumps(data), encoding="utf-8")
            with pytest.raises(SchemaError, match="unimodular"):
                read_tensor(path)

    def test_rejects_wrong_entry_count(self) -> None:
        """Test that the entry count must match the dims."""
        data = {"dims": [2, 2], "field": "real", "entries": [1, -1, 1]}
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "bad.json"
            path.write_text(json.dumps(data), encoding="utf-8")
            with pytest.raises(SchemaError, match="expected 4 entries"):
                read_tensor(path)

    def test_rejects_invalid_json(self) -> None:
        """Test that a malformed file is a schema error."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "bad.json"
            path.write_text("{not json", encoding="utf-8")
            with pytest.raises(SchemaError):
                read_tensor(path)
