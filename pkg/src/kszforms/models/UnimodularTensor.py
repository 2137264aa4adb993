"""Dense coefficient tensors whose entries all have modulus 1."""

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..defaults import READER_UNIMODULAR_TOL
from ..errors import ArgumentError, SchemaError

FIELDS = ("real", "complex")
PROVENANCE_KINDS = ("rademacher", "steinhaus", "fourier", "file", "enumeration")


@dataclass(frozen=True)
class Provenance:
    """Where a tensor came from.

    Attributes:
        kind: Generator name ("rademacher", "steinhaus", "fourier", "file",
            "enumeration").
        seed: Generator seed (enumeration index for "enumeration"), or None.
    """

    kind: str = "file"
    seed: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "seed": self.seed}


@dataclass(frozen=True, eq=False)
class UnimodularTensor:
    """An m-dimensional array of unimodular scalars.

    Storage is a read-only numpy array in C (row-major) order whose shape is the
    dimension list. Real-sign tensors hold exact +1/-1 as float64; complex tensors
    hold complex128 entries of modulus 1.

    Attributes:
        entries: The coefficients, shape (n_1, ..., n_m).
        field: "real" for sign tensors, "complex" for unit-circle tensors.
        provenance: Generator name and seed.
    """

    entries: NDArray[Any]
    field: str = "real"
    provenance: Provenance = Provenance()

    def __post_init__(self) -> None:
        if self.field not in FIELDS:
            raise ArgumentError(f"field must be one of {FIELDS}, got '{self.field}'")
        if self.field == "real":
            raw = np.asarray(self.entries)
            if np.iscomplexobj(raw):
                if np.abs(raw.imag).max(initial=0.0) != 0.0:
                    raise ArgumentError("real-sign tensors cannot have imaginary parts")
                raw = raw.real
            entries = np.array(raw, dtype=np.float64, order="C")
        else:
            entries = np.array(self.entries, dtype=np.complex128, order="C")
        if entries.ndim < 1 or entries.size == 0:
            raise ArgumentError(f"tensor needs at least one slot and entry, got {entries.shape}")
        if self.field == "real":
            if not np.all(np.abs(entries) == 1.0):
                raise ArgumentError("real-sign tensor entries must be exactly +1 or -1")
        else:
            defect = float(np.abs(np.abs(entries) - 1.0).max())
            if defect > READER_UNIMODULAR_TOL:
                raise ArgumentError(f"entries are not unimodular (defect {defect:.3e})")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(n) for n in self.entries.shape)

    @property
    def m(self) -> int:
        return self.entries.ndim

    @property
    def is_real(self) -> bool:
        return self.field == "real"

    def unimodularity_defect(self) -> float:
        """max over entries of ||entry| - 1|."""
        return float(np.abs(np.abs(self.entries) - 1.0).max())

    def as_complex(self) -> NDArray[np.complex128]:
        return np.asarray(self.entries, dtype=np.complex128)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnimodularTensor):
            return NotImplemented
        return (
            self.field == other.field
            and self.provenance == other.provenance
            and self.dims == other.dims
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None  # type: ignore[assignment]

    def to_dict(self) -> dict[str, Any]:
        """File form: row-major entries, numbers for real, [re, im] pairs for complex.

        Floats are written with Python's shortest round-trip repr, so reading the
        file back reproduces every entry bit for bit.
        """
        flat = self.entries.reshape(-1)
        entries: list[Any]
        if self.is_real:
            entries = [int(v) for v in flat]
        else:
            entries = [[float(v.real), float(v.imag)] for v in flat]
        return {
            "dims": list(self.dims),
            "field": self.field,
            "entries": entries,
            "provenance": self.provenance.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "UnimodularTensor":
        """Validate and build a tensor from its file form.

        Raises:
            SchemaError: On missing keys, wrong entry count or shape, or entries
                whose modulus differs from 1 by more than 1e-9.
        """
        for key in ("dims", "field", "entries"):
            if key not in data:
                raise SchemaError(f"tensor file is missing '{key}'")
        dims = data["dims"]
        if not isinstance(dims, list) or not dims or not all(
            isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in dims
        ):
            raise SchemaError(f"'dims' must be a list of positive integers, got {dims!r}")
        field = data["field"]
        if field not in FIELDS:
            raise SchemaError(f"'field' must be one of {FIELDS}, got {field!r}")
        raw = data["entries"]
        expected = math.prod(dims)
        if not isinstance(raw, list) or len(raw) != expected:
            count = len(raw) if isinstance(raw, list) else "non-list"
            raise SchemaError(f"expected {expected} entries for dims {dims}, got {count}")

        provenance_data = data.get("provenance") or {}
        kind = provenance_data.get("kind", "file")
        if kind not in PROVENANCE_KINDS:
            raise SchemaError(f"unknown provenance kind '{kind}'")
        provenance = Provenance(kind=kind, seed=provenance_data.get("seed"))

        try:
            if field == "real":
                values: ArrayLike = np.array(raw, dtype=np.float64)
            else:
                pairs = np.array(raw, dtype=np.float64)
                if pairs.shape != (expected, 2):
                    raise SchemaError("complex entries must be [re, im] pairs")
                values = pairs[:, 0] + 1j * pairs[:, 1]
        except (TypeError, ValueError) as e:
            raise SchemaError(f"malformed entries: {e}") from None

        array = np.asarray(values).reshape(dims)
        if field == "real" and not np.all(np.abs(array) == 1.0):
            raise SchemaError("real-sign entries must be exactly +1 or -1")
        defect = float(np.abs(np.abs(array) - 1.0).max())
        if defect > READER_UNIMODULAR_TOL:
            raise SchemaError(f"entries are not unimodular (defect {defect:.3e})")
        return cls(entries=array, field=field, provenance=provenance)

    def to_file(self, path: Path | str) -> None:
        """Write the JSON file form."""
        Path(path).write_text(json.dumps(self.to_dict()) + "\n", encoding="utf-8")

    @classmethod
    def from_file(cls, path: Path | str) -> "UnimodularTensor":
        """Load a tensor from a JSON file.

        Raises:
            FileNotFoundError: If the file doesn't exist.
            SchemaError: If the file isn't valid JSON or fails validation.
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Tensor file not found: {file_path}")
        try:
            data = json.loads(file_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise SchemaError(f"Invalid JSON in tensor file: {e}") from None
        if not isinstance(data, dict):
            raise SchemaError("tensor file must hold a JSON object")
        return cls.from_dict(data)
