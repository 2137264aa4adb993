"""Persisted results of one experiment run."""

from dataclasses import dataclass, field
from typing import Any

from ..defaults import RECORD_SCHEMA_VERSION
from ..errors import SchemaError, SchemaVersionError
from .ExperimentConfig import ExperimentConfig

RowValue = float | int | str | bool | None


@dataclass(frozen=True)
class RunRow:
    """One row of a record: the dimensions it was measured at and its statistics."""

    dims: tuple[int, ...]
    values: dict[str, RowValue]

    def to_dict(self) -> dict[str, Any]:
        return {"dims": list(self.dims), "values": dict(self.values)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunRow":
        return cls(dims=tuple(int(n) for n in data["dims"]), values=dict(data["values"]))


@dataclass
class RunRecord:
    """An experiment's configuration, rows and derived quantities.

    `metadata` holds wall-clock data (start and finish timestamps, run id). It is
    the only part of a record that differs between two runs of the same config.

    Attributes:
        config: The fully resolved configuration.
        rows: One row per measured point.
        derived: Fitted slopes, reference exponents, extreme ratios.
        code_version: kszforms version that produced the record.
        schema_version: Record format version.
        metadata: Timestamps and run id.
    """

    config: ExperimentConfig
    rows: list[RunRow]
    derived: dict[str, RowValue] = field(default_factory=dict)
    code_version: str = "unknown"
    schema_version: int = RECORD_SCHEMA_VERSION
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.config.kind

    def results_dict(self) -> dict[str, Any]:
        """Everything but `metadata`: identical across runs of the same config."""
        return {
            "schema_version": self.schema_version,
            "code_version": self.code_version,
            "config": self.config.to_dict(),
            "rows": [row.to_dict() for row in self.rows],
            "derived": dict(self.derived),
        }

    def to_dict(self) -> dict[str, Any]:
        return {**self.results_dict(), "metadata": dict(self.metadata)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunRecord":
        """Validate and rebuild a record.

        Raises:
            SchemaVersionError: If the record was written with another schema version.
            SchemaError: On an unknown experiment kind, malformed rows, or a row
                count that does not match the configuration.
        """
        version = data.get("schema_version")
        if version != RECORD_SCHEMA_VERSION:
            raise SchemaVersionError(
                f"record schema_version {version!r} is not supported "
                f"(expected {RECORD_SCHEMA_VERSION})"
            )
        if not isinstance(data.get("config"), dict):
            raise SchemaError("record is missing its 'config' object")
        config = ExperimentConfig.from_dict(data["config"])
        try:
            rows = [RunRow.from_dict(row) for row in data.get("rows", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"malformed record row: {e}") from None
        if len(rows) != config.expected_rows():
            raise SchemaError(
                f"{config.kind} record should hold {config.expected_rows()} rows, got {len(rows)}"
            )
        return cls(
            config=config,
            rows=rows,
            derived=dict(data.get("derived", {})),
            code_version=str(data.get("code_version", "unknown")),
            schema_version=version,
            metadata=dict(data.get("metadata", {})),
        )
