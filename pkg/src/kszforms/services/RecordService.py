"""Persistence of run records: JSON files, CSV exports and run-log directories."""

import csv
import io
import json
import logging
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, TextIO

from ..errors import RecordIOError, SchemaError
from ..models.RunRecord import RunRecord
from .ExperimentService import describe

logger = logging.getLogger(__name__)


def dump_json(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"


class RecordService:
    """Reads and writes RunRecords, and keeps per-run log directories.

    Run logs live under:
    {output_dir}/runs/
    └── 2024-01-15T10-30-00-{run-id}/
        ├── invocation.json   # Resolved CLI configuration
        ├── record.json       # The RunRecord
        └── rows.csv          # CSV export of the rows

    Attributes:
        _output_dir: Base directory for run logs.
        _runs: Mapping of run_id to run directory path.
    """

    def __init__(self, output_dir: Path | None = None) -> None:
        """Initialize the record service.

        Args:
            output_dir: Base directory for run logs; None disables run logs.
        """
        self._output_dir = output_dir
        self._runs: dict[str, Path] = {}

    def persist(self, record: RunRecord, path: Path | str) -> Path:
        """Write a record as JSON.

        Raises:
            RecordIOError: If the file cannot be written.
        """
        file_path = Path(path)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            file_path.write_text(dump_json(record.to_dict()), encoding="utf-8")
        except OSError as e:
            raise RecordIOError(f"cannot write record to {file_path}: {e}") from None
        logger.debug("persisted %s record to %s", record.kind, file_path)
        return file_path

    def load(self, path: Path | str) -> RunRecord:
        """Read a record written by `persist`.

        Raises:
            RecordIOError: If the file is missing or unreadable.
            SchemaVersionError: If it was written with another schema version.
            SchemaError: If it is not valid JSON or fails validation.
        """
        file_path = Path(path)
        try:
            content = file_path.read_text(encoding="utf-8")
        except OSError as e:
            raise RecordIOError(f"cannot read record {file_path}: {e}") from None
        try:
            data = json.loads(content)
        except json.JSONDecodeError as e:
            raise SchemaError(f"Invalid JSON in record {file_path}: {e}") from None
        if not isinstance(data, dict):
            raise SchemaError(f"record {file_path} must hold a JSON object")
        return RunRecord.from_dict(data)

    def write_csv(self, record: RunRecord, stream: TextIO) -> int:
        """Write the rows of a record as CSV with the documented header.

        Returns:
            Number of data rows written.
        """
        columns = [name for name, _ in describe(record.kind)]
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in record.rows:
            cells: list[Any] = ["x".join(str(n) for n in row.dims)]
            for name in columns[1:]:
                value = row.values.get(name)
                cells.append("" if value is None else value)
            writer.writerow(cells)
        return len(record.rows)

    def export_csv(self, record: RunRecord, path: Path | str) -> Path:
        """Write the CSV export to a file.

        Raises:
            RecordIOError: If the file cannot be written.
        """
        file_path = Path(path)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            with file_path.open("w", encoding="utf-8", newline="") as stream:
                self.write_csv(record, stream)
        except OSError as e:
            raise RecordIOError(f"cannot write CSV to {file_path}: {e}") from None
        return file_path

    def to_csv(self, record: RunRecord) -> str:
        buffer = io.StringIO()
        self.write_csv(record, buffer)
        return buffer.getvalue()

    @property
    def enabled(self) -> bool:
        return self._output_dir is not None

    def _generate_run_id(self) -> str:
        """Short UUID for run identification."""
        return str(uuid.uuid4())[:8]

    def _create_run_dir(self, run_id: str) -> Path:
        assert self._output_dir is not None
        timestamp = datetime.now().strftime("%Y-%m-%dT%H-%M-%S")
        run_dir = self._output_dir / "runs" / f"{timestamp}-{run_id}"
        run_dir.mkdir(parents=True, exist_ok=True)
        return run_dir

    def start_run(self, invocation: dict[str, Any]) -> str | None:
        """Create a run directory and save the resolved invocation.

        Returns:
            The run id, or None when run logs are disabled.

        Raises:
            RecordIOError: If the directory cannot be created.
        """
        if self._output_dir is None:
            return None
        run_id = self._generate_run_id()
        try:
            run_dir = self._create_run_dir(run_id)
            payload = {"run_id": run_id, "started_at": datetime.now().isoformat(), **invocation}
            (run_dir / "invocation.json").write_text(dump_json(payload), encoding="utf-8")
        except OSError as e:
            raise RecordIOError(f"cannot create run log under {self._output_dir}: {e}") from None
        self._runs[run_id] = run_dir
        return run_id

    def _get_run_dir(self, run_id: str) -> Path:
        """Raises ValueError for unknown run ids."""
        if run_id not in self._runs:
            raise ValueError(f"Unknown run: {run_id}")
        return self._runs[run_id]

    def save_record(self, run_id: str, record: RunRecord) -> None:
        """Save record.json and rows.csv into the run directory."""
        run_dir = self._get_run_dir(run_id)
        record.metadata["run_id"] = run_id
        self.persist(record, run_dir / "record.json")
        self.export_csv(record, run_dir / "rows.csv")

    def get_run_path(self, run_id: str) -> Path:
        return self._get_run_dir(run_id)
