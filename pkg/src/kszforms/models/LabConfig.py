"""Configuration for kszforms runs."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..defaults import DEFAULT_OUTPUT_DIR
from .EstimatorSettings import EstimatorSettings


def _default_logging() -> dict[str, Any]:
    return {"enabled": True, "output_dir": DEFAULT_OUTPUT_DIR, "verbose": False}


@dataclass
class LabConfig:
    """Settings shared by every kszforms subcommand.

    Attributes:
        estimator: Norm estimator settings.
        logging: Run-log configuration: enabled, output_dir, verbose.
    """

    estimator: EstimatorSettings = field(default_factory=EstimatorSettings)
    logging: dict[str, Any] = field(default_factory=_default_logging)

    @classmethod
    def from_file(cls, path: Path | str) -> "LabConfig":
        """Load configuration from a JSON file.

        Args:
            path: Path to the JSON configuration file.

        Returns:
            LabConfig instance.

        Raises:
            FileNotFoundError: If the config file doesn't exist.
            json.JSONDecodeError: If the file isn't valid JSON.
            ValueError: If the file names unknown estimator settings.
        """
        file_path = Path(path)
        if not file_path.exists():
            raise FileNotFoundError(f"Config file not found: {file_path}")

        content = file_path.read_text(encoding="utf-8")
        data = json.loads(content)
        if not isinstance(data, dict):
            raise ValueError(f"Config file must hold a JSON object: {file_path}")
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LabConfig":
        """Create configuration from a dictionary, merging over the defaults."""
        estimator = EstimatorSettings.from_dict(data.get("estimator", {}))
        logging_config = {**_default_logging(), **data.get("logging", {})}
        return cls(estimator=estimator, logging=logging_config)

    def to_dict(self) -> dict[str, Any]:
        return {"estimator": self.estimator.to_dict(), "logging": dict(self.logging)}
