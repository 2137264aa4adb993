"""The fully resolved form of one CLI invocation."""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Invocation:
    """What a subcommand was asked to do, defaults filled in.

    Every subcommand echoes this into its output.

    Attributes:
        subcommand: The subcommand name.
        flags: Every flag after defaulting, JSON-ready.
        seed: The seed in effect, if the subcommand is random.
        output_format: "json", "csv" or "human".
        input_path: Tensor or record file read, if any.
        output_path: File written, if any.
    """

    subcommand: str
    flags: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    output_format: str = "json"
    input_path: str | None = None
    output_path: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "flags": dict(self.flags),
            "seed": self.seed,
            "format": self.output_format,
            "input": self.input_path,
            "output": self.output_path,
        }
