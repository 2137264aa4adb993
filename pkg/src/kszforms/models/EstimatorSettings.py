"""Settings for the norm estimators."""

from dataclasses import asdict, dataclass
from typing import Any

from ..defaults import DEFAULT_MAX_ITER, DEFAULT_STARTS, DEFAULT_TOL, DEFAULT_VERTEX_CAP
from ..errors import ArgumentError


@dataclass(frozen=True)
class EstimatorSettings:
    """How hard the norm estimators work.

    Attributes:
        starts: Random starts for multi-start ascent (structured starts come on top).
        tol: Relative improvement below which a full ascent cycle counts as converged.
        max_iter: Maximum ascent cycles per start.
        vertex_cap: Largest enumeration the vertex oracle will attempt.
        threads: Worker threads for independent starts and trials.
    """

    starts: int = DEFAULT_STARTS
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    vertex_cap: int = DEFAULT_VERTEX_CAP
    threads: int = 1

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ArgumentError(f"starts must be at least 1, got {self.starts}")
        if not self.tol > 0:
            raise ArgumentError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ArgumentError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.vertex_cap < 1:
            raise ArgumentError(f"vertex_cap must be at least 1, got {self.vertex_cap}")
        if self.threads < 1:
            raise ArgumentError(f"threads must be at least 1, got {self.threads}")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EstimatorSettings":
        """Merge `data` over the defaults.

        Raises:
            ValueError: On unknown keys or out-of-range values.
        """
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"Unknown estimator settings: {', '.join(sorted(unknown))}")
        return cls(**data)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)
