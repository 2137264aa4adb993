"""Configuration of one experiment run."""

from dataclasses import dataclass, field
from typing import Any

from ..defaults import EXPERIMENT_KINDS
from ..errors import ArgumentError, SchemaError
from ..utils.seeding import check_seed
from .EstimatorSettings import EstimatorSettings
from .ExtendedExponent import ExtendedExponent
from .UnimodularTensor import FIELDS

CONJECTURE_PATHS = ("diagonal", "uniform")


@dataclass(frozen=True)
class FourierGrid:
    """The (n1, n2, p1, p2) grid of a Fourier scan."""

    n1s: tuple[int, ...]
    n2s: tuple[int, ...]
    p1s: tuple[ExtendedExponent, ...]
    p2s: tuple[ExtendedExponent, ...]

    def __post_init__(self) -> None:
        for name in ("n1s", "n2s", "p1s", "p2s"):
            if not getattr(self, name):
                raise ArgumentError(f"Fourier grid '{name}' must not be empty")
        if any(n < 1 for n in self.n1s + self.n2s):
            raise ArgumentError("Fourier grid dimensions must be positive")
        object.__setattr__(self, "p1s", tuple(ExtendedExponent.of(p) for p in self.p1s))
        object.__setattr__(self, "p2s", tuple(ExtendedExponent.of(p) for p in self.p2s))

    @property
    def size(self) -> int:
        return len(self.n1s) * len(self.n2s) * len(self.p1s) * len(self.p2s)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n1s": list(self.n1s),
            "n2s": list(self.n2s),
            "p1s": [p.to_json() for p in self.p1s],
            "p2s": [p.to_json() for p in self.p2s],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FourierGrid":
        return cls(
            n1s=tuple(int(n) for n in data["n1s"]),
            n2s=tuple(int(n) for n in data["n2s"]),
            p1s=tuple(ExtendedExponent.of(p) for p in data["p1s"]),
            p2s=tuple(ExtendedExponent.of(p) for p in data["p2s"]),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything that determines an experiment's rows.

    Two runs of the same config, seed included, produce identical rows.

    Attributes:
        kind: One of "min-norm-search", "slope", "conjecture-ratio",
            "fourier-scan", "constant-one".
        ps: Exponents of the domain (search and slope experiments).
        schedule: Dimensions: the single n of a search, the n values of a slope
            experiment, the path parameters N of a conjecture series.
        trials: Random tensors drawn per dimension.
        seed: Parent seed; per-trial seeds are split from it.
        estimator: Norm estimator settings.
        field: "real" (Rademacher) or "complex" (Steinhaus) tensors.
        exhaustive: Enumerate every sign tensor instead of drawing trials.
        path: Conjecture path, "diagonal" (1, N, N) or "uniform" (N, N, N).
        grid: The Fourier scan grid.
    """

    kind: str
    ps: tuple[ExtendedExponent, ...] = ()
    schedule: tuple[int, ...] = ()
    trials: int = 1
    seed: int = 0
    estimator: EstimatorSettings = field(default_factory=EstimatorSettings)
    field: str = "real"
    exhaustive: bool = False
    path: str = "diagonal"
    grid: FourierGrid | None = None

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENT_KINDS:
            raise ArgumentError(f"unknown experiment kind '{self.kind}'")
        object.__setattr__(self, "ps", tuple(ExtendedExponent.of(p) for p in self.ps))
        object.__setattr__(self, "schedule", tuple(int(n) for n in self.schedule))
        check_seed(self.seed)
        if self.trials < 1:
            raise ArgumentError(f"trials must be at least 1, got {self.trials}")
        if self.field not in FIELDS:
            raise ArgumentError(f"field must be one of {FIELDS}, got '{self.field}'")
        if self.path not in CONJECTURE_PATHS:
            raise ArgumentError(f"path must be one of {CONJECTURE_PATHS}, got '{self.path}'")
        if any(n < 1 for n in self.schedule):
            raise ArgumentError(f"dimensions must be positive, got {self.schedule}")

        if self.kind in ("min-norm-search", "slope") and not self.ps:
            raise ArgumentError(f"{self.kind} needs at least one exponent")
        if self.kind == "min-norm-search" and len(self.schedule) != 1:
            raise ArgumentError("min-norm-search takes exactly one dimension")
        if self.kind in ("slope", "conjecture-ratio"):
            if len(self.schedule) < 2:
                raise ArgumentError(f"{self.kind} needs at least two dimensions")
            if any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
                raise ArgumentError(
                    f"dimension schedule must be strictly increasing, got {self.schedule}"
                )
        if self.kind in ("fourier-scan", "constant-one") and self.grid is None:
            raise ArgumentError(f"{self.kind} needs a Fourier grid")
        if self.exhaustive and self.field != "real":
            raise ArgumentError("exhaustive search enumerates real signs only")

    @property
    def m(self) -> int:
        return len(self.ps)

    def expected_rows(self) -> int:
        """Row count of the record this config produces."""
        if self.kind == "min-norm-search":
            return 1
        if self.kind in ("slope", "conjecture-ratio"):
            return len(self.schedule)
        assert self.grid is not None
        return self.grid.size

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "ps": [p.to_json() for p in self.ps],
            "schedule": list(self.schedule),
            "trials": self.trials,
            "seed": self.seed,
            "estimator": self.estimator.to_dict(),
            "field": self.field,
            "exhaustive": self.exhaustive,
            "path": self.path,
            "grid": self.grid.to_dict() if self.grid is not None else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """Rebuild a config from its record form.

        Raises:
            SchemaError: On an unknown kind or a malformed field.
        """
        kind = data.get("kind")
        if kind not in EXPERIMENT_KINDS:
            raise SchemaError(f"unknown experiment kind {kind!r}")
        try:
            grid_data = data.get("grid")
            return cls(
                kind=kind,
                ps=tuple(ExtendedExponent.of(p) for p in data.get("ps", [])),
                schedule=tuple(int(n) for n in data.get("schedule", [])),
                trials=int(data.get("trials", 1)),
                seed=int(data.get("seed", 0)),
                estimator=EstimatorSettings.from_dict(data.get("estimator", {})),
                field=data.get("field", "real"),
                exhaustive=bool(data.get("exhaustive", False)),
                path=data.get("path", "diagonal"),
                grid=FourierGrid.from_dict(grid_data) if grid_data is not None else None,
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, SchemaError):
                raise
            raise SchemaError(f"malformed experiment config: {e}") from None
