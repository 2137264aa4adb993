"""Certified brackets for the operator norm ||A||."""

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray


def encode_vector(v: NDArray[Any]) -> list[Any]:
    """Numbers for real vectors, [re, im] pairs for complex ones."""
    if np.iscomplexobj(v):
        return [[float(z.real), float(z.imag)] for z in v]
    return [float(x) for x in v]


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """A lower bound on ||A|| with its witness, and an optional upper bound.

    `lower` is |A(witness)|, so it is always a valid lower bound. `upper` is set
    only by exact oracles.

    Attributes:
        lower: Value of |A| at the witness.
        witness: One unit vector per slot.
        method: "alternating", "vertex-exact", "singular-value",
            "basis-certificate" or "grid".
        upper: Upper bound from an exact oracle, or None.
        iterations: Ascent cycles (or power iterations) of the winning run.
        converged: Whether the winning run met its tolerance.
        starts: Number of runs the estimate was reduced from.
        history: Objective after every accepted slot update of the winning run.
    """

    lower: float
    witness: tuple[NDArray[Any], ...]
    method: str
    upper: float | None = None
    iterations: int = 0
    converged: bool = True
    starts: int = 1
    history: tuple[float, ...] = field(default=())

    @property
    def is_exact(self) -> bool:
        return self.upper is not None

    def to_dict(self, include_witness: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "lower": self.lower,
            "upper": self.upper,
            "method": self.method,
            "iterations": self.iterations,
            "converged": self.converged,
            "starts": self.starts,
        }
        if include_witness:
            data["witness"] = [encode_vector(v) for v in self.witness]
        return data
