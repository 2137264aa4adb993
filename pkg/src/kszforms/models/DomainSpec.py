"""The product domain l_{p_1}^{n_1} x ... x l_{p_m}^{n_m}."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from ..errors import ArgumentError
from .ExtendedExponent import ExponentLike, ExtendedExponent


@dataclass(frozen=True)
class DomainSpec:
    """Ordered factors (n_k, p_k) of a product of l_p balls.

    Attributes:
        factors: One (dimension, exponent) pair per slot, m >= 1.
    """

    factors: tuple[tuple[int, ExtendedExponent], ...]

    def __post_init__(self) -> None:
        factors: list[tuple[int, ExtendedExponent]] = []
        for entry in self.factors:
            n, p = entry
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ArgumentError(f"dimension must be a positive integer, got {n!r}")
            factors.append((n, ExtendedExponent.of(p)))
        if not factors:
            raise ArgumentError("a domain needs at least one factor")
        object.__setattr__(self, "factors", tuple(factors))

    @classmethod
    def from_lists(cls, dims: Sequence[int], ps: Sequence[ExponentLike]) -> "DomainSpec":
        """Pair dimensions with exponents position by position.

        Raises:
            ArgumentError: If the lists have different lengths.
        """
        if len(dims) != len(ps):
            raise ArgumentError(
                f"got {len(dims)} dimensions but {len(ps)} exponents"
            )
        return cls(tuple((int(n), ExtendedExponent.of(p)) for n, p in zip(dims, ps)))

    @classmethod
    def uniform(cls, ps: Iterable[ExponentLike], n: int) -> "DomainSpec":
        """Every slot has dimension n."""
        return cls(tuple((n, ExtendedExponent.of(p)) for p in ps))

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.factors)

    @property
    def ps(self) -> tuple[ExtendedExponent, ...]:
        return tuple(p for _, p in self.factors)

    def with_dims(self, dims: Sequence[int]) -> "DomainSpec":
        """Same exponents, new dimensions."""
        return DomainSpec.from_lists(dims, self.ps)

    def drop(self, k: int) -> "DomainSpec":
        """The domain with slot k removed.

        Raises:
            ArgumentError: If k is out of range or the domain has a single slot.
        """
        if not 0 <= k < self.m:
            raise ArgumentError(f"slot {k} out of range for m = {self.m}")
        if self.m == 1:
            raise ArgumentError("cannot drop the only slot of a domain")
        return DomainSpec(self.factors[:k] + self.factors[k + 1:])

    def to_dict(self) -> dict[str, Any]:
        return {"dims": list(self.dims), "ps": [p.to_json() for p in self.ps]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DomainSpec":
        ps = [ExtendedExponent.of(p) for p in data["ps"]]
        return cls.from_lists(list(data["dims"]), ps)
