"""Extended-real exponents p in [1, inf]."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import ArgumentError

# Exponent formulas stay exact on rational input and fall back to float otherwise
ExactReal = Fraction | float

ExponentLike = Union["ExtendedExponent", Fraction, int, float, str]


@dataclass(frozen=True, order=True)
class ExtendedExponent:
    """An exponent p in [1, inf] with inf as a first-class value.

    Rational inputs are held as `Fraction` so that every formula built on them is
    exact; inf is held as `math.inf`. Any other float is kept as a float.

    Attributes:
        value: The exponent, a Fraction, a float, or math.inf.
    """

    value: ExactReal

    def __post_init__(self) -> None:
        value = self.value
        if isinstance(value, bool):
            raise ArgumentError(f"exponent must be a number, got {value!r}")
        if isinstance(value, int):
            value = Fraction(value)
            object.__setattr__(self, "value", value)
        if not isinstance(value, (Fraction, float)):
            raise ArgumentError(f"exponent must be a number, got {value!r}")
        if isinstance(value, float) and math.isnan(value):
            raise ArgumentError("exponent must not be NaN")
        if value < 1:
            raise ArgumentError(f"exponent must lie in [1, inf], got {value}")

    @classmethod
    def of(cls, value: ExponentLike) -> "ExtendedExponent":
        """Coerce a number, string or exponent into an ExtendedExponent."""
        if isinstance(value, ExtendedExponent):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)

    @classmethod
    def parse(cls, token: str) -> "ExtendedExponent":
        """Parse a CLI / JSON token.

        "inf" (any case) is infinity. Integers, decimals and fractions are read
        exactly, so "1.5" and "3/2" give the same exponent.

        Raises:
            ArgumentError: If the token is not a number or lies below 1.
        """
        text = token.strip()
        if text.lower() == "inf":
            return cls(math.inf)
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ArgumentError(f"invalid exponent '{token}'") from None
        if value < 1:
            raise ArgumentError(f"exponent '{token}' is below 1")
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    @property
    def is_exact(self) -> bool:
        """True when formulas over this exponent can be evaluated in Fractions."""
        return isinstance(self.value, Fraction) or self.is_infinite

    @property
    def reciprocal(self) -> ExactReal:
        """1/p, with 1/inf = 0 (returned as an exact zero)."""
        if self.is_infinite:
            return Fraction(0)
        if isinstance(self.value, Fraction):
            return 1 / self.value
        return 1.0 / self.value

    def conjugate(self) -> "ExtendedExponent":
        """The exponent p* with 1/p + 1/p* = 1."""
        if self.is_infinite:
            return ExtendedExponent(Fraction(1))
        if self.value == 1:
            return ExtendedExponent(math.inf)
        return ExtendedExponent(self.value / (self.value - 1))

    def to_json(self) -> str | float:
        """Serialize as "inf", an exact fraction string, or a float."""
        if self.is_infinite:
            return "inf"
        if isinstance(self.value, Fraction):
            return str(self.value)
        return self.value

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(self.value)


INF = ExtendedExponent(math.inf)
ONE = ExtendedExponent(Fraction(1))
TWO = ExtendedExponent(Fraction(2))


def format_real(value: ExactReal | None) -> str | float | None:
    """JSON form of an exponent value: exact fractions as strings, floats as floats."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    return value


def read_real(value: str | float | int | None) -> ExactReal | None:
    """Inverse of `format_real`."""
    if value is None:
        return None
    if isinstance(value, (str, int)):
        return Fraction(value)
    return float(value)
