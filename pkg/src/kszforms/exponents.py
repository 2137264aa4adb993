"""Exponent formulas for the smallest norms of unimodular multilinear forms.

Each function takes a p-tuple (p_1, ..., p_m) and returns the exponent of n in
the corresponding bound ||A|| <= C n^{exponent}. Rational inputs give exact
`Fraction` results; 1/inf is taken as 0 throughout.
"""

import math
from collections.abc import Sequence
from fractions import Fraction

from .errors import ArgumentError, DomainError
from .models.ExponentProfile import ExponentProfile
from .models.ExtendedExponent import TWO, ExactReal, ExponentLike, ExtendedExponent

HALF = Fraction(1, 2)


def _coerce(ps: Sequence[ExponentLike]) -> tuple[ExtendedExponent, ...]:
    if len(ps) == 0:
        raise ArgumentError("exponent list must not be empty")
    return tuple(ExtendedExponent.of(p) for p in ps)


def _positive_part(value: ExactReal) -> ExactReal:
    return value if value > 0 else Fraction(0)


def conjugate(p: ExponentLike) -> ExtendedExponent:
    """The conjugate exponent p*, with 1* = inf and inf* = 1."""
    return ExtendedExponent.of(p).conjugate()


def rho(ps: Sequence[ExponentLike]) -> ExtendedExponent:
    """min over k of max{2, p_k*}."""
    exponents = _coerce(ps)
    return min(max(TWO, p.conjugate()) for p in exponents)


def theorem1_exponent(ps: Sequence[ExponentLike]) -> ExactReal:
    """1/rho + sum_k max{1/2 - 1/p_k, 0}.

    The minimum in rho runs over k.

    Raises:
        ArgumentError: If `ps` is empty.
    """
    exponents = _coerce(ps)
    total: ExactReal = rho(exponents).reciprocal
    for p in exponents:
        total += _positive_part(HALF - p.reciprocal)
    return total


def ar_gamma(ps: Sequence[ExponentLike]) -> ExtendedExponent:
    """min{2, max{p_k : p_k <= 2}}; 2 when no p_k is at most 2."""
    exponents = _coerce(ps)
    small = [p for p in exponents if p <= TWO]
    if not small:
        return TWO
    return min(TWO, max(small))


def ar_exponent(ps: Sequence[ExponentLike]) -> ExactReal:
    """1 - 1/gamma + sum_k max{1/gamma - 1/p_k, 0}."""
    exponents = _coerce(ps)
    inv_gamma = ar_gamma(exponents).reciprocal
    total: ExactReal = 1 - inv_gamma
    for p in exponents:
        total += _positive_part(inv_gamma - p.reciprocal)
    return total


def classical_ksz_exponent(ps: Sequence[ExponentLike]) -> ExactReal:
    """(m+1)/2 - sum_k 1/p_k, asserted only when every p_k >= 2.

    Raises:
        DomainError: If some p_k < 2.
    """
    exponents = _coerce(ps)
    below = [str(p) for p in exponents if p < TWO]
    if below:
        raise DomainError(f"classical exponent needs every p >= 2, got {', '.join(below)}")
    total: ExactReal = Fraction(len(exponents) + 1, 2)
    for p in exponents:
        total -= p.reciprocal
    return total


def bayart_exponent(ps: Sequence[ExponentLike]) -> ExactReal:
    """1 - 1/max_k p_k, asserted only when every p_k <= 2.

    Raises:
        DomainError: If some p_k > 2.
    """
    exponents = _coerce(ps)
    above = [str(p) for p in exponents if p > TWO]
    if above:
        raise DomainError(f"Bayart exponent needs every p <= 2, got {', '.join(above)}")
    return 1 - max(exponents).reciprocal


def hl_lower_bound(ps: Sequence[ExponentLike], n: int) -> float:
    """(1/sqrt 2)^{m-1} n^{1/2 + sum_k (1/2 - 1/p_k)}.

    The Hardy-Littlewood floor below which no unimodular m-linear form on
    l_{p_1}^n x ... x l_{p_m}^n can go when every p_k >= 2.

    Raises:
        ArgumentError: If n is not positive.
        DomainError: If some p_k < 2.
    """
    exponents = _coerce(ps)
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    below = [str(p) for p in exponents if p < TWO]
    if below:
        raise DomainError(f"Hardy-Littlewood floor needs every p >= 2, got {', '.join(below)}")
    exponent: ExactReal = HALF
    for p in exponents:
        exponent += HALF - p.reciprocal
    m = len(exponents)
    return float(n ** float(exponent) / math.sqrt(2) ** (m - 1))


def regime(ps: Sequence[ExponentLike]) -> str:
    """"all-large" if every p_k >= 2, "all-small" if every p_k < 2, else "mixed"."""
    exponents = _coerce(ps)
    if all(p >= TWO for p in exponents):
        return "all-large"
    if all(p < TWO for p in exponents):
        return "all-small"
    return "mixed"


def optimality_case(ps: Sequence[ExponentLike]) -> str:
    """Which lower-bound argument shows the theorem1 exponent cannot be improved.

    - "hardy-littlewood": every p_k >= 2.
    - "all-small": every p_k < 2 (basis-vector certificate on the largest p_k).
    - "single-large": exactly one p_k >= 2 (basis-vector certificate on that slot).
    - "induction": at least two p_k >= 2 and at least one p_k < 2 (freeze a small slot).
    """
    exponents = _coerce(ps)
    large = sum(1 for p in exponents if p >= TWO)
    if large == len(exponents):
        return "hardy-littlewood"
    if large == 0:
        return "all-small"
    if large == 1:
        return "single-large"
    return "induction"


def profile(ps: Sequence[ExponentLike]) -> ExponentProfile:
    """Evaluate every applicable formula for `ps`."""
    exponents = _coerce(ps)
    theorem1 = theorem1_exponent(exponents)
    ar = ar_exponent(exponents)
    classical = (
        classical_ksz_exponent(exponents) if all(p >= TWO for p in exponents) else None
    )
    bayart = bayart_exponent(exponents) if all(p <= TWO for p in exponents) else None
    return ExponentProfile(
        ps=exponents,
        theorem1=theorem1,
        albuquerque_rezende=ar,
        classical_ksz=classical,
        bayart=bayart,
        gamma=ar_gamma(exponents),
        rho=rho(exponents),
        dominates=theorem1 <= ar,
        regime=regime(exponents),
        optimality_case=optimality_case(exponents),
    )
