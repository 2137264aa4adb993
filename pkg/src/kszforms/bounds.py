"""Dimension-dependent bound values, evaluated with the constant C = 1.

Every value here is the n-dependent factor of an upper bound ||A|| <= C(m) * value;
reports carry them "modulo C(m)".
"""

import math
from collections.abc import Sequence

from .defaults import CONJECTURE_PS
from .errors import DomainError
from .exponents import ar_gamma, rho
from .models.DomainSpec import DomainSpec
from .models.ExtendedExponent import TWO, ExponentLike, ExtendedExponent

# Reference constant of the real-sign construction for bilinear forms
AR_REAL_CONSTANT = 8.0 * math.sqrt(2.0 * math.log(9.0))


def _excess_product(domain: DomainSpec, threshold: float) -> float:
    # prod_k n_k^{max{threshold - 1/p_k, 0}}
    product = 1.0
    for n, p in domain.factors:
        excess = threshold - float(p.reciprocal)
        if excess > 0:
            product *= n**excess
    return product


def theorem1_upper_value(domain: DomainSpec) -> float:
    """(sum_k n_k)^{1/rho} * prod_k n_k^{max{1/2 - 1/p_k, 0}}."""
    total = math.fsum(domain.dims)
    return float(total ** float(rho(domain.ps).reciprocal) * _excess_product(domain, 0.5))


def ar_upper_value(domain: DomainSpec) -> float:
    """(sum_k n_k)^{1 - 1/gamma} * prod_k n_k^{max{1/gamma - 1/p_k, 0}}."""
    inv_gamma = float(ar_gamma(domain.ps).reciprocal)
    total = math.fsum(domain.dims)
    return float(total ** (1.0 - inv_gamma) * _excess_product(domain, inv_gamma))


def conjecture_denominator(domain: DomainSpec) -> float:
    """(sum_k n_k^{1 - 1/gamma}) * prod_k n_k^{max{1/gamma - 1/p_k, 0}}.

    The bound conjectured to be the sharp one for every choice of dimensions.
    """
    inv_gamma = float(ar_gamma(domain.ps).reciprocal)
    total = math.fsum(n ** (1.0 - inv_gamma) for n in domain.dims)
    return total * _excess_product(domain, inv_gamma)


def conjecture_ratio_value(domain: DomainSpec) -> float:
    """theorem1_upper_value / conjecture_denominator.

    A ratio that tends to 0 along some dimension path means the conjectured bound
    is beaten there.
    """
    return theorem1_upper_value(domain) / conjecture_denominator(domain)


def conjecture_ratio(n1: int, n2: int, n3: int) -> float:
    """conjecture_ratio_value on l_{3/2}^{n1} x l_3^{n2} x l_3^{n3}.

    Equals (n1+n2+n3)^{1/2} n2^{1/6} n3^{1/6} / ((n1^{1/3}+n2^{1/3}+n3^{1/3}) n2^{1/3} n3^{1/3}).
    """
    return conjecture_ratio_value(DomainSpec.from_lists((n1, n2, n3), CONJECTURE_PS))


def _check_fourier_ps(p1: ExponentLike, p2: ExponentLike) -> tuple[float, float]:
    e1, e2 = ExtendedExponent.of(p1), ExtendedExponent.of(p2)
    if e1 < TWO or e2 < TWO:
        raise DomainError(f"the Fourier bound needs p1, p2 >= 2, got {e1}, {e2}")
    return float(e1.reciprocal), float(e2.reciprocal)


def fourier_bound(n1: int, n2: int, p1: ExponentLike, p2: ExponentLike) -> float:
    """max{n1, n2}^{1/2} n1^{1/2 - 1/p1} n2^{1/2 - 1/p2}.

    Raises:
        DomainError: If p1 or p2 is below 2.
    """
    r1, r2 = _check_fourier_ps(p1, p2)
    return float(max(n1, n2) ** 0.5 * n1 ** (0.5 - r1) * n2 ** (0.5 - r2))


def ar_bilinear_denominator(n1: int, n2: int, p1: ExponentLike, p2: ExponentLike) -> float:
    """(n1^{1/2} + n2^{1/2}) n1^{1/2 - 1/p1} n2^{1/2 - 1/p2}.

    Raises:
        DomainError: If p1 or p2 is below 2.
    """
    r1, r2 = _check_fourier_ps(p1, p2)
    return float((math.sqrt(n1) + math.sqrt(n2)) * n1 ** (0.5 - r1) * n2 ** (0.5 - r2))


def bound_values(dims: Sequence[int], ps: Sequence[ExponentLike]) -> dict[str, float]:
    """theorem1 and AR bound values for one domain."""
    domain = DomainSpec.from_lists(dims, ps)
    return {"theorem1_bound": theorem1_upper_value(domain), "ar_bound": ar_upper_value(domain)}
