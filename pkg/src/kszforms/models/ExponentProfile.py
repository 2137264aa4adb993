"""Every exponent formula evaluated for one p-tuple."""

from dataclasses import dataclass
from typing import Any

from .ExtendedExponent import ExactReal, ExtendedExponent, format_real


@dataclass(frozen=True)
class ExponentProfile:
    """Exponents of n for a p-tuple (p_1, ..., p_m).

    Attributes:
        ps: The exponents p_k.
        theorem1: 1/rho + sum_k max{1/2 - 1/p_k, 0}.
        albuquerque_rezende: 1 - 1/gamma + sum_k max{1/gamma - 1/p_k, 0}.
        classical_ksz: (m+1)/2 - sum_k 1/p_k, present only when every p_k >= 2.
        bayart: 1 - 1/max_k p_k, present only when every p_k <= 2.
        gamma: min{2, max{p_k : p_k <= 2}}, 2 when no p_k <= 2.
        rho: min_k max{2, p_k*}.
        dominates: theorem1 <= albuquerque_rezende.
        regime: "all-large", "all-small" or "mixed".
        optimality_case: The lower-bound argument that makes theorem1 sharp.
    """

    ps: tuple[ExtendedExponent, ...]
    theorem1: ExactReal
    albuquerque_rezende: ExactReal
    classical_ksz: ExactReal | None
    bayart: ExactReal | None
    gamma: ExtendedExponent
    rho: ExtendedExponent
    dominates: bool
    regime: str
    optimality_case: str

    @property
    def m(self) -> int:
        return len(self.ps)

    def to_dict(self) -> dict[str, Any]:
        """JSON form; exact values are fraction strings and inf is "inf"."""
        return {
            "ps": [p.to_json() for p in self.ps],
            "m": self.m,
            "theorem1": format_real(self.theorem1),
            "albuquerque_rezende": format_real(self.albuquerque_rezende),
            "classical_ksz": format_real(self.classical_ksz),
            "bayart": format_real(self.bayart),
            "gamma": self.gamma.to_json(),
            "rho": self.rho.to_json(),
            "dominates": self.dominates,
            "regime": self.regime,
            "optimality_case": self.optimality_case,
        }
