"""A unimodular m-linear form on a concrete product domain."""

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import ArgumentError
from .DomainSpec import DomainSpec
from .ExtendedExponent import ExponentLike, ExtendedExponent
from .UnimodularTensor import UnimodularTensor


@dataclass(frozen=True)
class FormInstance:
    """The form A(x_1, ..., x_m) = sum_j a_j x_{1,j_1} ... x_{m,j_m}.

    Attributes:
        tensor: The coefficients a_j.
        domain: The l_p factors the form is normed on.
    """

    tensor: UnimodularTensor
    domain: DomainSpec

    def __post_init__(self) -> None:
        if self.tensor.dims != self.domain.dims:
            raise ArgumentError(
                f"tensor dims {self.tensor.dims} do not match domain dims {self.domain.dims}"
            )

    @classmethod
    def on(cls, tensor: UnimodularTensor, ps: Sequence[ExponentLike]) -> "FormInstance":
        """The form of `tensor` normed on l_{p_1}^{n_1} x ... with n_k from the tensor."""
        return cls(tensor=tensor, domain=DomainSpec.from_lists(tensor.dims, ps))

    @property
    def m(self) -> int:
        return self.domain.m

    @property
    def dims(self) -> tuple[int, ...]:
        return self.domain.dims

    @property
    def ps(self) -> tuple[ExtendedExponent, ...]:
        return self.domain.ps

    @property
    def is_real(self) -> bool:
        return self.tensor.is_real
