"""
kszforms - unimodular multilinear forms on mixed l_p domains.

Exponent formulas for the smallest norms of sign tensors, generators for random
and Fourier tensors, operator-norm estimators with exact oracles, and seeded
experiments around them.

Example:
    ```python
    from kszforms import FormInstance, NormService, fourier_matrix, profile

    print(profile(["3/2", "3", "3"]).theorem1)  # 5/6

    form = FormInstance.on(fourier_matrix(8), ["2", "2"])
    print(NormService().estimate(form).lower)  # 2.8284271247...
    ```
"""

from importlib.metadata import version

__version__ = version("kszforms")

from .models import (  # noqa: E402
    DomainSpec,
    EstimatorSettings,
    ExperimentConfig,
    ExponentProfile,
    ExtendedExponent,
    FormInstance,
    FourierGrid,
    LabConfig,
    NormEstimate,
    RunRecord,
    UnimodularTensor,
)
from .exponents import (  # noqa: E402
    ar_exponent,
    bayart_exponent,
    classical_ksz_exponent,
    conjugate,
    hl_lower_bound,
    profile,
    theorem1_exponent,
)
from .lab import Lab  # noqa: E402
from .services import ExperimentService, NormService, RecordService  # noqa: E402
from .tensors import (  # noqa: E402
    evaluate,
    fourier_matrix,
    orthogonality_defect,
    partial_coefficients,
    rademacher,
    restrict,
    steinhaus,
)

__all__ = [
    "DomainSpec",
    "EstimatorSettings",
    "ExperimentConfig",
    "ExperimentService",
    "ExponentProfile",
    "ExtendedExponent",
    "FormInstance",
    "FourierGrid",
    "Lab",
    "LabConfig",
    "NormEstimate",
    "NormService",
    "RecordService",
    "RunRecord",
    "UnimodularTensor",
    "ar_exponent",
    "bayart_exponent",
    "classical_ksz_exponent",
    "conjugate",
    "evaluate",
    "fourier_matrix",
    "hl_lower_bound",
    "orthogonality_defect",
    "partial_coefficients",
    "profile",
    "rademacher",
    "restrict",
    "steinhaus",
    "theorem1_exponent",
]
