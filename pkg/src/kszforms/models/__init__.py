"""Data models for kszforms."""

# ExtendedExponent first: utils.parsing imports it back from this package
from .ExtendedExponent import (  # isort: skip
    INF, ONE, TWO, ExactReal, ExponentLike, ExtendedExponent,
)
from .DomainSpec import DomainSpec
from .EstimatorSettings import EstimatorSettings
from .ExperimentConfig import ExperimentConfig, FourierGrid
from .ExponentProfile import ExponentProfile
from .FormInstance import FormInstance
from .Invocation import Invocation
from .LabConfig import LabConfig
from .NormEstimate import NormEstimate
from .RunRecord import RunRecord, RunRow
from .UnimodularTensor import Provenance, UnimodularTensor

__all__ = [
    "INF",
    "ONE",
    "TWO",
    "DomainSpec",
    "EstimatorSettings",
    "ExactReal",
    "ExperimentConfig",
    "ExponentLike",
    "ExponentProfile",
    "ExtendedExponent",
    "FormInstance",
    "FourierGrid",
    "Invocation",
    "LabConfig",
    "NormEstimate",
    "Provenance",
    "RunRecord",
    "RunRow",
    "UnimodularTensor",
]
