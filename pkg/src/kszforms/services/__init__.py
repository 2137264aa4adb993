"""Services for kszforms."""

from .ExperimentService import ExperimentService, describe, slope_fit
from .NormService import ESTIMATE_METHODS, NormService
from .RecordService import RecordService

__all__ = [
    "ESTIMATE_METHODS",
    "ExperimentService",
    "NormService",
    "RecordService",
    "describe",
    "slope_fit",
]
