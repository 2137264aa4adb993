"""Main Lab class - the public API."""

from pathlib import Path
from typing import Any

from .models.ExperimentConfig import ExperimentConfig
from .models.FormInstance import FormInstance
from .models.LabConfig import LabConfig
from .models.NormEstimate import NormEstimate
from .models.RunRecord import RunRecord
from .services.ExperimentService import ExperimentService
from .services.NormService import NormService
from .services.RecordService import RecordService


class Lab:
    """Norms and experiments for unimodular multilinear forms.

    Example:
        ```python
        from kszforms import Lab, LabConfig, fourier_matrix, FormInstance

        lab = Lab(LabConfig())
        form = FormInstance.on(fourier_matrix(8), ["2", "2"])
        print(lab.estimate(form).lower)  # 2.828427...
        ```

    Attributes:
        _config: Estimator and logging configuration.
        _norms: Norm service built from the estimator settings.
        _experiments: Experiment service built from the estimator settings.
        _records: Record service; run logs only when logging is enabled.
    """

    def __init__(self, config: LabConfig | None = None, cwd: Path | None = None) -> None:
        """Initialize the lab.

        Args:
            config: Configuration (defaults when omitted).
            cwd: Directory that relative run-log paths are resolved against.
        """
        self._config = config or LabConfig()
        self._norms = NormService(self._config.estimator)
        self._experiments = ExperimentService(self._config.estimator)

        output_dir: Path | None = None
        if self._config.logging.get("enabled", True):
            output_dir = (cwd or Path.cwd()) / self._config.logging.get("output_dir", ".kszforms")
        self._records = RecordService(output_dir=output_dir)

    @property
    def config(self) -> LabConfig:
        return self._config

    @property
    def norms(self) -> NormService:
        return self._norms

    @property
    def experiments(self) -> ExperimentService:
        return self._experiments

    @property
    def records(self) -> RecordService:
        return self._records

    def estimate(self, form: FormInstance, method: str = "auto", seed: int = 0) -> NormEstimate:
        """Estimate ||A|| with the given method (see NormService.estimate)."""
        return self._norms.estimate(form, method=method, seed=seed)

    def run(
        self, config: ExperimentConfig, invocation: dict[str, Any] | None = None
    ) -> RunRecord:
        """Run an experiment, logging it to a run directory when enabled.

        Args:
            config: The experiment to run.
            invocation: Resolved CLI invocation saved next to the record.

        Returns:
            The finished RunRecord.
        """
        run_id = self._records.start_run(invocation or {"config": config.to_dict()})
        record = self._experiments.run(config)
        if run_id is not None:
            self._records.save_record(run_id, record)
        return record
