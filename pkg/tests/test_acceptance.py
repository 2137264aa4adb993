"""Long-running checks of the experiments at full size.

These tests take minutes. They are skipped unless KSZFORMS_RUN_SLOW is set.
"""

import math
import os

import pytest

from kszforms.bounds import AR_REAL_CONSTANT
from kszforms.exponents import hl_lower_bound
from kszforms.models import EstimatorSettings, ExperimentConfig, FormInstance, RunRecord
from kszforms.services import ExperimentService, NormService
from kszforms.services.RecordService import dump_json
from tests.test_norm_service import P_PAIRS, reference_norm, sign_matrix

requires_slow = pytest.mark.skipif(
    not os.environ.get("KSZFORMS_RUN_SLOW"),
    reason="KSZFORMS_RUN_SLOW not set - skipping full-size experiments",
)


def _rows_json(record: RunRecord) -> str:
    return dump_json(record.results_dict()["rows"])


def _slope_config(ps: tuple[str, str]) -> ExperimentConfig:
    return ExperimentConfig(
        kind="slope", ps=ps, schedule=(4, 8, 16, 32), trials=200, seed=0,
        estimator=EstimatorSettings(threads=4),
    )


@requires_slow
class TestFullSizeExperiments:
    """Full-size experiment runs, each repeated to check byte-identical rows."""

    @pytest.fixture
    def service(self) -> ExperimentService:
        """Experiment service with default estimator settings on four threads."""
        return ExperimentService(EstimatorSettings(threads=4))

    def test_sup_ball_slope(self, service: ExperimentService) -> None:
        """Test that minimal l_inf x l_inf norms grow like n^{3/2}."""
        record = service.run(_slope_config(("inf", "inf")))
        slope = float(record.derived["slope"])  # type: ignore[arg-type]
        assert 1.25 <= slope <= 1.75
        assert _rows_json(service.run(_slope_config(("inf", "inf")))) == _rows_json(record)

    def test_three_halves_slope(self, service: ExperimentService) -> None:
        """Test that minimal l_3/2 x l_3/2 norms grow like n^{1/3}."""
        record = service.run(_slope_config(("3/2", "3/2")))
        slope = float(record.derived["slope"])  # type: ignore[arg-type]
        assert 0.18 <= slope <= 0.48
        assert _rows_json(service.run(_slope_config(("3/2", "3/2")))) == _rows_json(record)

    def test_default_conjecture_series(self, service: ExperimentService) -> None:
        """Test the default diagonal series end to end."""
        record = service.conjecture_series()
        assert record.derived["strictly_decreasing"] is True
        tail = float(record.derived["tail_slope"])  # type: ignore[arg-type]
        assert abs(tail + 1 / 6) <= 0.02
        assert _rows_json(service.conjecture_series()) == _rows_json(record)

    def test_default_constant_grid(self, service: ExperimentService) -> None:
        """Test that no Fourier corner of the default grid beats its bound."""
        record = service.constant_comparison()
        assert len(record.rows) == 5 * 5 * 4 * 4
        assert float(record.derived["max_ratio"]) <= 1 + 1e-6  # type: ignore[arg-type]
        assert record.derived["n1_one_min_ratio"] == pytest.approx(1.0)
        assert record.derived["reference_constant"] == pytest.approx(
            8 * math.sqrt(2 * math.log(9))
        )
        assert AR_REAL_CONSTANT > float(record.derived["max_ar_ratio"])  # type: ignore[arg-type]
        assert _rows_json(service.constant_comparison()) == _rows_json(record)

    def test_square_l2_fourier(self, service: ExperimentService) -> None:
        """Test that every square l_2 corner has ratio 1."""
        record = service.fourier_grid((1, 2, 4, 8, 16, 32), (32,), (2,), (2,))
        for row in record.rows:
            if row.values["n1"] == 32:
                assert row.values["ratio"] == pytest.approx(1.0)


@requires_slow
class TestEverySignMatrix:
    """Oracle agreement and lower-bound floors over all 3 x 3 sign matrices."""

    @pytest.mark.parametrize("ps", P_PAIRS)
    def test_agreement_and_floors(self, ps: tuple[str, str]) -> None:
        """Test multi-start against the reference norm and below it every certificate."""
        service = NormService(EstimatorSettings(starts=32))
        floor = hl_lower_bound(ps, 3) if all(p in ("2", "3", "inf") for p in ps) else None
        for index in range(256):
            form = FormInstance.on(sign_matrix(index), ps)
            lower = service.multi_start_estimate(form, seed=index).lower
            assert lower == pytest.approx(reference_norm(service, form), rel=1e-4), index
            assert service.basis_lower_bound(form) <= lower + 1e-9
            assert service.restriction_chain_bound(form) <= lower + 1e-9
            if floor is not None:
                assert lower >= floor - 1e-9
