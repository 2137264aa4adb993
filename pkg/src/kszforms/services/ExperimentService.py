"""Seeded experiment drivers: minimal norms, slopes, conjecture ratios, Fourier scans."""

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import replace
from datetime import datetime
from fractions import Fraction
from importlib.metadata import PackageNotFoundError, version
from typing import Any, cast

import numpy as np

from ..bounds import (
    AR_REAL_CONSTANT,
    ar_bilinear_denominator,
    ar_upper_value,
    conjecture_denominator,
    conjecture_ratio_value,
    fourier_bound,
    theorem1_upper_value,
)
from ..defaults import (
    CONJECTURE_PS,
    DEFAULT_CONJECTURE_NS,
    DEFAULT_FOURIER_DIMS,
    DEFAULT_FOURIER_PS,
    EXHAUSTIVE_SEARCH_CAP,
)
from ..errors import ArgumentError, CapabilityError, DomainError
from ..exponents import ar_exponent, hl_lower_bound, theorem1_exponent
from ..models.DomainSpec import DomainSpec
from ..models.EstimatorSettings import EstimatorSettings
from ..models.ExperimentConfig import ExperimentConfig, FourierGrid
from ..models.ExtendedExponent import TWO, ExponentLike, ExtendedExponent, format_real
from ..models.FormInstance import FormInstance
from ..models.NormEstimate import NormEstimate
from ..models.RunRecord import RowValue, RunRecord, RunRow
from ..models.UnimodularTensor import Provenance, UnimodularTensor
from ..tensors import fourier_matrix, rademacher, restrict, steinhaus
from ..utils.parallel import ordered_map
from ..utils.seeding import split_seeds
from .NormService import NormService

logger = logging.getLogger(__name__)

THEORETICAL_CONJECTURE_SLOPE = Fraction(-1, 6)

# CSV columns per experiment kind, after the leading "dims" column
COLUMNS: dict[str, tuple[tuple[str, str], ...]] = {
    "min-norm-search": (
        ("min_norm", "smallest norm estimate over the trials (or the enumeration)"),
        ("method", "estimator that produced min_norm"),
        ("exact", "true when min_norm comes from an exact oracle"),
        ("best_seed", "seed (enumeration index) of the minimizing tensor"),
        ("hl_floor", "Hardy-Littlewood floor, empty unless every p >= 2"),
        ("theorem1_bound", "theorem1 bound value with C = 1"),
        ("ar_bound", "Albuquerque-Rezende bound value with C = 1"),
    ),
    "slope": (
        ("n", "common dimension of every slot"),
        ("min_norm", "smallest norm estimate over the trials"),
        ("method", "estimator that produced min_norm"),
        ("hl_floor", "Hardy-Littlewood floor, empty unless every p >= 2"),
        ("theorem1_bound", "theorem1 bound value with C = 1"),
        ("ar_bound", "Albuquerque-Rezende bound value with C = 1"),
    ),
    "conjecture-ratio": (
        ("N", "path parameter"),
        ("ratio", "theorem1_bound / conjecture_denominator"),
        ("theorem1_bound", "theorem1 bound value with C = 1"),
        ("conjecture_denominator", "conjectured sharp bound with C = 1"),
    ),
    "fourier-scan": (
        ("n1", "rows kept from the Fourier matrix"),
        ("n2", "columns kept from the Fourier matrix"),
        ("p1", "exponent of the first slot"),
        ("p2", "exponent of the second slot"),
        ("estimate", "norm estimate of the restricted Fourier form"),
        ("bound", "max(n1,n2)^(1/2) n1^(1/2-1/p1) n2^(1/2-1/p2)"),
        ("ratio", "estimate / bound"),
        ("ar_ratio", "estimate / ((n1^(1/2)+n2^(1/2)) n1^(1/2-1/p1) n2^(1/2-1/p2))"),
        ("method", "estimator that produced the estimate"),
    ),
}
COLUMNS["constant-one"] = COLUMNS["fourier-scan"]


def describe(kind: str) -> tuple[tuple[str, str], ...]:
    """CSV columns (name, meaning) of a record kind, "dims" first.

    Raises:
        ArgumentError: On an unknown kind.
    """
    if kind not in COLUMNS:
        raise ArgumentError(f"unknown experiment kind '{kind}'")
    return (("dims", "dimensions of the measured domain, AxBxC"),) + COLUMNS[kind]


def slope_fit(points: Sequence[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares line through (log n, log value).

    Returns:
        (slope, intercept, max absolute residual) in natural-log coordinates.

    Raises:
        ArgumentError: With fewer than two distinct n, or a value or n that is not positive.
    """
    ns = np.array([float(n) for n, _ in points])
    values = np.array([float(v) for _, v in points])
    if np.any(values <= 0) or np.any(ns <= 0):
        raise ArgumentError("slope fit needs positive n and positive values")
    if np.unique(ns).size < 2:
        raise ArgumentError("slope fit needs at least two distinct n")
    x = np.log(ns)
    y = np.log(values)
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.abs(y - (slope * x + intercept)).max())
    return float(slope), float(intercept), residual


def _code_version() -> str:
    try:
        return version("kszforms")
    except PackageNotFoundError:
        return "unknown"


def _floats(rows: Sequence[RunRow], key: str) -> list[float]:
    return [float(cast(float, row.values[key])) for row in rows]


def _sign_tensor(dims: tuple[int, ...], index: int) -> UnimodularTensor:
    # Bit b of the index sets the sign of row-major entry b + 1; entry 0 stays +1.
    size = math.prod(dims)
    bits = (index >> np.arange(size - 1, dtype=np.int64)) & 1
    entries = np.concatenate([[1.0], 1.0 - 2.0 * bits.astype(np.float64)])
    return UnimodularTensor(
        entries=entries.reshape(dims),
        field="real",
        provenance=Provenance(kind="enumeration", seed=index),
    )


class ExperimentService:
    """Runs experiments and assembles their RunRecords.

    Trials run on the configured number of threads with seeds split from the
    experiment seed up front; norms inside one trial run sequentially. Rows are
    therefore the same for every thread count.

    Attributes:
        _settings: Estimator settings for every norm computed.
        _norms: Norm service used by trials (single-threaded).
        _code_version: Version tag stamped on records.
    """

    def __init__(
        self, settings: EstimatorSettings | None = None, code_version: str | None = None
    ) -> None:
        self._settings = settings or EstimatorSettings()
        self._norms = NormService(replace(self._settings, threads=1))
        self._code_version = code_version or _code_version()

    def _with_settings(self, settings: EstimatorSettings) -> "ExperimentService":
        if settings == self._settings:
            return self
        return ExperimentService(settings, self._code_version)

    def min_norm_search(
        self,
        ps: Sequence[ExponentLike],
        n: int,
        trials: int = 1,
        seed: int = 0,
        field: str = "real",
        exhaustive: bool = False,
    ) -> tuple[UnimodularTensor, NormEstimate]:
        """The tensor of smallest norm among random draws or the full enumeration.

        Draws `trials` Rademacher (field "real") or Steinhaus (field "complex")
        tensors of shape (n,)*m and keeps the one whose norm estimate is smallest;
        ties go to the earliest trial. With `exhaustive`, enumerates every real
        sign tensor with first entry +1 instead (a global sign flip does not change
        the norm).

        Raises:
            ArgumentError: If trials < 1, n < 1 or field is unknown.
            CapabilityError: If exhaustive is asked for complex tensors or more
                than 2^20 sign tensors.
        """
        exponents = tuple(ExtendedExponent.of(p) for p in ps)
        if not exponents:
            raise ArgumentError("exponent list must not be empty")
        if trials < 1:
            raise ArgumentError(f"trials must be at least 1, got {trials}")
        if n < 1:
            raise ArgumentError(f"n must be positive, got {n}")
        if field not in ("real", "complex"):
            raise ArgumentError(f"field must be 'real' or 'complex', got '{field}'")
        dims = (n,) * len(exponents)

        if exhaustive:
            if field != "real":
                raise CapabilityError("exhaustive search enumerates real signs only")
            space = 2 ** math.prod(dims)
            if space > EXHAUSTIVE_SEARCH_CAP:
                raise CapabilityError(
                    f"exhaustive search over {space} sign tensors exceeds the cap of "
                    f"{EXHAUSTIVE_SEARCH_CAP}"
                )
            indices: list[int] = list(range(space // 2))
            logger.info("enumerating %d sign tensors of shape %s", len(indices), dims)

            def make(index: int) -> UnimodularTensor:
                return _sign_tensor(dims, index)

        else:
            indices = split_seeds(seed, trials)
            logger.info("drawing %d %s tensors of shape %s", trials, field, dims)
            generator = rademacher if field == "real" else steinhaus

            def make(index: int) -> UnimodularTensor:
                return generator(dims, index)

        def trial(index: int) -> tuple[UnimodularTensor, NormEstimate]:
            tensor = make(index)
            form = FormInstance.on(tensor, exponents)
            return tensor, self._norms.estimate(form, "auto", seed=index)

        results = ordered_map(trial, indices, self._settings.threads)
        best = results[0]
        for result in results[1:]:
            if result[1].lower < best[1].lower:
                best = result
        return best

    def _search_values(
        self, ps: tuple[ExtendedExponent, ...], n: int, estimate: NormEstimate
    ) -> dict[str, RowValue]:
        domain = DomainSpec.uniform(ps, n)
        floor = hl_lower_bound(ps, n) if all(p >= TWO for p in ps) else None
        return {
            "min_norm": estimate.lower,
            "method": estimate.method,
            "hl_floor": floor,
            "theorem1_bound": theorem1_upper_value(domain),
            "ar_bound": ar_upper_value(domain),
        }

    def _exponent_values(self, ps: tuple[ExtendedExponent, ...]) -> dict[str, RowValue]:
        return {
            "theorem1_exponent": format_real(theorem1_exponent(ps)),
            "ar_exponent": format_real(ar_exponent(ps)),
        }

    def run_min_norm_search(self, config: ExperimentConfig) -> RunRecord:
        n = config.schedule[0]
        tensor, estimate = self.min_norm_search(
            config.ps, n, config.trials, config.seed, config.field, config.exhaustive
        )
        values = self._search_values(config.ps, n, estimate)
        values["exact"] = estimate.is_exact
        values["best_seed"] = tensor.provenance.seed
        row = RunRow(dims=tensor.dims, values=values)
        return self._record(config, [row], self._exponent_values(config.ps))

    def run_slope(self, config: ExperimentConfig) -> RunRecord:
        """Minimal norms across the dimension schedule and their log-log slope.

        Each n gets its own child seed of the experiment seed.
        """
        seeds = split_seeds(config.seed, len(config.schedule))
        rows: list[RunRow] = []
        points: list[tuple[float, float]] = []
        for n, seed in zip(config.schedule, seeds):
            _, estimate = self.min_norm_search(
                config.ps, n, config.trials, seed, config.field, config.exhaustive
            )
            values: dict[str, RowValue] = {"n": n, **self._search_values(config.ps, n, estimate)}
            rows.append(RunRow(dims=(n,) * config.m, values=values))
            points.append((n, estimate.lower))
            logger.info("slope: n = %d, min norm %.6g", n, points[-1][1])
        slope, intercept, residual = slope_fit(points)
        derived: dict[str, RowValue] = {
            "slope": slope,
            "intercept": intercept,
            "residual": residual,
            **self._exponent_values(config.ps),
        }
        return self._record(config, rows, derived)

    def conjecture_series(
        self, path: str = "diagonal", ns: Sequence[int] = DEFAULT_CONJECTURE_NS
    ) -> RunRecord:
        """Ratio of the theorem1 bound to the conjectured bound along a dimension path.

        "diagonal" uses dims (1, N, N), "uniform" (N, N, N), both on
        l_{3/2} x l_3 x l_3. Derived values hold the least-squares slope over the
        whole path, the slope of its last segment, and the asymptotic -1/6.
        """
        config = ExperimentConfig(
            kind="conjecture-ratio", ps=CONJECTURE_PS, schedule=tuple(ns), path=path,
            estimator=self._settings,
        )
        return self.run_conjecture(config)

    def run_conjecture(self, config: ExperimentConfig) -> RunRecord:
        rows: list[RunRow] = []
        points: list[tuple[float, float]] = []
        for big_n in config.schedule:
            dims = (1, big_n, big_n) if config.path == "diagonal" else (big_n,) * 3
            domain = DomainSpec.from_lists(dims, CONJECTURE_PS)
            ratio = conjecture_ratio_value(domain)
            values: dict[str, RowValue] = {
                "N": big_n,
                "ratio": ratio,
                "theorem1_bound": theorem1_upper_value(domain),
                "conjecture_denominator": conjecture_denominator(domain),
            }
            rows.append(RunRow(dims=dims, values=values))
            points.append((big_n, ratio))
        slope, intercept, residual = slope_fit(points)
        (n_a, r_a), (n_b, r_b) = points[-2], points[-1]
        ratios = [ratio for _, ratio in points]
        derived: dict[str, RowValue] = {
            "slope": slope,
            "intercept": intercept,
            "residual": residual,
            "tail_slope": math.log(r_b / r_a) / math.log(n_b / n_a),
            "theoretical_slope": format_real(THEORETICAL_CONJECTURE_SLOPE),
            "strictly_decreasing": all(b < a for a, b in zip(ratios, ratios[1:])),
        }
        return self._record(config, rows, derived)

    def _fourier_row(
        self, n1: int, n2: int, p1: ExtendedExponent, p2: ExtendedExponent, seed: int
    ) -> RunRow:
        bound = fourier_bound(n1, n2, p1, p2)
        denominator = ar_bilinear_denominator(n1, n2, p1, p2)
        n = max(n1, n2)
        form = restrict(FormInstance.on(fourier_matrix(n), (p1, p2)), (n1, n2))
        estimate = self._norms.estimate(form, "auto", seed=seed)
        value = estimate.lower
        return RunRow(
            dims=(n1, n2),
            values={
                "n1": n1,
                "n2": n2,
                "p1": p1.to_json(),
                "p2": p2.to_json(),
                "estimate": value,
                "bound": bound,
                "ratio": value / bound,
                "ar_ratio": value / denominator,
                "method": estimate.method,
            },
        )

    def _fourier_rows(self, grid: FourierGrid, seed: int) -> list[RunRow]:
        cells = list(itertools.product(grid.n1s, grid.n2s, grid.p1s, grid.p2s))
        seeds = split_seeds(seed, len(cells))

        def scan(item: tuple[tuple[int, int, ExtendedExponent, ExtendedExponent], int]) -> RunRow:
            (n1, n2, p1, p2), cell_seed = item
            return self._fourier_row(n1, n2, p1, p2, cell_seed)

        return ordered_map(scan, list(zip(cells, seeds)), self._settings.threads)

    def fourier_scan(
        self, n1: int, n2: int, p1: ExponentLike, p2: ExponentLike, seed: int = 0
    ) -> RunRecord:
        """Norm of the n1 x n2 corner of the Fourier matrix against its bound.

        The matrix has size max(n1, n2). The record holds one row with the
        estimate, the bound, their ratio (at most 1) and the ratio to the
        bilinear Albuquerque-Rezende denominator.

        Raises:
            DomainError: If p1 or p2 is below 2.
        """
        grid = FourierGrid(n1s=(n1,), n2s=(n2,), p1s=(ExtendedExponent.of(p1),),
                           p2s=(ExtendedExponent.of(p2),))
        config = ExperimentConfig(kind="fourier-scan", grid=grid, seed=seed,
                                  estimator=self._settings)
        return self.run_fourier(config)

    def fourier_grid(
        self,
        n1s: Sequence[int],
        n2s: Sequence[int],
        p1s: Sequence[ExponentLike],
        p2s: Sequence[ExponentLike],
        seed: int = 0,
    ) -> RunRecord:
        """fourier_scan over every (n1, n2, p1, p2) of a grid, in one record."""
        grid = FourierGrid(
            n1s=tuple(n1s), n2s=tuple(n2s),
            p1s=tuple(ExtendedExponent.of(p) for p in p1s),
            p2s=tuple(ExtendedExponent.of(p) for p in p2s),
        )
        config = ExperimentConfig(kind="fourier-scan", grid=grid, seed=seed,
                                  estimator=self._settings)
        return self.run_fourier(config)

    def run_fourier(self, config: ExperimentConfig) -> RunRecord:
        assert config.grid is not None
        below = [str(p) for p in config.grid.p1s + config.grid.p2s if p < TWO]
        if below:
            raise DomainError(f"Fourier scans need p >= 2, got {', '.join(below)}")
        rows = self._fourier_rows(config.grid, config.seed)
        derived: dict[str, RowValue] = {"max_ratio": max(_floats(rows, "ratio"))}
        return self._record(config, rows, derived)

    def constant_comparison(
        self, grid: FourierGrid | None = None, seed: int = 0
    ) -> RunRecord:
        """The real-sign reference constant next to the Fourier construction's ratios.

        Derived values: the reference constant 8 sqrt(2 ln 9), the largest ratio
        and AR ratio over the grid, and the extreme ratios of the n1 = 1 rows
        (which equal 1).
        """
        grid = grid or FourierGrid(
            n1s=DEFAULT_FOURIER_DIMS, n2s=DEFAULT_FOURIER_DIMS,
            p1s=tuple(ExtendedExponent.parse(p) for p in DEFAULT_FOURIER_PS),
            p2s=tuple(ExtendedExponent.parse(p) for p in DEFAULT_FOURIER_PS),
        )
        config = ExperimentConfig(kind="constant-one", grid=grid, seed=seed,
                                  estimator=self._settings)
        return self.run_constant(config)

    def run_constant(self, config: ExperimentConfig) -> RunRecord:
        record = self.run_fourier(config)
        rows = record.rows
        ratios = _floats(rows, "ratio")
        ar_ratios = _floats(rows, "ar_ratio")
        edge = [r for row, r in zip(rows, ratios) if row.values["n1"] == 1]
        derived: dict[str, RowValue] = {
            "reference_constant": AR_REAL_CONSTANT,
            "max_ratio": max(ratios),
            "max_ar_ratio": max(ar_ratios),
            "n1_one_min_ratio": min(edge) if edge else None,
            "n1_one_max_ratio": max(edge) if edge else None,
        }
        return self._record(config, rows, derived)

    def run(self, config: ExperimentConfig) -> RunRecord:
        """Run any experiment config with its own estimator settings."""
        service = self._with_settings(config.estimator)
        started_at = datetime.now().isoformat()
        runners: dict[str, Any] = {
            "min-norm-search": service.run_min_norm_search,
            "slope": service.run_slope,
            "conjecture-ratio": service.run_conjecture,
            "fourier-scan": service.run_fourier,
            "constant-one": service.run_constant,
        }
        record: RunRecord = runners[config.kind](config)
        record.metadata["started_at"] = started_at
        return record

    def _record(
        self, config: ExperimentConfig, rows: list[RunRow], derived: dict[str, RowValue]
    ) -> RunRecord:
        if len(rows) != config.expected_rows():
            raise ArgumentError(
                f"{config.kind} produced {len(rows)} rows, expected {config.expected_rows()}"
            )
        return RunRecord(
            config=config,
            rows=rows,
            derived=derived,
            code_version=self._code_version,
            metadata={"completed_at": datetime.now().isoformat()},
        )
