"""Operator norms of unimodular forms on products of l_p balls."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..defaults import (
    DEFAULT_GRID_POINTS,
    POWER_MAX_ITER,
    POWER_TOL,
    STRUCTURED_START_LIMIT,
    UNIT_START_TOL,
    VERTEX_BLOCK_ROWS,
)
from ..errors import ArgumentError, CapabilityError
from ..lp_geometry import (
    as_vector,
    ball_sample,
    basis_vector,
    duality_maximizer,
    lp_norm,
    lp_norm_rows,
    normalize,
)
from ..models.EstimatorSettings import EstimatorSettings
from ..models.ExtendedExponent import ONE, TWO, ExtendedExponent
from ..models.FormInstance import FormInstance
from ..models.NormEstimate import NormEstimate
from ..tensors import evaluate, freeze, partial_coefficients
from ..utils.parallel import ordered_map
from ..utils.seeding import split_seeds

logger = logging.getLogger(__name__)

ESTIMATE_METHODS = ("auto", "alternating", "vertex", "sv", "basis")

Start = list[NDArray[Any]]


@dataclass(frozen=True)
class _VertexPlan:
    """Which slot is solved by duality and which are enumerated."""

    free: int
    slots: tuple[int, ...]
    sizes: tuple[int, ...]
    count: int


def _vertex_candidates(n: int, p: ExtendedExponent, index: NDArray[np.int64]) -> NDArray[Any]:
    # Extreme points up to sign: +-1 vectors with first coordinate +1, or basis vectors.
    if p.is_infinite:
        bits = (index[:, None] >> np.arange(n - 1, dtype=np.int64)) & 1
        signs = 1.0 - 2.0 * bits.astype(np.float64)
        return np.hstack([np.ones((index.size, 1)), signs])
    return np.eye(n)[index]


def _sphere_grid(n: int, points: int) -> NDArray[np.float64]:
    """Directions covering the real unit sphere of R^n up to sign, n <= 3."""
    if n == 1:
        return np.ones((1, 1))
    if n == 2:
        theta = np.linspace(0.0, math.pi, points, endpoint=False)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    side = max(2, math.isqrt(points))
    polar = np.linspace(0.0, math.pi, side)
    azimuth = np.linspace(0.0, math.pi, side, endpoint=False)
    t, f = np.meshgrid(polar, azimuth, indexing="ij")
    return np.column_stack(
        [(np.sin(t) * np.cos(f)).ravel(), (np.sin(t) * np.sin(f)).ravel(), np.cos(t).ravel()]
    )


class NormService:
    """Brackets ||A|| = sup |A(x_1, ..., x_m)| over the product of unit balls.

    Real-sign tensors are normed over real vectors and complex tensors over
    complex vectors. Exact oracles cover l_2 x l_2 (singular value), slots with
    p in {1, inf} around one free slot (vertex enumeration) and forms whose slots
    all but one have p = 1 or n = 1 (basis certificate). Everything else gets
    multi-start alternating ascent, which certifies a lower bound only.

    Attributes:
        _settings: Starts, tolerances, enumeration cap and worker count.
    """

    def __init__(self, settings: EstimatorSettings | None = None) -> None:
        self._settings = settings or EstimatorSettings()

    @property
    def settings(self) -> EstimatorSettings:
        return self._settings

    def _check_start(self, form: FormInstance, start: Sequence[ArrayLike]) -> Start:
        if len(start) != form.m:
            raise ArgumentError(f"expected {form.m} start vectors, got {len(start)}")
        vectors = [as_vector(v) for v in start]
        complex_field = not form.is_real or any(np.iscomplexobj(v) for v in vectors)
        dtype = np.complex128 if complex_field else np.float64
        checked: Start = []
        for k, (v, n, p) in enumerate(zip(vectors, form.dims, form.ps)):
            if v.size != n:
                raise ArgumentError(f"start vector for slot {k} has length {v.size}, expected {n}")
            norm = lp_norm(v, p)
            if abs(norm - 1.0) > UNIT_START_TOL:
                raise ArgumentError(
                    f"start vector for slot {k} is not a unit vector of l_{p} (norm {norm:.12g})"
                )
            checked.append(v.astype(dtype))
        return checked

    def alternating_ascent(
        self,
        form: FormInstance,
        start: Sequence[ArrayLike],
        tol: float | None = None,
        max_iter: int | None = None,
        first_slot: int = 0,
    ) -> NormEstimate:
        """Cyclic exact maximization over one slot at a time.

        Each step replaces slot k by the duality maximizer of its partial
        coefficients, which also rotates the value onto the nonnegative reals.
        A step is kept only if it does not lower |A|, so the recorded history is
        nondecreasing. Stops when a full cycle gains at most tol * value.

        Args:
            form: The form to maximize.
            start: One unit vector per slot.
            tol: Relative gain per cycle counted as converged.
            max_iter: Maximum number of cycles.
            first_slot: Slot updated first in every cycle.

        Returns:
            NormEstimate with method "alternating"; `lower` is |A(witness)|.

        Raises:
            ArgumentError: If a start vector has the wrong length or is not a unit vector.
        """
        tol = self._settings.tol if tol is None else tol
        max_iter = self._settings.max_iter if max_iter is None else max_iter
        if not tol > 0:
            raise ArgumentError(f"tol must be positive, got {tol}")
        if max_iter < 1:
            raise ArgumentError(f"max_iter must be at least 1, got {max_iter}")
        vectors = self._check_start(form, start)

        value = abs(evaluate(form, vectors))
        history = [value]
        order = [(first_slot + j) % form.m for j in range(form.m)]
        converged = False
        cycles = 0
        for cycles in range(1, max_iter + 1):
            before = value
            for k in order:
                coefficients = partial_coefficients(form, vectors, k)
                x, candidate = duality_maximizer(coefficients, form.ps[k])
                if candidate >= value:
                    vectors[k] = x
                    value = candidate
                history.append(value)
            if value - before <= tol * value:
                converged = True
                break

        lower = abs(evaluate(form, vectors))
        state = "converged" if converged else "stopped"
        logger.debug("ascent %s after %d cycles at %.12g", state, cycles, lower)
        return NormEstimate(
            lower=lower,
            witness=tuple(vectors),
            method="alternating",
            iterations=cycles,
            converged=converged,
            history=tuple(history),
        )

    def _structured_starts(self, form: FormInstance) -> list[tuple[Start, int]]:
        real = form.is_real
        ones = [normalize(np.ones(n), p) for n, p in zip(form.dims, form.ps)]
        witness, slot = self._basis_witness(form)
        starts: list[tuple[Start, int]] = [(ones, 0), (witness, (slot + 1) % form.m)]
        if form.m == 1:
            return starts
        for k, n in enumerate(form.dims):
            if n > STRUCTURED_START_LIMIT:
                continue
            for j in range(n):
                vectors = list(ones)
                vectors[k] = basis_vector(n, j, real=real)
                starts.append((vectors, (k + 1) % form.m))
        return starts

    def _random_starts(self, form: FormInstance, count: int, seed: int) -> list[tuple[Start, int]]:
        seeds = split_seeds(seed, count * form.m)
        starts: list[tuple[Start, int]] = []
        for i in range(count):
            vectors = [
                ball_sample(n, p, seeds[i * form.m + k], real=form.is_real)
                for k, (n, p) in enumerate(zip(form.dims, form.ps))
            ]
            starts.append((vectors, 0))
        return starts

    def multi_start_estimate(
        self,
        form: FormInstance,
        num_starts: int | None = None,
        seed: int = 0,
        tol: float | None = None,
        max_iter: int | None = None,
    ) -> NormEstimate:
        """Best of many alternating ascent runs.

        Runs start from the all-ones direction, the basis certificate's witness,
        every basis vector of each slot with at most 8 coordinates, and
        `num_starts` random points of the ball product split from `seed`. The
        largest lower bound wins; ties go to the earliest run.

        Raises:
            ArgumentError: If num_starts < 1.
        """
        num_starts = self._settings.starts if num_starts is None else num_starts
        if num_starts < 1:
            raise ArgumentError(f"num_starts must be at least 1, got {num_starts}")
        runs = self._structured_starts(form) + self._random_starts(form, num_starts, seed)

        def run(item: tuple[Start, int]) -> NormEstimate:
            start, first_slot = item
            return self.alternating_ascent(form, start, tol, max_iter, first_slot=first_slot)

        results = ordered_map(run, runs, self._settings.threads)
        best = results[0]
        for result in results[1:]:
            if result.lower > best.lower:
                best = result
        logger.debug("multi-start over %d runs: %.12g", len(results), best.lower)
        return replace(best, starts=len(results))

    def _vertex_plan(self, form: FormInstance) -> _VertexPlan:
        if not form.is_real:
            raise CapabilityError("vertex oracle requires real signs")
        finite = [k for k, p in enumerate(form.ps) if not (p.is_infinite or p == ONE)]
        if len(finite) > 1:
            raise CapabilityError(
                f"vertex oracle needs every slot but one to have p = 1 or p = inf; "
                f"slots {finite} do not"
            )

        def cost(k: int) -> int:
            n = form.dims[k]
            return 2 ** (n - 1) if form.ps[k].is_infinite else n

        if finite:
            free = finite[0]
        else:
            free = max(range(form.m), key=lambda k: (cost(k), -k))
        slots = tuple(k for k in range(form.m) if k != free)
        sizes = tuple(cost(k) for k in slots)
        count = math.prod(sizes)
        if count > self._settings.vertex_cap:
            raise CapabilityError(
                f"vertex enumeration needs {count} evaluations, over the cap of "
                f"{self._settings.vertex_cap}"
            )
        return _VertexPlan(free=free, slots=slots, sizes=sizes, count=count)

    def exact_vertex_norm(self, form: FormInstance) -> NormEstimate:
        """Exact norm by enumerating extreme points of every slot but one.

        A multilinear form attains its norm at extreme points of the balls. Slots
        with p = inf contribute their +-1 vectors (first coordinate fixed to +1,
        since flipping a whole slot only flips the sign of A), slots with p = 1
        their basis vectors. The remaining slot is solved by duality.

        Raises:
            CapabilityError: If the tensor is complex, two slots have p outside
                {1, inf}, or the enumeration exceeds the configured cap.
        """
        plan = self._vertex_plan(form)
        free_p = form.ps[plan.free]
        moved = np.moveaxis(form.tensor.entries, plan.free, -1)
        logger.debug("vertex enumeration: %d evaluations, free slot %d", plan.count, plan.free)

        best_value = -1.0
        best_index = 0
        for offset in range(0, plan.count, VERTEX_BLOCK_ROWS):
            flat = np.arange(offset, min(offset + VERTEX_BLOCK_ROWS, plan.count), dtype=np.int64)
            if not plan.slots:
                rows = moved.reshape(1, -1)
            else:
                indices = np.unravel_index(flat, plan.sizes)
                rows: Any = None
                for k, index in zip(plan.slots, indices):
                    vectors = _vertex_candidates(form.dims[k], form.ps[k], index.astype(np.int64))
                    if rows is None:
                        rows = np.tensordot(vectors, moved, axes=(1, 0))
                    else:
                        rows = np.einsum("bj...,bj->b...", rows, vectors)
            norms = lp_norm_rows(rows, free_p.conjugate())
            j = int(np.argmax(norms))
            if norms[j] > best_value:
                best_value = float(norms[j])
                best_index = offset + j

        witness: list[NDArray[Any] | None] = [None] * form.m
        if plan.slots:
            chosen = np.unravel_index(best_index, plan.sizes)
            for k, index in zip(plan.slots, chosen):
                single = np.array([int(index)], dtype=np.int64)
                witness[k] = _vertex_candidates(form.dims[k], form.ps[k], single)[0]
        coefficients = partial_coefficients(form, witness, plan.free)
        witness[plan.free], _ = duality_maximizer(coefficients, free_p)

        vectors = tuple(v for v in witness if v is not None)
        lower = abs(evaluate(form, vectors))
        return NormEstimate(
            lower=lower,
            witness=vectors,
            method="vertex-exact",
            upper=max(lower, best_value),
            iterations=plan.count,
        )

    def bilinear_l2_norm(self, form: FormInstance) -> NormEstimate:
        """Largest singular value of the coefficient matrix, by power iteration.

        Iterates x <- M^H M x / ||M^H M x|| from a seeded random start until
        ||Mx|| changes by at most 1e-10 relative (cap 10^4 iterations). The
        converged value is returned as both lower and upper.

        Raises:
            ArgumentError: Unless m = 2 and both exponents are 2.
        """
        if form.m != 2 or any(p != TWO for p in form.ps):
            raise ArgumentError(
                f"singular-value oracle needs m = 2 and p = (2, 2), got ps "
                f"{tuple(str(p) for p in form.ps)}"
            )
        matrix = form.tensor.entries
        x = ball_sample(form.dims[1], TWO, seed=0, real=form.is_real)
        ratio_old = math.inf
        converged = False
        iteration = 0
        for iteration in range(1, POWER_MAX_ITER + 1):
            y = matrix @ x
            ratio = float(np.linalg.norm(y))
            if abs(ratio - ratio_old) <= POWER_TOL * ratio:
                converged = True
                break
            ratio_old = ratio
            z = matrix.conj().T @ y
            x = z / np.linalg.norm(z)

        u, _ = duality_maximizer(matrix @ x, TWO)
        lower = abs(evaluate(form, [u, x]))
        logger.debug("power iteration: %d iterations, %.12g", iteration, lower)
        return NormEstimate(
            lower=lower,
            witness=(u, x),
            method="singular-value",
            upper=lower,
            iterations=iteration,
            converged=converged,
        )

    def _basis_best(self, form: FormInstance) -> tuple[float, int, int]:
        # (fiber norm, slot, fiber row) of the best basis-vector fiber, first on ties
        best = (-1.0, 0, 0)
        for k, p in enumerate(form.ps):
            fibers = np.moveaxis(form.tensor.entries, k, -1).reshape(-1, form.dims[k])
            norms = lp_norm_rows(fibers, p.conjugate())
            row = int(np.argmax(norms))
            if norms[row] > best[0]:
                best = (float(norms[row]), k, row)
        return best

    def _basis_witness(self, form: FormInstance) -> tuple[Start, int]:
        _, slot, row = self._basis_best(form)
        other_dims = tuple(n for j, n in enumerate(form.dims) if j != slot)
        indices = np.unravel_index(row, other_dims) if other_dims else ()
        witness: list[NDArray[Any] | None] = [None] * form.m
        for j, index in zip((j for j in range(form.m) if j != slot), indices):
            witness[j] = basis_vector(form.dims[j], int(index), real=form.is_real)
        coefficients = partial_coefficients(form, witness, slot)
        witness[slot], _ = duality_maximizer(coefficients, form.ps[slot])
        return [v for v in witness if v is not None], slot

    def basis_lower_bound(self, form: FormInstance) -> float:
        """max over slots k and basis indices of the other slots of ||fiber||_{p_k*}.

        Freezing every slot but k at basis vectors leaves a linear form whose norm
        on l_{p_k} is the l_{p_k*} norm of the fiber, so each value is <= ||A||.
        """
        return self._basis_best(form)[0]

    def _basis_exact(self, form: FormInstance) -> bool:
        # Exact when some slot k has every other slot at p = 1 or n = 1.
        return any(
            all(p == ONE or n == 1 for j, (n, p) in enumerate(form.domain.factors) if j != k)
            for k in range(form.m)
        )

    def basis_certificate_estimate(self, form: FormInstance) -> NormEstimate:
        """The basis certificate with its witness; exact when `_basis_exact` holds.

        Unit balls of l_1 have the (phased) basis vectors as extreme points and
        one-dimensional balls are phase circles, so in that case the best fiber
        is the norm.
        """
        value = self.basis_lower_bound(form)
        witness, _ = self._basis_witness(form)
        lower = abs(evaluate(form, witness))
        exact = self._basis_exact(form)
        return NormEstimate(
            lower=lower,
            witness=tuple(witness),
            method="basis-certificate",
            upper=max(lower, value) if exact else None,
        )

    def restriction_lower_bound(self, form: FormInstance, k: int, seed: int = 0) -> float:
        """Norm estimate of the (m-1)-linear form left by freezing slot k at e_1.

        Raises:
            ArgumentError: If m = 1 or k is out of range.
        """
        if form.m == 1:
            raise ArgumentError("restriction needs a form with at least two slots")
        if not 0 <= k < form.m:
            raise ArgumentError(f"slot {k} out of range for m = {form.m}")
        _, reduced = freeze(form, k, basis_vector(form.dims[k], 0, real=True))
        assert reduced is not None
        return self.multi_start_estimate(reduced, seed=seed).lower

    def restriction_chain_bound(self, form: FormInstance, seed: int = 0) -> float:
        """Best restriction_lower_bound over every slot."""
        return max(self.restriction_lower_bound(form, k, seed=seed) for k in range(form.m))

    def grid_search_norm(self, form: FormInstance, points: int | None = None) -> NormEstimate:
        """Brute-force norm of a real bilinear form.

        The smaller slot (dimension at most 3) runs over a dense grid of
        directions rescaled onto its l_p sphere; the other slot is solved exactly
        by duality at every grid point. Accuracy is limited by the grid, so the
        result is a lower bound.

        Raises:
            ArgumentError: If m != 2.
            CapabilityError: If the tensor is complex or both dimensions exceed 3.
        """
        if form.m != 2:
            raise ArgumentError(f"grid search handles bilinear forms only, got m = {form.m}")
        if not form.is_real:
            raise CapabilityError("grid search requires real signs")
        candidates = [k for k in (0, 1) if form.dims[k] <= 3]
        if not candidates:
            raise CapabilityError(
                f"grid search needs a slot of dimension at most 3, got {form.dims}"
            )
        k = min(candidates, key=lambda j: (form.dims[j], j))
        other = 1 - k
        points = DEFAULT_GRID_POINTS if points is None else points
        if points < 1:
            raise ArgumentError(f"points must be positive, got {points}")

        grid = _sphere_grid(form.dims[k], points)
        grid = grid / lp_norm_rows(grid, form.ps[k])[:, None]
        matrix = np.moveaxis(form.tensor.entries, k, 0)
        coefficients = grid @ matrix
        norms = lp_norm_rows(coefficients, form.ps[other].conjugate())
        best = int(np.argmax(norms))

        witness: list[NDArray[Any]] = [grid[best], grid[best]]
        witness[other], _ = duality_maximizer(coefficients[best], form.ps[other])
        lower = abs(evaluate(form, witness))
        return NormEstimate(
            lower=lower, witness=tuple(witness), method="grid", iterations=grid.shape[0]
        )

    def _vertex_applicable(self, form: FormInstance) -> bool:
        try:
            self._vertex_plan(form)
        except CapabilityError:
            return False
        return True

    def choose_method(self, form: FormInstance) -> str:
        """The strongest applicable oracle: sv, then basis, then vertex, else alternating."""
        if form.m == 2 and all(p == TWO for p in form.ps):
            return "sv"
        if self._basis_exact(form):
            return "basis"
        if self._vertex_applicable(form):
            return "vertex"
        return "alternating"

    def estimate(self, form: FormInstance, method: str = "auto", seed: int = 0) -> NormEstimate:
        """Dispatch to one estimator.

        Args:
            form: The form to norm.
            method: "auto", "alternating", "vertex", "sv" or "basis".
            seed: Seed of the random starts (alternating only).

        Raises:
            ArgumentError: On an unknown method or a shape the method rejects.
            CapabilityError: If the requested oracle does not apply.
        """
        if method not in ESTIMATE_METHODS:
            raise ArgumentError(f"method must be one of {ESTIMATE_METHODS}, got '{method}'")
        if method == "auto":
            method = self.choose_method(form)
            logger.debug("auto method for dims %s: %s", form.dims, method)
        if method == "sv":
            return self.bilinear_l2_norm(form)
        if method == "vertex":
            return self.exact_vertex_norm(form)
        if method == "basis":
            return self.basis_certificate_estimate(form)
        return self.multi_start_estimate(form, seed=seed)
