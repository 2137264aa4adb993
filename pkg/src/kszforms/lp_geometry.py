"""l_p norms and the exact duality maximizer on l_p^n balls."""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import ArgumentError
from .models.ExtendedExponent import ExponentLike, ExtendedExponent
from .utils.seeding import make_rng

Vector = NDArray[np.float64] | NDArray[np.complex128]


def as_vector(v: ArrayLike) -> Vector:
    """A 1-d float64 (real input) or complex128 (complex input) copy of `v`."""
    array = np.asarray(v)
    if np.iscomplexobj(array):
        return np.array(array, dtype=np.complex128).reshape(-1)
    return np.array(array, dtype=np.float64).reshape(-1)


def lp_norm(v: ArrayLike, p: ExponentLike) -> float:
    """(sum_j |v_j|^p)^{1/p}, or max_j |v_j| when p = inf.

    Sums are accumulated with `math.fsum` after scaling by the largest modulus.
    """
    exponent = ExtendedExponent.of(p)
    moduli = np.abs(as_vector(v))
    if moduli.size == 0:
        return 0.0
    peak = float(moduli.max())
    if exponent.is_infinite or peak == 0.0:
        return peak
    if exponent.value == 1:
        return math.fsum(moduli.tolist())
    q = float(exponent)
    scaled = (moduli / peak) ** q
    return peak * math.fsum(scaled.tolist()) ** (1.0 / q)


def lp_norm_rows(matrix: ArrayLike, p: ExponentLike) -> NDArray[np.float64]:
    """l_p norm of every row of a 2-d array (numpy pairwise summation)."""
    exponent = ExtendedExponent.of(p)
    moduli = np.abs(np.asarray(matrix))
    if moduli.ndim != 2:
        raise ArgumentError(f"expected a 2-d array, got shape {moduli.shape}")
    if moduli.shape[1] == 0:
        return np.zeros(moduli.shape[0])
    peak = moduli.max(axis=1)
    if exponent.is_infinite:
        return np.asarray(peak, dtype=np.float64)
    if exponent.value == 1:
        return np.asarray(moduli.sum(axis=1), dtype=np.float64)
    q = float(exponent)
    safe = np.where(peak > 0, peak, 1.0)
    sums = ((moduli / safe[:, None]) ** q).sum(axis=1)
    return np.asarray(np.where(peak > 0, safe * sums ** (1.0 / q), 0.0), dtype=np.float64)


def basis_vector(n: int, j: int, real: bool = False) -> Vector:
    """The unit vector e_j (0-based) of length n."""
    if not 0 <= j < n:
        raise ArgumentError(f"basis index {j} out of range for length {n}")
    x = np.zeros(n, dtype=np.float64 if real else np.complex128)
    x[j] = 1.0
    return x


def normalize(v: ArrayLike, p: ExponentLike) -> Vector:
    """`v` scaled onto the unit sphere of l_p.

    Raises:
        ArgumentError: If `v` is zero.
    """
    x = as_vector(v)
    norm = lp_norm(x, p)
    if norm == 0.0:
        raise ArgumentError("cannot normalize the zero vector")
    return x / norm


def duality_maximizer(c: ArrayLike, p: ExponentLike) -> tuple[Vector, float]:
    """The unit vector x of l_p^n maximizing sum_j c_j x_j.

    The returned pairing value is ||c||_{p*}, real and nonnegative:

    - 1 < p < inf: x_j = conj(c_j)/|c_j| * (|c_j| / ||c||_{p*})^{p*-1}
    - p = inf: x_j = conj(c_j)/|c_j|, value ||c||_1
    - p = 1: the phase of c at the first index of largest modulus, value ||c||_inf

    Coordinates with c_j = 0 get x_j = 0. For c = 0 the witness is e_1 and the
    value 0. Real `c` gives a real x.
    """
    coefficients = as_vector(c)
    n = coefficients.size
    if n == 0:
        raise ArgumentError("coefficient vector must not be empty")
    exponent = ExtendedExponent.of(p)
    real = not np.iscomplexobj(coefficients)
    moduli = np.abs(coefficients)
    if not moduli.any():
        return basis_vector(n, 0, real=real), 0.0

    phase = np.zeros_like(coefficients)
    support = moduli > 0
    phase[support] = np.conj(coefficients[support]) / moduli[support]

    if exponent.is_infinite:
        return phase, lp_norm(coefficients, 1)
    if exponent.value == 1:
        j = int(np.argmax(moduli))
        x = np.zeros_like(coefficients)
        x[j] = phase[j]
        return x, float(moduli[j])

    dual = exponent.conjugate()
    value = lp_norm(coefficients, dual)
    x = phase * (moduli / value) ** (float(dual) - 1.0)
    return x, value


def ball_sample(n: int, p: ExponentLike, seed: int, real: bool = False) -> Vector:
    """A random point of the unit sphere of l_p^n.

    The direction is uniform on the l_2 sphere (normalized Gaussian draw from a
    PCG64 generator seeded with `seed`) and is then rescaled to l_p norm 1.
    """
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    rng = make_rng(seed)
    if real:
        z: Vector = rng.standard_normal(n)
    else:
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z = z / np.linalg.norm(z)
    return z / lp_norm(z, p)
