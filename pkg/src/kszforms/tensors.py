"""Unimodular tensor generators and evaluation of the multilinear forms they define.

Random generators draw from numpy's PCG64 bit generator seeded with one 64-bit
seed per tensor, so (dims, seed) determines the tensor bit for bit.
"""

import logging
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .defaults import GENERATOR_UNIMODULAR_TOL
from .errors import ArgumentError
from .models.FormInstance import FormInstance
from .models.UnimodularTensor import Provenance, UnimodularTensor
from .utils.seeding import check_seed, make_rng

logger = logging.getLogger(__name__)


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    if len(dims) == 0:
        raise ArgumentError("dims must not be empty")
    checked = tuple(int(n) for n in dims)
    if any(n < 1 for n in checked):
        raise ArgumentError(f"every dimension must be positive, got {checked}")
    return checked


def _checked_output(tensor: UnimodularTensor) -> UnimodularTensor:
    """Hold generated complex entries to GENERATOR_UNIMODULAR_TOL.

    Raises:
        ArgumentError: If some entry is further than the tolerance from the unit circle.
    """
    defect = tensor.unimodularity_defect()
    if defect > GENERATOR_UNIMODULAR_TOL:
        raise ArgumentError(f"generated entries drift from the unit circle (defect {defect:.3e})")
    return tensor


def rademacher(dims: Sequence[int], seed: int) -> UnimodularTensor:
    """I.i.d. uniform +1/-1 entries.

    Entry signs come from `Generator.integers(0, 2)` on PCG64(seed), mapped 0 -> -1
    and 1 -> +1, filled in row-major order.

    Raises:
        ArgumentError: On empty or zero dimensions, or a seed outside [0, 2**64).
    """
    shape = _check_dims(dims)
    rng = make_rng(seed)
    bits = rng.integers(0, 2, size=shape, dtype=np.int8)
    entries = 2.0 * bits.astype(np.float64) - 1.0
    return UnimodularTensor(
        entries=entries,
        field="real",
        provenance=Provenance(kind="rademacher", seed=check_seed(seed)),
    )


def steinhaus(dims: Sequence[int], seed: int) -> UnimodularTensor:
    """I.i.d. entries uniform on the complex unit circle: exp(i*theta), theta ~ U[0, 2pi)."""
    shape = _check_dims(dims)
    rng = make_rng(seed)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=shape)
    tensor = UnimodularTensor(
        entries=np.exp(1j * angles),
        field="complex",
        provenance=Provenance(kind="steinhaus", seed=check_seed(seed)),
    )
    return _checked_output(tensor)


def fourier_matrix(n: int) -> UnimodularTensor:
    """The n x n character matrix a_ij = exp(2*pi*i * i*j / n).

    Indices i, j run over 1..n, so the stored entry at offset (r, s) is
    exp(2*pi*i * (r+1)(s+1) / n). The product is reduced mod n before scaling so
    the angle stays in [0, 2*pi).

    Raises:
        ArgumentError: If n < 1.
    """
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    index = np.arange(1, n + 1, dtype=np.int64)
    residues = np.outer(index, index) % n
    entries = np.exp(2j * math.pi * residues / n)
    tensor = UnimodularTensor(
        entries=entries, field="complex", provenance=Provenance(kind="fourier")
    )
    return _checked_output(tensor)


def orthogonality_defect(tensor: UnimodularTensor) -> float:
    """max over (r, s) of |sum_t a_rt conj(a_st) - n delta_rs|.

    Raises:
        ArgumentError: If the tensor is not a square matrix.
    """
    if tensor.m != 2 or tensor.dims[0] != tensor.dims[1]:
        raise ArgumentError(f"orthogonality needs a square matrix, got dims {tensor.dims}")
    a = tensor.as_complex()
    n = tensor.dims[0]
    gram = a @ a.conj().T
    return float(np.abs(gram - n * np.eye(n)).max())


def _check_vectors(
    form: FormInstance, vectors: Sequence[ArrayLike | None], skip: int | None = None
) -> list[NDArray[Any]]:
    if len(vectors) != form.m:
        raise ArgumentError(f"expected {form.m} vectors, got {len(vectors)}")
    checked: list[NDArray[Any]] = []
    for k, (v, n) in enumerate(zip(vectors, form.dims)):
        if k == skip:
            checked.append(np.zeros(0))
            continue
        if v is None:
            raise ArgumentError(f"missing vector for slot {k}")
        array = np.asarray(v).reshape(-1)
        if array.size != n:
            raise ArgumentError(f"vector for slot {k} has length {array.size}, expected {n}")
        checked.append(array)
    return checked


def _contract(entries: NDArray[Any], vectors: Sequence[NDArray[Any]]) -> Any:
    # Contracts the leading axis with each vector in turn.
    result: Any = entries
    for v in vectors:
        result = np.tensordot(v, result, axes=(0, 0))
    return result


def evaluate(form: FormInstance, vectors: Sequence[ArrayLike]) -> complex:
    """A(x_1, ..., x_m) = sum_j a_j x_{1,j_1} ... x_{m,j_m}.

    Raises:
        ArgumentError: If the vector count or any length disagrees with the domain.
    """
    checked = _check_vectors(form, vectors)
    return complex(_contract(form.tensor.entries, checked))


def partial_coefficients(
    form: FormInstance, vectors: Sequence[ArrayLike | None], k: int
) -> NDArray[Any]:
    """The coefficients c of the linear functional x -> A(..., x at slot k, ...).

    `vectors[k]` is ignored (None is accepted there). The result is real when the
    tensor and every frozen vector are real.

    Raises:
        ArgumentError: If k is out of range or a frozen vector has the wrong length.
    """
    if not 0 <= k < form.m:
        raise ArgumentError(f"slot {k} out of range for m = {form.m}")
    checked = _check_vectors(form, vectors, skip=k)
    others = [v for j, v in enumerate(checked) if j != k]
    moved = np.moveaxis(form.tensor.entries, k, -1)
    return np.asarray(_contract(moved, others)).reshape(-1)


def restrict(form: FormInstance, new_dims: Sequence[int]) -> FormInstance:
    """The leading sub-tensor of shape `new_dims` on the same exponents.

    Raises:
        ArgumentError: If `new_dims` has the wrong length or exceeds the dims anywhere.
    """
    dims = _check_dims(new_dims)
    if len(dims) != form.m:
        raise ArgumentError(f"expected {form.m} dimensions, got {len(dims)}")
    if any(new > old for new, old in zip(dims, form.dims)):
        raise ArgumentError(f"cannot restrict dims {form.dims} to larger {dims}")
    window = tuple(slice(0, n) for n in dims)
    tensor = UnimodularTensor(
        entries=form.tensor.entries[window],
        field=form.tensor.field,
        provenance=form.tensor.provenance,
    )
    return FormInstance(tensor=tensor, domain=form.domain.with_dims(dims))


def freeze(form: FormInstance, k: int, x: ArrayLike) -> tuple[NDArray[Any], FormInstance | None]:
    """Fix slot k at x.

    Returns the coefficient tensor of the (m-1)-linear form left over, and the
    form itself when that tensor is still unimodular (x a scaled basis vector
    with unimodular scale), else None.

    Raises:
        ArgumentError: If k is out of range, x has the wrong length, or m = 1.
    """
    if form.m == 1:
        raise ArgumentError("cannot freeze the only slot of a linear form")
    if not 0 <= k < form.m:
        raise ArgumentError(f"slot {k} out of range for m = {form.m}")
    vector = np.asarray(x).reshape(-1)
    if vector.size != form.dims[k]:
        raise ArgumentError(
            f"vector for slot {k} has length {vector.size}, expected {form.dims[k]}"
        )
    moved = np.moveaxis(form.tensor.entries, k, 0)
    reduced = np.tensordot(vector, moved, axes=(0, 0))
    support = np.flatnonzero(vector)
    if support.size != 1 or not math.isclose(abs(complex(vector[support[0]])), 1.0):
        return reduced, None
    field = "real" if not np.iscomplexobj(reduced) else "complex"
    tensor = UnimodularTensor(entries=reduced, field=field, provenance=form.tensor.provenance)
    return reduced, FormInstance(tensor=tensor, domain=form.domain.drop(k))


def write_tensor(tensor: UnimodularTensor, path: Path | str) -> None:
    """Write the tensor JSON file format."""
    tensor.to_file(path)
    logger.debug("wrote %s tensor %s to %s", tensor.field, tensor.dims, path)


def read_tensor(path: Path | str) -> UnimodularTensor:
    """Read and validate a tensor JSON file."""
    tensor = UnimodularTensor.from_file(path)
    logger.debug("read %s tensor %s from %s", tensor.field, tensor.dims, path)
    return tensor
