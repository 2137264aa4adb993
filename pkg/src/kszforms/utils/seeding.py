"""Deterministic seed handling.

Every random object in kszforms is drawn from numpy's PCG64 bit generator seeded
with a single unsigned 64-bit integer. Derived seeds come from `SeedSequence`, so a
parent seed fans out into reproducible, statistically independent children.
"""

import numpy as np

from ..errors import ArgumentError

SEED_LIMIT = 2**64


def check_seed(seed: int) -> int:
    """Validate a 64-bit seed.

    Raises:
        ArgumentError: If the seed is negative or does not fit in 64 bits.
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ArgumentError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < SEED_LIMIT:
        raise ArgumentError(f"seed must lie in [0, 2**64), got {seed}")
    return int(seed)


def make_rng(seed: int) -> np.random.Generator:
    """A PCG64 generator for one seed."""
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


def split_seeds(seed: int, count: int, *key: int) -> list[int]:
    """Derive `count` child seeds from `seed`, namespaced by `key`."""
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(key))
    return [int(s) for s in sequence.generate_state(count, dtype=np.uint64)]
