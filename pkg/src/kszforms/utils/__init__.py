"""Utility functions for kszforms."""

from .parallel import ordered_map
from .parsing import format_real, parse_dims, parse_int_list, parse_p_list, read_real
from .seeding import check_seed, make_rng, split_seeds

__all__ = [
    "check_seed",
    "format_real",
    "make_rng",
    "ordered_map",
    "parse_dims",
    "parse_int_list",
    "parse_p_list",
    "read_real",
    "split_seeds",
]
