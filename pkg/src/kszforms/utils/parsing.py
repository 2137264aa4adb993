"""Token grammar shared by the CLI and the file readers.

- exponent lists: comma-separated, "inf" for infinity ("1.5,3,inf")
- dimension lists: "AxBxC" ("8x8", "1x64x64")
- integer lists: comma-separated ("4,8,16,32")
"""

from ..errors import ArgumentError
from ..models.ExtendedExponent import ExtendedExponent, format_real, read_real

__all__ = ["format_real", "parse_dims", "parse_int_list", "parse_p_list", "read_real"]


def parse_p_list(text: str) -> tuple[ExtendedExponent, ...]:
    """Parse a comma-separated exponent list.

    Raises:
        ArgumentError: Naming the first malformed token.
    """
    tokens = [token.strip() for token in text.split(",")]
    if not text.strip() or any(not token for token in tokens):
        raise ArgumentError(f"empty exponent in list '{text}'")
    return tuple(ExtendedExponent.parse(token) for token in tokens)


def parse_dims(text: str) -> tuple[int, ...]:
    """Parse an "AxBxC" dimension list of positive integers."""
    tokens = [token.strip() for token in text.lower().split("x")]
    dims: list[int] = []
    for token in tokens:
        try:
            value = int(token)
        except ValueError:
            raise ArgumentError(f"invalid dimension '{token}' in '{text}'") from None
        if value < 1:
            raise ArgumentError(f"dimension '{token}' must be positive")
        dims.append(value)
    return tuple(dims)


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parse a comma-separated list of positive integers."""
    values: list[int] = []
    for token in text.split(","):
        try:
            value = int(token.strip())
        except ValueError:
            raise ArgumentError(f"invalid integer '{token.strip()}' in '{text}'") from None
        if value < 1:
            raise ArgumentError(f"'{token.strip()}' must be positive")
        values.append(value)
    return tuple(values)

