"""
Utility functions for nbcube.
"""

import logging
import os
from typing import Optional

from nbcube.constants import DEFAULT_WORKERS, WORKERS_ENV_VAR

logger = logging.getLogger(__name__)


def ceil_half(value: int) -> int:
    """Return ⌈value/2⌉ for a non-negative integer"""
    return (value + 1) // 2


def parse_range(text: str) -> tuple[int, ...]:
    """Parse an inclusive integer range such as ``"1..4"`` or a single ``"3"``

    Args:
        text: Range expression, ``a..b`` or ``a``; comma-separated lists are
            accepted as well (``"2,4,5"``)

    Returns:
        Tuple of the integers in ascending order

    Raises:
        ValueError: If the expression is empty or decreasing
    """
    text = text.strip()
    if not text:
        raise ValueError("empty range")
    if ".." in text:
        low_text, high_text = text.split("..", maxsplit=1)
        low, high = int(low_text), int(high_text)
        if high < low:
            raise ValueError(f"decreasing range {text!r}")
        return tuple(range(low, high + 1))
    return tuple(sorted({int(part) for part in text.split(",") if part.strip()}))


def parse_int_list(text: str) -> tuple[int, ...]:
    """Parse a comma-separated list of integers (empty string gives ``()``)"""
    return tuple(int(part) for part in text.split(",") if part.strip())


def parse_pair(text: str) -> tuple[int, int]:
    """Parse ``"n,k"`` into a pair of integers"""
    values = parse_int_list(text)
    if len(values) != 2:
        raise ValueError(f"expected two comma-separated integers, got {text!r}")
    return values[0], values[1]


def resolve_workers(flag_value: Optional[int]) -> int:
    """Resolve the worker count from a flag, the environment or the default

    Args:
        flag_value: Value of ``--workers`` or None when the flag is absent

    Returns:
        Worker count (at least 1)
    """
    if flag_value is not None:
        return flag_value
    env_value = os.environ.get(WORKERS_ENV_VAR)
    if env_value:
        try:
            workers = int(env_value)
        except ValueError:
            logger.warning(
                f"Ignoring non-integer {WORKERS_ENV_VAR}={env_value!r}, "
                f"using {DEFAULT_WORKERS} worker(s)"
            )
        else:
            if workers >= 1:
                return workers
            logger.warning(
                f"Ignoring {WORKERS_ENV_VAR}={workers} below 1, "
                f"using {DEFAULT_WORKERS} worker(s)"
            )
    return DEFAULT_WORKERS


def format_digits(digits: tuple[int, ...], radix: int, plain_limit: int) -> str:
    """Render a digit tuple, plainly when every digit is a single character

    Args:
        digits: Digits, most significant first
        radix: Largest symbol count among the positions
        plain_limit: Radixes up to this value print without separators

    Returns:
        ``"120"``-style text, or ``"1.2.10"`` when a digit may exceed 9
    """
    if radix <= plain_limit:
        return "".join(str(digit) for digit in digits)
    return ".".join(str(digit) for digit in digits)


def parse_digits(text: str) -> tuple[int, ...]:
    """Inverse of :func:`format_digits` (dotted or plain form)"""
    text = text.strip()
    if "." in text:
        return tuple(int(part) for part in text.split("."))
    if not text.isdigit():
        raise ValueError(f"not a digit string: {text!r}")
    return tuple(int(char) for char in text)
