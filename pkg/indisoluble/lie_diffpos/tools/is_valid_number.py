#!/usr/bin/env python3

"""Numeric parameter validation utilities.

Provides functions to validate real parameters read from configuration files,
where booleans must not pass for numbers.
"""

import math

from typing import Any


def _is_real(value: Any) -> bool:
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def is_valid_number(value: Any) -> tuple[bool, str]:
    """Validate value is a finite real number."""
    if not _is_real(value):
        return (False, "It must be a finite number")

    return (True, "")


def is_valid_positive_number(value: Any) -> tuple[bool, str]:
    """Validate value is a finite real number greater than zero."""
    if not _is_real(value):
        return (False, "It must be a finite number")

    if value <= 0:
        return (False, "It must be greater than 0")

    return (True, "")


def is_valid_open_unit(value: Any) -> tuple[bool, str]:
    """Validate value is a finite real number strictly between 0 and 1."""
    if not _is_real(value):
        return (False, "It must be a finite number")

    if not 0 < value < 1:
        return (False, "It must be between 0 and 1 (exclusive)")

    return (True, "")
