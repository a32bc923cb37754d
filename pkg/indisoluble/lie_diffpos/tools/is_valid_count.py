#!/usr/bin/env python3

"""Count validation utilities for sample sizes and worker pools."""

from typing import Any


def is_valid_count(count: Any) -> tuple[bool, str]:
    """Validate count is an integer of at least 1."""
    if isinstance(count, bool) or not isinstance(count, int):
        return (False, "It must be an integer")

    if count < 1:
        return (False, "It must be at least 1")

    return (True, "")
