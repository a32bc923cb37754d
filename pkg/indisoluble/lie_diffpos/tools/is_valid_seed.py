#!/usr/bin/env python3

"""Random seed validation utilities.

Seeds are unsigned 64-bit integers so that every seed accepted here is
accepted by numpy's default generator and can be echoed in JSON documents.
"""

from typing import Any

_MAX_SEED = 2**64 - 1


def is_valid_seed(seed: Any) -> tuple[bool, str]:
    """Validate seed is an integer between 0 and 2^64 - 1."""
    if isinstance(seed, bool) or not isinstance(seed, int):
        return (False, "Seed must be an integer")

    if not 0 <= seed <= _MAX_SEED:
        return (False, f"Seed must be between 0 and {_MAX_SEED}")

    return (True, "")
