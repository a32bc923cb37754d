#!/usr/bin/env python3

"""Dense linear maps acting on frame coordinates."""

import numpy as np

from typing import Any, TypeAlias

from indisoluble.lie_diffpos.errors import DimensionMismatchError


LinearMap: TypeAlias = np.ndarray


def as_linear_map(entries: Any, n: int | None = None) -> LinearMap:
    """Validate a square finite matrix, optionally of dimension n."""
    matrix = np.array(entries, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
        raise DimensionMismatchError(f"Linear map must be square, got {matrix.shape}")
    if n is not None and matrix.shape[0] != n:
        raise DimensionMismatchError(
            f"Linear map of dimension {matrix.shape[0]} does not act on R^{n}"
        )
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Linear map entries must be finite")

    return matrix
