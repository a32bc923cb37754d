#!/usr/bin/env python3

"""One-dimensional S-procedure search.

For a symmetric base matrix M and symmetric P, the function
lambda -> lambda_min(M - lambda P) is concave, so golden-section search on a
bracketing interval finds its maximum to machine tolerance.
"""

import logging
import math

import numpy as np

from typing import NamedTuple


class SProcedureOptimum(NamedTuple):
    multiplier: float
    value: float


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_ITERATIONS = 200


def _min_eigenvalue(base: np.ndarray, P: np.ndarray, multiplier: float) -> float:
    return float(np.linalg.eigvalsh(base - multiplier * P)[0])


def multiplier_bound(scale: float, P: np.ndarray) -> float:
    """Upper bound on useful multipliers: 10 * scale * |P| / min |eig(P)|."""
    eigenvalues = np.abs(np.linalg.eigvalsh(P))
    return max(10.0 * scale * np.max(eigenvalues) / np.min(eigenvalues), 1.0)


def maximize_min_eigenvalue(
    base: np.ndarray, P: np.ndarray, low: float, high: float
) -> SProcedureOptimum:
    """Golden-section maximization of lambda_min(base - lambda P) on [low, high]."""
    base = 0.5 * (base + base.T)
    a, b = low, high
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = _min_eigenvalue(base, P, c)
    fd = _min_eigenvalue(base, P, d)
    for _ in range(_ITERATIONS):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = _min_eigenvalue(base, P, c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = _min_eigenvalue(base, P, d)

    candidates = [(a, _min_eigenvalue(base, P, a)), (b, _min_eigenvalue(base, P, b))]
    candidates.append((0.5 * (a + b), _min_eigenvalue(base, P, 0.5 * (a + b))))
    multiplier, value = max(candidates, key=lambda item: item[1])
    logging.debug("S-procedure optimum %.6e at multiplier %.6e", value, multiplier)
    return SProcedureOptimum(multiplier, value)
