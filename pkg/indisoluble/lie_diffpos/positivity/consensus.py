#!/usr/bin/env python3

"""Consensus matrices and their Lyapunov functionals.

Row-stochastic matrices drive discrete consensus, Metzler matrices with zero
row sums drive continuous consensus. Both make the spread max(x) - min(x)
and, for positive states, the Birkhoff functional log(max(x) / min(x))
non-increasing.
"""

import numpy as np

from enum import Enum
from typing import Any

from indisoluble.lie_diffpos.errors import NonPositiveError
from indisoluble.lie_diffpos.positivity.linear_map import as_linear_map
from indisoluble.lie_diffpos.time_domain import TimeDomain


class LyapunovKind(Enum):
    BIRKHOFF = "birkhoff"
    TSITSIKLIS = "tsitsiklis"


_ROW_SUM_TOL = 1e-12
_SIGN_TOL = 1e-12


def consensus_lyapunov(x: Any, kind: LyapunovKind) -> float:
    """Tsitsiklis spread or Birkhoff log-ratio of a state vector."""
    x = np.asarray(x, dtype=float)
    if kind is LyapunovKind.TSITSIKLIS:
        return float(np.max(x) - np.min(x))

    if np.min(x) <= 0.0:
        raise NonPositiveError("Birkhoff functional needs a strictly positive state")
    return float(np.log(np.max(x) / np.min(x)))


def check_consensus_matrix(A: Any, time: TimeDomain) -> bool:
    """Row-stochastic (discrete) or Metzler with zero row sums (continuous)."""
    A = as_linear_map(A)
    row_sums = np.sum(A, axis=1)
    if time is TimeDomain.DISCRETE:
        return bool(
            np.all(np.abs(row_sums - 1.0) <= _ROW_SUM_TOL)
            and np.all(A >= -_SIGN_TOL)
        )

    off_diagonal = A - np.diag(np.diag(A))
    return bool(
        np.all(np.abs(row_sums) <= _ROW_SUM_TOL)
        and np.all(off_diagonal >= -_SIGN_TOL)
    )
