#!/usr/bin/env python3

"""Involutivity of left-invariant distributions.

A left-invariant distribution spanned by algebra elements is involutive, and
its integral manifolds are left translates of a subgroup, exactly when the
span is closed under the bracket.
"""

import logging

import numpy as np

from itertools import combinations
from typing import Any, Sequence

from indisoluble.lie_diffpos.errors import DependentBasisError
from indisoluble.lie_diffpos.lie.group_ops import bracket
from indisoluble.lie_diffpos.lie.group_spec import GroupSpec


_SPAN_TOL = 1e-10


def check_invariant_distribution(group: GroupSpec, basis: Sequence[Any]) -> bool:
    """Whether every pairwise bracket of basis lies in its span.

    Raises:
        DependentBasisError: If the basis vectors are linearly dependent
    """
    vectors = [np.asarray(b, dtype=float).reshape(-1) for b in basis]
    if not vectors:
        raise DependentBasisError("A distribution needs at least one basis vector")

    span = np.column_stack(vectors)
    if span.shape[0] != group.dim:
        raise ValueError(f"Basis vectors must have length {group.dim}")
    if np.linalg.matrix_rank(span) < span.shape[1]:
        raise DependentBasisError("Basis vectors are linearly dependent")

    q, _ = np.linalg.qr(span)
    for a, b in combinations(vectors, 2):
        c = bracket(group, a, b)
        residual = np.linalg.norm(c - q @ (q.T @ c))
        if residual > _SPAN_TOL * max(1.0, np.linalg.norm(a) * np.linalg.norm(b)):
            logging.debug("Bracket leaves the span by %.3e", residual)
            return False

    return True
