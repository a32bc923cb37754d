#!/usr/bin/env python3

"""Graded cone membership.

Every cone variant reduces membership to a scale-free margin: the minimum
normalized constraint value for polyhedral cones and Q(v)/|v|^2 for quadratic
ones. Grades compare the margin against a boundary band and against the
epsilon of the contracted cone family.
"""

import numpy as np

from enum import IntEnum

from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    PolyhedralCone,
    SyncCone,
    quadratic_form,
    unit_normals,
)
from indisoluble.lie_diffpos.errors import DimensionMismatchError


class MembershipGrade(IntEnum):
    """Ordered grades: a higher grade implies every lower non-outside grade."""

    OUTSIDE = 0
    BOUNDARY = 1
    INTERIOR = 2
    EPS_INTERIOR = 3


BOUNDARY_TOL = 1e-9


def _as_rows(cone: ConeSpec, vectors: np.ndarray) -> np.ndarray:
    rows = np.atleast_2d(np.asarray(vectors, dtype=float))
    if rows.shape[1] != cone.n:
        raise DimensionMismatchError(
            f"Vectors of length {rows.shape[1]} do not match cone dimension {cone.n}"
        )
    return rows


def margins(cone: ConeSpec, vectors: np.ndarray) -> np.ndarray:
    """Normalized margins of each row of vectors; zero rows get margin 0."""
    rows = _as_rows(cone, vectors)
    norms = np.linalg.norm(rows, axis=1)
    safe = np.where(norms > 0.0, norms, 1.0)
    units = rows / safe[:, None]

    match cone:
        case OrthantCone() | PolyhedralCone():
            s = units @ unit_normals(cone).T
            result = np.min(s, axis=1)
            if cone.symmetric:
                result = np.maximum(result, np.min(-s, axis=1))
        case _:
            P = quadratic_form(cone)
            result = np.einsum("ri,ij,rj->r", units, P, units)
            if isinstance(cone, SyncCone) and cone.m == 1:
                # the halfspace only selects the nappe
                halfspace = units @ cone.generators[0] / np.sqrt(cone.agents)
                result = np.where(
                    halfspace >= 0.0, result, np.minimum(result, halfspace)
                )

    return np.where(norms > 0.0, result, 0.0)


def margin(cone: ConeSpec, v: np.ndarray) -> float:
    """Normalized margin of a single vector."""
    return float(margins(cone, v)[0])


def grade_margin(value: float, eps: float = 0.0) -> MembershipGrade:
    """Grade a normalized margin against the boundary band and eps."""
    if value < -BOUNDARY_TOL:
        return MembershipGrade.OUTSIDE
    if value <= BOUNDARY_TOL:
        return MembershipGrade.BOUNDARY
    if eps > 0.0 and value >= eps:
        return MembershipGrade.EPS_INTERIOR
    return MembershipGrade.INTERIOR


def contains(cone: ConeSpec, v: np.ndarray, eps: float = 0.0) -> MembershipGrade:
    """Grade v against the cone and its eps-contracted family member."""
    if eps < 0.0:
        raise ValueError(f"eps must be non-negative, got {eps}")

    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatchError(f"Expected a vector, got shape {v.shape}")

    return grade_margin(margin(cone, v), eps)
