#!/usr/bin/env python3

"""Group operations: exponential, logarithm, translations, adjoint action,
Lie bracket and bi-invariant distances.

Algebra elements are always given as coordinates in the left-invariant
orthonormal frame (vee coordinates for rotations), of length group.dim.
"""

import numpy as np

from typing import NamedTuple

from indisoluble.lie_diffpos.errors import CutLocusError, GroupMismatchError
from indisoluble.lie_diffpos.lie.group_spec import GroupKind, GroupSpec
from indisoluble.lie_diffpos.lie.point import (
    Point,
    Tangent,
    wrap_difference,
)
from indisoluble.lie_diffpos.lie.so3 import rotation_angle, so3_exp, so3_log


class GeodesicDirection(NamedTuple):
    """Distance between two points and the unit direction of the geodesic.

    direction is None when the points coincide.
    """

    theta: float
    direction: Tangent | None


_CUT_LOCUS_TOL = 1e-9


def _check_algebra(group: GroupSpec, omega: np.ndarray) -> np.ndarray:
    omega = np.asarray(omega, dtype=float).reshape(-1)
    if omega.shape != (group.dim,):
        raise ValueError(
            f"Algebra element must have length {group.dim}, got {omega.shape[0]}"
        )
    return omega


def _check_same_group(g1: Point, g2: Point) -> None:
    if g1.group != g2.group:
        raise GroupMismatchError(
            f"Cannot combine elements of {g1.group} and {g2.group}"
        )


def _check_angles_off_cut_locus(diff: np.ndarray) -> None:
    if np.any(np.abs(diff) > np.pi - _CUT_LOCUS_TOL):
        raise CutLocusError("Angle difference is at the cut locus (pi)")


def exp(group: GroupSpec, omega: np.ndarray) -> Point:
    """Group exponential of an algebra element."""
    omega = _check_algebra(group, omega)
    match group.kind:
        case GroupKind.SO3:
            return Point(group, so3_exp(omega))
        case GroupKind.SO3_POWER:
            return Point(group, so3_exp(omega.reshape(-1, 3)))
        case _:
            return Point(group, omega)


def log(group: GroupSpec, g: Point) -> np.ndarray:
    """Group logarithm, inverse of exp within the injectivity radius."""
    if g.group != group:
        raise GroupMismatchError(f"Element of {g.group} is not in {group}")

    match group.kind:
        case GroupKind.SO3:
            return so3_log(g.coords)
        case GroupKind.SO3_POWER:
            return so3_log(g.coords).reshape(-1)
        case GroupKind.CIRCLE | GroupKind.TORUS:
            diff = wrap_difference(g.coords)
            _check_angles_off_cut_locus(diff)
            return diff
        case GroupKind.CYLINDER:
            angle = wrap_difference(g.coords[0])
            _check_angles_off_cut_locus(angle)
            return np.array([float(angle), g.coords[1]])
        case _:
            return g.coords.copy()


def compose(g1: Point, g2: Point) -> Point:
    """Group product g1 * g2."""
    _check_same_group(g1, g2)
    group = g1.group
    match group.kind:
        case GroupKind.SO3 | GroupKind.SO3_POWER:
            return Point(group, g1.coords @ g2.coords)
        case _:
            return Point(group, g1.coords + g2.coords)


def inverse(g: Point) -> Point:
    match g.group.kind:
        case GroupKind.SO3:
            return Point(g.group, g.coords.T)
        case GroupKind.SO3_POWER:
            return Point(g.group, np.transpose(g.coords, (0, 2, 1)))
        case _:
            return Point(g.group, -g.coords)


def adjoint(g: Point, omega: np.ndarray) -> np.ndarray:
    """Adjoint action Ad(g) in frame coordinates (identity on abelian groups)."""
    omega = _check_algebra(g.group, omega)
    match g.group.kind:
        case GroupKind.SO3:
            return g.coords @ omega
        case GroupKind.SO3_POWER:
            return np.einsum("kij,kj->ki", g.coords, omega.reshape(-1, 3)).reshape(-1)
        case _:
            return omega.copy()


def bracket(group: GroupSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Lie bracket [a, b]: cross product per rotation factor, zero otherwise."""
    a = _check_algebra(group, a)
    b = _check_algebra(group, b)
    if group.is_abelian:
        return np.zeros(group.dim)

    return np.cross(a.reshape(-1, 3), b.reshape(-1, 3)).reshape(-1)


def distance(g1: Point, g2: Point) -> float:
    """Bi-invariant Riemannian distance (product metric on products)."""
    _check_same_group(g1, g2)
    match g1.group.kind:
        case GroupKind.SO3:
            return rotation_angle(g1.coords.T @ g2.coords)
        case GroupKind.SO3_POWER:
            angles = rotation_angle(np.transpose(g1.coords, (0, 2, 1)) @ g2.coords)
            return float(np.linalg.norm(angles))
        case GroupKind.CIRCLE | GroupKind.TORUS:
            return float(np.linalg.norm(wrap_difference(g2.coords - g1.coords)))
        case GroupKind.CYLINDER:
            diff = g2.coords - g1.coords
            return float(np.hypot(wrap_difference(diff[0]), diff[1]))
        case _:
            return float(np.linalg.norm(g2.coords - g1.coords))


def distance_and_direction(gk: Point, gi: Point) -> GeodesicDirection:
    """Distance from gk to gi and the unit geodesic direction at gk."""
    _check_same_group(gk, gi)
    x = log(gk.group, compose(inverse(gk), gi))
    theta = float(np.linalg.norm(x))
    if theta == 0.0:
        return GeodesicDirection(0.0, None)

    return GeodesicDirection(theta, Tangent(gk, x / theta))

