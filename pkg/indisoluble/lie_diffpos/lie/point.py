#!/usr/bin/env python3

"""Group elements and tangent vectors in left-invariant frame coordinates.

Points store a normalized coordinate array per group kind: wrapped angles for
circles and tori, a rotation matrix for SO(3), a stack of rotation matrices
for SO(3)^N, (angle, real) for the cylinder and a plain vector for R^N.
"""

from __future__ import annotations

import numpy as np

from typing import Any, NamedTuple

from scipy.spatial.transform import Rotation

from indisoluble.lie_diffpos.lie.group_spec import GroupKind, GroupSpec
from indisoluble.lie_diffpos.lie.so3 import project_to_so3


class Tangent(NamedTuple):
    """Tangent vector at base, as coordinates in the left-invariant frame."""

    base: Point
    v: np.ndarray


_TWO_PI = 2.0 * np.pi


def _coords_shape(group: GroupSpec) -> tuple[int, ...]:
    match group.kind:
        case GroupKind.SO3:
            return (3, 3)
        case GroupKind.SO3_POWER:
            return (group.factors, 3, 3)
        case GroupKind.CYLINDER:
            return (2,)
        case _:
            return (group.factors,)


def wrap_angle(angle: Any) -> np.ndarray:
    """Wrap angles to [0, 2*pi)."""
    wrapped = np.mod(np.asarray(angle, dtype=float), _TWO_PI)
    return np.where(wrapped >= _TWO_PI, 0.0, wrapped)


def wrap_difference(angle: Any) -> np.ndarray:
    """Wrap angle differences to (-pi, pi]."""
    return np.pi - wrap_angle(np.pi - np.asarray(angle, dtype=float))


def identity(group: GroupSpec) -> Point:
    """Identity element of the group."""
    match group.kind:
        case GroupKind.SO3:
            return Point(group, np.eye(3))
        case GroupKind.SO3_POWER:
            return Point(group, np.tile(np.eye(3), (group.factors, 1, 1)))
        case _:
            return Point(group, np.zeros(_coords_shape(group)))


def random_point(
    group: GroupSpec, rng: np.random.Generator, *, scale: float = 1.0
) -> Point:
    """Draw a point: uniform angles and rotations, Gaussian real coordinates."""
    match group.kind:
        case GroupKind.CIRCLE | GroupKind.TORUS:
            return Point(group, rng.uniform(0.0, _TWO_PI, group.factors))
        case GroupKind.CYLINDER:
            return Point(
                group, np.array([rng.uniform(0.0, _TWO_PI), scale * rng.normal()])
            )
        case GroupKind.EUCLIDEAN:
            return Point(group, scale * rng.normal(size=group.factors))
        case GroupKind.SO3:
            return Point(group, Rotation.random(random_state=rng).as_matrix())
        case GroupKind.SO3_POWER:
            return Point(
                group,
                Rotation.random(group.factors, random_state=rng).as_matrix(),
            )


class Point:
    """Immutable group element with normalized coordinates."""

    @property
    def group(self) -> GroupSpec:
        """Get the group this element belongs to."""
        return self._group

    @property
    def coords(self) -> np.ndarray:
        """Get the read-only normalized coordinate array."""
        return self._coords

    def __init__(self, group: GroupSpec, coords: Any) -> None:
        """Initialize a point, wrapping angles and re-orthonormalizing rotations."""
        coords = np.array(coords, dtype=float)
        expected = _coords_shape(group)
        if coords.shape != expected:
            raise ValueError(
                f"Coordinates for {group.kind.value} must have shape {expected}, "
                f"got {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("Coordinates must be finite")

        match group.kind:
            case GroupKind.CIRCLE | GroupKind.TORUS:
                coords = wrap_angle(coords)
            case GroupKind.CYLINDER:
                coords[0] = wrap_angle(coords[0])
            case GroupKind.SO3 | GroupKind.SO3_POWER:
                coords = project_to_so3(coords)

        coords.setflags(write=False)
        self._group = group
        self._coords = coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return False

        return self.group == other.group and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash((self.group, self.coords.tobytes()))

    def __repr__(self) -> str:
        return f"Point(group={self.group}, coords={self.coords.tolist()})"

    def flat(self) -> np.ndarray:
        """Coordinates flattened row-major, as written to trajectory files."""
        return self._coords.reshape(-1).copy()
