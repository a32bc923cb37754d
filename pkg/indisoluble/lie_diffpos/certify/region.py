#!/usr/bin/env python3

"""Sampling regions for certification.

A region draws reproducible initial states from a seed and decides whether a
point still lies inside it, so that trajectories leaving a region that is
supposed to be forward invariant can be detected.
"""

import abc

import numpy as np

from itertools import combinations
from typing import Any

from scipy.spatial.transform import Rotation

from indisoluble.lie_diffpos.errors import BadParamsError, GroupMismatchError
from indisoluble.lie_diffpos.lie.group_spec import GroupKind, GroupSpec
from indisoluble.lie_diffpos.lie.point import Point, wrap_angle, wrap_difference
from indisoluble.lie_diffpos.lie.so3 import rotation_angle, so3_exp


_TWO_PI = 2.0 * np.pi

KEY_HIGH = "high"
KEY_KIND = "kind"
KEY_LOW = "low"
KEY_MAX_DISTANCE = "max_distance"
KEY_MAX_GAP = "max_gap"
KEY_RADIUS = "radius"


def _angle_mask(group: GroupSpec) -> np.ndarray:
    match group.kind:
        case GroupKind.CIRCLE | GroupKind.TORUS:
            return np.ones(group.factors, dtype=bool)
        case GroupKind.CYLINDER:
            return np.array([True, False])
        case GroupKind.EUCLIDEAN:
            return np.zeros(group.factors, dtype=bool)
        case _:
            raise GroupMismatchError(f"Coordinate regions do not apply to {group}")


def _positive(raw: dict[str, Any], key: str) -> float:
    value = raw.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
        raise BadParamsError(f"Region '{raw.get(KEY_KIND)}' needs a positive '{key}'")
    return float(value)


def region_from_dict(raw: Any, group: GroupSpec) -> "RegionSampler":
    """Build a region over group from its JSON document.

        {"kind": "box", "low": [...], "high": [...]}
        {"kind": "pairwise_gap", "max_gap": 2.0}
        {"kind": "so3_ball", "max_distance": 1.5}
        {"kind": "euclidean_ball", "radius": 1.0}
    """
    if not isinstance(raw, dict):
        raise BadParamsError(f"Region must be a JSON object, got {type(raw).__name__}")

    kind = raw.get(KEY_KIND)
    match kind:
        case "box":
            return BoxRegion(group, raw.get(KEY_LOW), raw.get(KEY_HIGH))
        case "pairwise_gap":
            return PairwiseGapRegion(group, _positive(raw, KEY_MAX_GAP))
        case "so3_ball":
            return SO3BallRegion(group, _positive(raw, KEY_MAX_DISTANCE))
        case "euclidean_ball":
            return EuclideanBallRegion(group, _positive(raw, KEY_RADIUS))
        case _:
            raise BadParamsError(f"Unknown region kind: {kind!r}")


class RegionSampler(abc.ABC):
    """Reproducible source of initial states with a membership test."""

    @property
    def group(self) -> GroupSpec:
        return self._group

    @property
    @abc.abstractmethod
    def description(self) -> str:
        """Get a short human readable description of the region."""

    def __init__(self, group: GroupSpec) -> None:
        self._group = group

    @abc.abstractmethod
    def _draw(self, rng: np.random.Generator) -> Point:
        """Draw one point inside the region."""

    @abc.abstractmethod
    def contains(self, point: Point) -> bool:
        """Check whether point lies in the region."""

    def sample(self, seed: int, count: int) -> list[Point]:
        """Draw count points; the same seed always gives the same points."""
        if count < 1:
            raise BadParamsError(f"Sample count must be positive, got {count}")

        rng = np.random.default_rng(seed)
        return [self._draw(rng) for _ in range(count)]


class BoxRegion(RegionSampler):
    """Coordinate box; angle coordinates are sampled in [low, high] and wrapped."""

    @property
    def description(self) -> str:
        return f"box low={self._low.tolist()} high={self._high.tolist()}"

    def __init__(self, group: GroupSpec, low: Any, high: Any) -> None:
        super().__init__(group)
        self._angles = _angle_mask(group)
        try:
            self._low = np.array(low, dtype=float).reshape(-1)
            self._high = np.array(high, dtype=float).reshape(-1)
        except (TypeError, ValueError) as ex:
            raise BadParamsError("Box bounds must be numeric lists") from ex

        if (
            self._low.shape != self._angles.shape
            or self._high.shape != self._angles.shape
        ):
            raise BadParamsError(
                f"Box bounds must have {self._angles.size} entries for {group}"
            )
        if not np.all(np.isfinite(self._low)) or not np.all(self._low <= self._high):
            raise BadParamsError("Box bounds must be finite with low <= high")

    def _draw(self, rng: np.random.Generator) -> Point:
        return Point(self._group, rng.uniform(self._low, self._high))

    def contains(self, point: Point) -> bool:
        x = point.coords
        width = self._high - self._low
        offset = np.where(self._angles, wrap_angle(x - self._low), x - self._low)
        inside = (offset >= 0.0) & (offset <= width)
        full_turn = self._angles & (width >= _TWO_PI)
        return bool(np.all(inside | full_turn))


class PairwiseGapRegion(RegionSampler):
    """Torus states whose pairwise wrapped phase differences are below max_gap."""

    @property
    def description(self) -> str:
        return f"pairwise_gap max_gap={self._max_gap}"

    def __init__(self, group: GroupSpec, max_gap: float) -> None:
        if group.kind is not GroupKind.TORUS:
            raise GroupMismatchError(f"Pairwise gap regions need a torus, got {group}")
        if not 0.0 < max_gap <= np.pi:
            raise BadParamsError(f"max_gap must lie in (0, pi], got {max_gap}")

        super().__init__(group)
        self._max_gap = float(max_gap)

    def _draw(self, rng: np.random.Generator) -> Point:
        center = rng.uniform(0.0, _TWO_PI)
        half = 0.5 * self._max_gap
        offsets = rng.uniform(-half, half, self._group.factors)
        return Point(self._group, center + offsets)

    def contains(self, point: Point) -> bool:
        theta = point.coords
        differences = wrap_difference(theta[:, None] - theta[None, :])
        return bool(np.max(np.abs(differences)) < self._max_gap)


class SO3BallRegion(RegionSampler):
    """Attitude states whose pairwise geodesic distances are below max_distance.

    Agents are drawn as R0 exp(w_k) around a uniform random R0 with
    |w_k| < max_distance / 2, so every pair is closer than max_distance.
    """

    @property
    def description(self) -> str:
        return f"so3_ball max_distance={self._max_distance}"

    def __init__(self, group: GroupSpec, max_distance: float) -> None:
        if group.kind not in (GroupKind.SO3, GroupKind.SO3_POWER):
            raise GroupMismatchError(f"Rotation balls need SO(3)^N, got {group}")
        if not 0.0 < max_distance <= np.pi:
            raise BadParamsError(
                f"max_distance must lie in (0, pi], got {max_distance}"
            )

        super().__init__(group)
        self._max_distance = float(max_distance)

    def _draw(self, rng: np.random.Generator) -> Point:
        agents = self._group.factors
        center = Rotation.random(random_state=rng).as_matrix()
        directions = rng.normal(size=(agents, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = 0.5 * self._max_distance * rng.uniform(size=agents) ** (1.0 / 3.0)
        rotations = center @ so3_exp(radii[:, None] * directions)
        if self._group.kind is GroupKind.SO3:
            return Point(self._group, rotations[0])
        return Point(self._group, rotations)

    def contains(self, point: Point) -> bool:
        if point.group.kind is GroupKind.SO3:
            return True

        rotations = point.coords
        distances = [
            rotation_angle(rotations[k].T @ rotations[i])
            for k, i in combinations(range(len(rotations)), 2)
        ]
        return max(distances, default=0.0) < self._max_distance


class EuclideanBallRegion(RegionSampler):
    """Ball of the given radius around the origin of R^N, sampled uniformly."""

    @property
    def description(self) -> str:
        return f"euclidean_ball radius={self._radius}"

    def __init__(self, group: GroupSpec, radius: float) -> None:
        if group.kind is not GroupKind.EUCLIDEAN:
            raise GroupMismatchError(f"Euclidean balls need R^N, got {group}")
        if not radius > 0.0:
            raise BadParamsError(f"radius must be positive, got {radius}")

        super().__init__(group)
        self._radius = float(radius)

    def _draw(self, rng: np.random.Generator) -> Point:
        n = self._group.factors
        direction = rng.normal(size=n)
        direction /= np.linalg.norm(direction)
        return Point(self._group, self._radius * rng.uniform() ** (1.0 / n) * direction)

    def contains(self, point: Point) -> bool:
        return bool(np.linalg.norm(point.coords) <= self._radius)
