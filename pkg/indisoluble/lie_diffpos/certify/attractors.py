#!/usr/bin/env python3

"""Attractor diagnostics along sampled trajectories.

Phase locking and splay states on tori, distance to the synchronization
manifold on SO(3)^N, the contraction ratio of propagated tangents towards a
dominant subspace and the return times through a section of a limit cycle.
"""

import numpy as np

from typing import Any, NamedTuple, Sequence

from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.dynamics.trajectory import Trajectory
from indisoluble.lie_diffpos.errors import (
    DegenerateDirectionError,
    DependentBasisError,
    GroupMismatchError,
    WindowTooShortError,
)
from indisoluble.lie_diffpos.lie.group_spec import GroupKind
from indisoluble.lie_diffpos.lie.point import Point, wrap_angle, wrap_difference
from indisoluble.lie_diffpos.lie.so3 import rotation_angle


class PhaseLock(NamedTuple):
    residual: float
    locked_freq: float


_DEGENERATE_TOL = 1e-12
_TWO_PI = 2.0 * np.pi


def _orthonormal_basis(dominant_basis: Sequence[Any], dim: int) -> np.ndarray:
    basis = np.column_stack([np.asarray(b, dtype=float) for b in dominant_basis])
    if basis.shape[0] != dim:
        raise ValueError(f"Dominant basis vectors must have length {dim}")
    if np.linalg.matrix_rank(basis) < basis.shape[1]:
        raise DependentBasisError("Dominant basis vectors are linearly dependent")

    q, _ = np.linalg.qr(basis)
    return q


def instantaneous_frequencies(sys: SystemSpec, traj: Trajectory) -> np.ndarray:
    """Field values at every sample, one row per sample."""
    return np.stack(
        [
            np.asarray(sys.field(g, t), dtype=float)
            for t, g in zip(traj.times, traj.points)
        ]
    )


def phase_lock_residual(sys: SystemSpec, traj: Trajectory, window: float) -> PhaseLock:
    """Spread of the instantaneous frequencies over the final time window.

    residual is the largest deviation of a frequency from the mean frequency
    at any sample in the window; locked_freq the mean frequency over it.

    Raises:
        WindowTooShortError: If the window holds fewer than two samples or
            exceeds the trajectory
    """
    times = traj.times
    if not window > 0.0 or window > times[-1] - times[0] + 1e-12:
        raise WindowTooShortError(
            f"Window {window} does not fit a trajectory "
            f"of length {times[-1] - times[0]}"
        )

    selected = times >= times[-1] - window - 1e-12
    if np.count_nonzero(selected) < 2:
        raise WindowTooShortError(f"Window {window} holds fewer than two samples")

    window_traj = Trajectory(
        times[selected], tuple(p for p, s in zip(traj.points, selected) if s)
    )
    frequencies = instantaneous_frequencies(sys, window_traj)
    mean = frequencies.mean(axis=1)
    residual = float(np.max(np.abs(frequencies - mean[:, None])))
    return PhaseLock(residual, float(np.mean(mean)))


def splay_check(theta: Point | Any) -> float:
    """Largest deviation of consecutive (sorted, wrapping) phase gaps from 2*pi/N."""
    if isinstance(theta, Point):
        angles = theta.coords
    else:
        angles = np.asarray(theta, dtype=float)
    angles = np.sort(wrap_angle(angles))
    if angles.size < 2:
        raise ValueError("Splay states need at least two phases")

    gaps = np.diff(np.append(angles, angles[0] + _TWO_PI))
    return float(np.max(np.abs(gaps - _TWO_PI / angles.size)))


def sync_distance(g: Point) -> float:
    """Largest pairwise geodesic distance between agents of SO(3)^N."""
    if g.group.kind is not GroupKind.SO3_POWER:
        raise GroupMismatchError(
            f"Synchronization distance needs SO(3)^N, got {g.group}"
        )

    rotations = g.coords
    k, i = np.triu_indices(len(rotations), 1)
    if k.size == 0:
        return 0.0

    relative = np.transpose(rotations[k], (0, 2, 1)) @ rotations[i]
    return float(np.max(rotation_angle(relative)))


def alignment_ratio(traj: Trajectory, dominant_basis: Sequence[Any]) -> np.ndarray:
    """Ratio of the tangent component off the dominant span to the one in it.

    Tangents of shape (samples, d) give one ratio per sample, matrices of
    shape (samples, d, m) one ratio per sample and column. Samples with a
    vanishing dominant component get inf.

    Raises:
        DegenerateDirectionError: If every sample has a vanishing dominant
            component
    """
    if traj.tangents is None:
        raise ValueError("Trajectory carries no tangents")

    tangents = traj.tangents
    q = _orthonormal_basis(dominant_basis, tangents.shape[1])
    inside = np.einsum("dr,sd...->sr...", q, tangents)
    off = tangents - np.einsum("dr,sr...->sd...", q, inside)
    inside_norm = np.linalg.norm(inside, axis=1)
    off_norm = np.linalg.norm(off, axis=1)
    total = np.linalg.norm(tangents, axis=1)

    degenerate = inside_norm <= _DEGENERATE_TOL * np.maximum(total, _DEGENERATE_TOL)
    if np.all(degenerate):
        raise DegenerateDirectionError("Tangents have no dominant component")

    safe = np.where(degenerate, 1.0, inside_norm)
    return np.where(degenerate, np.inf, off_norm / safe)


def section_periods(
    traj: Trajectory, coordinate: int, value: float, discard: float = 0.0
) -> np.ndarray:
    """Times between successive upward crossings of q_coordinate = value
    (mod 2*pi), located by linear interpolation, ignoring crossings before
    discard."""
    q = np.array([p.flat()[coordinate] for p in traj.points])
    offset = wrap_difference(q - value)
    rise = offset[1:] - offset[:-1]
    # a jump across value + pi is not a crossing
    upward = (offset[:-1] < 0.0) & (offset[1:] >= 0.0) & (rise < np.pi)

    j = np.flatnonzero(upward)
    fraction = -offset[j] / (offset[j + 1] - offset[j])
    crossings = traj.times[j] + fraction * (traj.times[j + 1] - traj.times[j])
    return np.diff(crossings[crossings >= discard])
