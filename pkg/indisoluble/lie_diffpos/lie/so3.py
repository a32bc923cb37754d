#!/usr/bin/env python3

"""Rotation group kernels.

Hat and vee maps between R^3 and so(3), the Rodrigues exponential, a
branch-stable logarithm and the polar projection that keeps rotation
matrices orthonormal during long integrations. Exponential, logarithm and
projection accept stacks of shape (..., 3) or (..., 3, 3).
"""

import numpy as np

from indisoluble.lie_diffpos.errors import CutLocusError, NotRotationError, NotSkewError


_CUT_LOCUS_TOL = 1e-9
_NEAR_PI = np.pi - 1e-4
_SKEW_TOL = 1e-9
_SMALL_ANGLE = 1e-8


def _skew_axes(rotations: np.ndarray) -> np.ndarray:
    return np.stack(
        [
            rotations[..., 2, 1] - rotations[..., 1, 2],
            rotations[..., 0, 2] - rotations[..., 2, 0],
            rotations[..., 1, 0] - rotations[..., 0, 1],
        ],
        axis=-1,
    )


def _axes_from_symmetric_part(
    rotations: np.ndarray, angles: np.ndarray, skew_axes: np.ndarray
) -> np.ndarray:
    cos = np.cos(angles)[..., None, None]
    sym = 0.5 * (rotations + np.swapaxes(rotations, -1, -2)) - cos * np.eye(3)
    diagonal = np.diagonal(sym, axis1=-2, axis2=-1)
    column = np.argmax(diagonal, axis=-1)
    axes = np.take_along_axis(sym, column[..., None, None], axis=-1)[..., 0]
    axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
    flip = np.sum(axes * skew_axes, axis=-1) < 0.0
    return np.where(flip[..., None], -axes, axes)


def hat(omega: np.ndarray) -> np.ndarray:
    """Map a 3-vector to the skew-symmetric matrix of its cross product."""
    x, y, z = np.asarray(omega, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee(omega_hat: np.ndarray) -> np.ndarray:
    """Inverse of hat; rejects matrices that are not skew-symmetric."""
    omega_hat = np.asarray(omega_hat, dtype=float)
    if omega_hat.shape != (3, 3):
        raise NotSkewError(f"Expected a 3x3 matrix, got shape {omega_hat.shape}")

    asymmetry = np.max(np.abs(omega_hat + omega_hat.T))
    if asymmetry > _SKEW_TOL:
        raise NotSkewError(f"Matrix is not skew-symmetric (asymmetry {asymmetry:.3e})")

    return np.array([omega_hat[2, 1], omega_hat[0, 2], omega_hat[1, 0]])


def project_to_so3(matrices: np.ndarray) -> np.ndarray:
    """Closest rotations in Frobenius norm (symmetric polar factors)."""
    matrices = np.asarray(matrices, dtype=float)
    if matrices.shape[-2:] != (3, 3) or not np.all(np.isfinite(matrices)):
        raise NotRotationError("Rotations must be finite 3x3 matrices")

    u, _, vt = np.linalg.svd(matrices)
    rotations = u @ vt
    if np.any(np.linalg.det(rotations) <= 0.0):
        raise NotRotationError("Matrix has non-positive determinant")

    return rotations


def so3_exp(omega: np.ndarray) -> np.ndarray:
    """Rodrigues formula with a Taylor branch near the identity."""
    omega = np.asarray(omega, dtype=float)
    theta = np.linalg.norm(omega, axis=-1)
    small = theta < _SMALL_ANGLE
    safe = np.where(small, 1.0, theta)
    a = np.where(small, 1.0 - theta**2 / 6.0, np.sin(safe) / safe)
    b = np.where(small, 0.5 - theta**2 / 24.0, (1.0 - np.cos(safe)) / safe**2)

    x, y, z = omega[..., 0], omega[..., 1], omega[..., 2]
    zero = np.zeros_like(x)
    k = np.stack(
        [
            np.stack([zero, -z, y], axis=-1),
            np.stack([z, zero, -x], axis=-1),
            np.stack([-y, x, zero], axis=-1),
        ],
        axis=-2,
    )
    return np.eye(3) + a[..., None, None] * k + b[..., None, None] * (k @ k)


def rotation_angle(rotations: np.ndarray) -> np.ndarray | float:
    """Rotation angles in [0, pi], accurate at both ends of the range."""
    rotations = np.asarray(rotations, dtype=float)
    s = 0.5 * np.linalg.norm(_skew_axes(rotations), axis=-1)
    c = 0.5 * (np.trace(rotations, axis1=-2, axis2=-1) - 1.0)
    angles = np.arctan2(s, c)
    return float(angles) if angles.ndim == 0 else angles


def so3_log(rotations: np.ndarray) -> np.ndarray:
    """Rotation vectors of rotations whose angle is below pi."""
    rotations = np.asarray(rotations, dtype=float)
    angles = np.asarray(rotation_angle(rotations))
    if np.any(angles > np.pi - _CUT_LOCUS_TOL):
        raise CutLocusError(
            f"Rotation angle {np.max(angles):.12f} is at the cut locus"
        )

    skew_axes = _skew_axes(rotations)
    small = angles < _SMALL_ANGLE
    safe = np.where(small, 1.0, angles)
    scale = np.where(small, 0.5, safe / (2.0 * np.sin(safe)))
    result = scale[..., None] * skew_axes

    near_pi = angles >= _NEAR_PI
    if np.any(near_pi):
        # skew part vanishes near pi; read the axis from the symmetric part
        axes = _axes_from_symmetric_part(rotations, angles, skew_axes)
        result = np.where(near_pi[..., None], angles[..., None] * axes, result)

    return result
