#!/usr/bin/env python3

"""Deterministic sampling of unit vectors on cone boundaries.

Polyhedral samples are stratified over the faces: each sample lies on one
constraint hyperplane and satisfies every other constraint. Quadratic samples
combine positive and negative eigen-components with equal quadratic weight so
that Q(v) = 0 holds by construction.
"""

import logging

import numpy as np

from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    PolyhedralCone,
    SyncCone,
    quadratic_form,
    unit_normals,
)
from indisoluble.lie_diffpos.errors import EmptyBoundaryError


_FACE_ATTEMPTS = 64
_FEASIBILITY_TOL = 1e-12
_MIN_NORM = 1e-6
_PROJECTION_SWEEPS = 200


def _face_point(
    normals: np.ndarray, face: int, rng: np.random.Generator
) -> np.ndarray | None:
    face_normal = normals[face]
    for _ in range(_FACE_ATTEMPTS):
        x = rng.normal(size=normals.shape[1])
        for _ in range(_PROJECTION_SWEEPS):
            x = x - np.dot(face_normal, x) * face_normal
            s = normals @ x
            s[face] = 0.0
            worst = int(np.argmin(s))
            if s[worst] >= -_FEASIBILITY_TOL * np.linalg.norm(x):
                break
            x = x - s[worst] * normals[worst]
        else:
            continue

        norm = np.linalg.norm(x)
        if norm < _MIN_NORM:
            continue

        v = x / norm
        if np.min(normals @ v) >= -_FEASIBILITY_TOL:
            return v

    return None


def _polyhedral_sample(
    normals: np.ndarray, count: int, rng: np.random.Generator
) -> np.ndarray:
    samples = []
    empty_faces: set[int] = set()
    face = 0
    while len(samples) < count:
        if len(empty_faces) == normals.shape[0]:
            raise EmptyBoundaryError("No face of the cone holds a nonzero vector")

        if face not in empty_faces:
            v = _face_point(normals, face, rng)
            if v is None:
                logging.debug("Face %d yielded no boundary sample, skipping it", face)
                empty_faces.add(face)
            else:
                samples.append(v)

        face = (face + 1) % normals.shape[0]

    return np.array(samples)


def _quadratic_sample(
    P: np.ndarray, count: int, rng: np.random.Generator
) -> np.ndarray:
    eigenvalues, eigenvectors = np.linalg.eigh(P)
    positive = eigenvalues > 0.0
    if positive.all() or not positive.any():
        raise EmptyBoundaryError("Definite quadratic form has no nonzero boundary")

    u_pos, lam_pos = eigenvectors[:, positive], eigenvalues[positive]
    u_neg, lam_neg = eigenvectors[:, ~positive], -eigenvalues[~positive]

    samples = np.empty((count, P.shape[0]))
    for row in range(count):
        a = rng.normal(size=lam_pos.size)
        b = rng.normal(size=lam_neg.size)
        a /= np.sqrt(np.dot(lam_pos, a * a))
        b /= np.sqrt(np.dot(lam_neg, b * b))
        v = u_pos @ a + u_neg @ b
        samples[row] = v / np.linalg.norm(v)

    return samples


def boundary_sample(cone: ConeSpec, count: int, seed: int) -> np.ndarray:
    """Return count unit boundary vectors as rows, reproducible from seed."""
    if count < 1:
        raise ValueError(f"Sample count must be at least 1, got {count}")

    rng = np.random.default_rng(seed)
    match cone:
        case OrthantCone() | PolyhedralCone():
            return _polyhedral_sample(unit_normals(cone), count, rng)
        case _:
            samples = _quadratic_sample(quadratic_form(cone), count, rng)
            if isinstance(cone, SyncCone) and cone.m == 1:
                flip = samples @ cone.generators[0] < 0.0
                samples[flip] *= -1.0
            return samples
