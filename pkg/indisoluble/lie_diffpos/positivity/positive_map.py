#!/usr/bin/env python3

"""Positivity of linear maps with respect to cones.

A map T is positive when T(C) is contained in C and strictly positive when it
sends every nonzero vector of C into the interior of C.
"""

import logging

import numpy as np

from typing import Any

from indisoluble.lie_diffpos.cones.boundary import boundary_sample
from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    QuadraticCone,
    SyncCone,
    quadratic_form,
)
from indisoluble.lie_diffpos.cones.membership import margins
from indisoluble.lie_diffpos.errors import UnsupportedCombinationError
from indisoluble.lie_diffpos.positivity.certificate import (
    STRICT_TOL,
    Certificate,
    CertificateMode,
    PositivityMode,
    make_certificate,
    sampled_mode,
)
from indisoluble.lie_diffpos.positivity.linear_map import as_linear_map
from indisoluble.lie_diffpos.positivity.s_procedure import (
    maximize_min_eigenvalue,
    multiplier_bound,
)


_WITNESS_RAYS = 1000


def _worst_boundary_ray(T: np.ndarray, cone: ConeSpec) -> np.ndarray:
    rays = boundary_sample(cone, _WITNESS_RAYS, 0)
    return rays[int(np.argmin(margins(cone, rays @ T.T)))]


def _exact(T: np.ndarray, cone: ConeSpec, mode: PositivityMode) -> Certificate:
    P = quadratic_form(cone)
    sigma_max = float(np.linalg.norm(T, 2))
    scale = float(np.linalg.norm(P, 2)) * max(1.0, sigma_max * sigma_max)
    optimum = maximize_min_eigenvalue(
        T.T @ P @ T, P, 0.0, multiplier_bound(sigma_max * sigma_max, P)
    )
    margin = optimum.value / scale

    if isinstance(cone, SyncCone) and cone.m == 1:
        # image of the cone axis must stay in the nappe selected by 1'v >= 0
        axis = cone.generators[0] / np.sqrt(cone.agents)
        if np.dot(cone.generators[0], T @ axis) < -STRICT_TOL:
            return make_certificate(-1.0, mode, axis)

    witness = None if margin >= -STRICT_TOL else _worst_boundary_ray(T, cone)
    return make_certificate(margin, mode, witness)


def _witness_column(T: np.ndarray, oriented: np.ndarray, cone: OrthantCone) -> int:
    if cone.symmetric:
        # a column with entries of both signs leaves K u -K
        mixed = np.flatnonzero((np.max(T, axis=0) > 0.0) & (np.min(T, axis=0) < 0.0))
        if mixed.size:
            return int(mixed[0])
    return int(np.argmin(oriented)) % T.shape[0]


def _sign_pattern(
    T: np.ndarray, cone: OrthantCone, mode: PositivityMode
) -> Certificate:
    scale = max(float(np.max(np.abs(T))), np.finfo(float).tiny)
    oriented = -T if cone.symmetric and np.min(-T) > np.min(T) else T
    lowest = float(np.min(oriented)) / scale
    witness = None
    if lowest < -STRICT_TOL:
        witness = np.zeros(T.shape[0])
        witness[_witness_column(T, oriented, cone)] = 1.0
    return make_certificate(lowest, mode, witness)


def _sampled(T: np.ndarray, cone: ConeSpec, mode: PositivityMode) -> Certificate:
    rays = boundary_sample(cone, mode.n_rays, mode.seed)
    image_margins = margins(cone, rays @ T.T)
    worst = int(np.argmin(image_margins))
    return make_certificate(float(image_margins[worst]), mode, rays[worst])


def is_positive_map(
    T: Any, cone: ConeSpec, mode: PositivityMode | None = None
) -> Certificate:
    """Check T(C) in C; the default mode is exact for quadratic cones,
    sign-pattern for orthants and sampled otherwise."""
    T = as_linear_map(T, cone.n)
    if mode is None:
        mode = default_mode(cone)

    match mode.kind:
        case CertificateMode.EXACT_S_PROCEDURE:
            if not isinstance(cone, (QuadraticCone, SyncCone)):
                raise UnsupportedCombinationError(
                    f"No exact map test for {type(cone).__name__}"
                )
            certificate = _exact(T, cone, mode)
        case CertificateMode.SIGN_PATTERN:
            if not isinstance(cone, OrthantCone):
                raise UnsupportedCombinationError(
                    f"Sign-pattern test needs an orthant, got {type(cone).__name__}"
                )
            certificate = _sign_pattern(T, cone, mode)
        case CertificateMode.SAMPLED:
            certificate = _sampled(T, cone, mode)

    logging.debug(
        "Map positivity (%s): positive=%s strict=%s margin=%.3e",
        mode.kind.value,
        certificate.positive,
        certificate.strict,
        certificate.margin,
    )
    return certificate


def default_mode(cone: ConeSpec) -> PositivityMode:
    """Most decisive test available for the cone variant."""
    match cone:
        case QuadraticCone() | SyncCone():
            return PositivityMode(CertificateMode.EXACT_S_PROCEDURE)
        case OrthantCone():
            return PositivityMode(CertificateMode.SIGN_PATTERN)
        case _:
            return sampled_mode()
