#!/usr/bin/env python3

"""Positivity of generators: the flow of v' = Av leaves the cone invariant.

The test is subtangentiality: on every boundary direction the vector Av must
point into the cone, i.e. have non-negative flux through each active face.
"""

import logging

import numpy as np

from typing import Any

from indisoluble.lie_diffpos.cones.boundary import boundary_sample
from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    PolyhedralCone,
    QuadraticCone,
    SyncCone,
    quadratic_form,
    unit_normals,
)
from indisoluble.lie_diffpos.cones.membership import BOUNDARY_TOL
from indisoluble.lie_diffpos.errors import UnsupportedCombinationError
from indisoluble.lie_diffpos.positivity.certificate import (
    STRICT_TOL,
    Certificate,
    CertificateMode,
    PositivityMode,
    make_certificate,
)
from indisoluble.lie_diffpos.positivity.linear_map import as_linear_map
from indisoluble.lie_diffpos.positivity.positive_map import default_mode
from indisoluble.lie_diffpos.positivity.s_procedure import (
    maximize_min_eigenvalue,
    multiplier_bound,
)


_WITNESS_RAYS = 1000


def boundary_fluxes(A: np.ndarray, cone: ConeSpec, rays: np.ndarray) -> np.ndarray:
    """Smallest inward flux of A at each unit boundary ray.

    Polyhedral cones use the unit normals of the active constraints; quadratic
    cones use dQ/dt = 2 v'PAv.
    """
    velocities = rays @ A.T
    match cone:
        case OrthantCone() | PolyhedralCone():
            normals = unit_normals(cone)
            active = np.abs(rays @ normals.T) <= BOUNDARY_TOL
            flux = np.where(active, velocities @ normals.T, np.inf)
            return np.min(flux, axis=1)
        case _:
            P = quadratic_form(cone)
            return 2.0 * np.einsum("ri,ij,rj->r", rays, P, velocities)


def _exact(A: np.ndarray, cone: ConeSpec, mode: PositivityMode) -> Certificate:
    # lossless S-lemma for the equality v'Pv = 0: the multiplier is free in sign
    P = quadratic_form(cone)
    a_norm = float(np.linalg.norm(A, 2))
    bound = multiplier_bound(2.0 * a_norm, P)
    optimum = maximize_min_eigenvalue(A.T @ P + P @ A, P, -bound, bound)
    scale = float(np.linalg.norm(P, 2)) * max(1.0, a_norm)
    margin = optimum.value / scale

    witness = None
    if not make_certificate(margin, mode, None).positive:
        rays = boundary_sample(cone, _WITNESS_RAYS, 0)
        witness = rays[int(np.argmin(boundary_fluxes(A, cone, rays)))]
    return make_certificate(margin, mode, witness)


def _sign_pattern(A: np.ndarray, mode: PositivityMode) -> Certificate:
    n = A.shape[0]
    off_diagonal = A / max(float(np.max(np.abs(A))), np.finfo(float).tiny)
    np.fill_diagonal(off_diagonal, np.inf)
    k, i = np.unravel_index(int(np.argmin(off_diagonal)), off_diagonal.shape)
    if off_diagonal[k, i] < -STRICT_TOL:
        # e_i lies on the face x_k = 0 and A e_i leaves through it
        witness = np.zeros(n)
        witness[i] = 1.0
        return make_certificate(float(off_diagonal[k, i]), mode, witness)

    # Metzler: strict exactly when the coupling graph is strongly connected
    np.fill_diagonal(off_diagonal, 0.0)
    reach = np.linalg.matrix_power(np.eye(n) + np.abs(off_diagonal), n - 1)
    return make_certificate(float(np.min(reach) / np.max(reach)), mode, None)


def _sampled(A: np.ndarray, cone: ConeSpec, mode: PositivityMode) -> Certificate:
    rays = boundary_sample(cone, mode.n_rays, mode.seed)
    flux = boundary_fluxes(A, cone, rays)
    worst = int(np.argmin(flux))
    return make_certificate(float(flux[worst]), mode, rays[worst])


def is_positive_generator(
    A: Any, cone: ConeSpec, mode: PositivityMode | None = None
) -> Certificate:
    """Check that exp(tA) is positive for every t >= 0.

    Defaults: exact S-lemma for quadratic cones, Metzler sign pattern for
    orthants, boundary-ray flux sampling otherwise.
    """
    A = as_linear_map(A, cone.n)
    if mode is None:
        mode = default_mode(cone)

    match mode.kind:
        case CertificateMode.EXACT_S_PROCEDURE:
            if not isinstance(cone, (QuadraticCone, SyncCone)):
                raise UnsupportedCombinationError(
                    f"No exact generator test for {type(cone).__name__}"
                )
            certificate = _exact(A, cone, mode)
        case CertificateMode.SIGN_PATTERN:
            if not isinstance(cone, OrthantCone):
                raise UnsupportedCombinationError(
                    f"Sign-pattern test needs an orthant, got {type(cone).__name__}"
                )
            certificate = _sign_pattern(A, mode)
        case CertificateMode.SAMPLED:
            certificate = _sampled(A, cone, mode)

    logging.debug(
        "Generator positivity (%s): positive=%s strict=%s margin=%.3e",
        mode.kind.value,
        certificate.positive,
        certificate.strict,
        certificate.margin,
    )
    return certificate
