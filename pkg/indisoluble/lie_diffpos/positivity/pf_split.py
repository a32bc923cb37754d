#!/usr/bin/env python3

"""Rank-k Perron-Frobenius splitting of strictly positive maps.

A map that is strictly positive with respect to a cone of rank k has a
dominant invariant subspace W1 of dimension k inside the cone interior and a
complementary invariant subspace W2 meeting the cone only at the origin.
Both are read off ordered real Schur forms.
"""

import numpy as np
import scipy.linalg

from typing import Any, NamedTuple

from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    PolyhedralCone,
    quadratic_form,
    rank_of,
)
from indisoluble.lie_diffpos.cones.membership import BOUNDARY_TOL, margins
from indisoluble.lie_diffpos.errors import (
    ConeViolationError,
    DegenerateDirectionError,
    GapDegenerateError,
)
from indisoluble.lie_diffpos.positivity.linear_map import as_linear_map


class PFSplit(NamedTuple):
    """Direct-sum split R^n = W1 + W2 with orthonormal bases of each part."""

    W1: np.ndarray
    W2: np.ndarray
    gap: float


_DEGENERATE_TOL = 1e-12
_GAP_TOL = 1e-9
_SUBSPACE_CHECKS = 256


def _invariant_basis(T: np.ndarray, select: Any, size: int) -> np.ndarray:
    _, Z, sdim = scipy.linalg.schur(T, output="real", sort=select)
    if sdim != size:
        raise GapDegenerateError(
            f"Ordered Schur form selected {sdim} eigenvalues, expected {size}"
        )
    return Z[:, :size]


def _orient_into_cone(W1: np.ndarray, cone: ConeSpec) -> np.ndarray:
    # Schur vectors carry no sign; one-nappe cones need the inward one
    if W1.shape[1] != 1:
        return W1

    inward, outward = margins(cone, np.vstack([W1.T, -W1.T]))
    return -W1 if outward > inward else W1


def _random_span_vectors(basis: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    coefficients = rng.normal(size=(_SUBSPACE_CHECKS, basis.shape[1]))
    return coefficients @ basis.T


def _check_dominant_inside(W1: np.ndarray, cone: ConeSpec, rng: np.random.Generator):
    vectors = W1.T if W1.shape[1] == 1 else _random_span_vectors(W1, rng)
    if np.min(margins(cone, vectors)) <= BOUNDARY_TOL:
        raise ConeViolationError("Dominant subspace is not inside the cone interior")


def _check_rest_outside(W2: np.ndarray, cone: ConeSpec, rng: np.random.Generator):
    if W2.shape[1] == 0:
        return

    if isinstance(cone, (OrthantCone, PolyhedralCone)):
        if np.max(margins(cone, _random_span_vectors(W2, rng))) >= -BOUNDARY_TOL:
            raise ConeViolationError("Complementary subspace meets the cone")
        return

    restricted = W2.T @ quadratic_form(cone) @ W2
    if np.max(np.linalg.eigvalsh(0.5 * (restricted + restricted.T))) >= -BOUNDARY_TOL:
        raise ConeViolationError("Quadratic form is not negative definite on W2")


def pf_split(T: Any, cone: ConeSpec, *, seed: int = 0) -> PFSplit:
    """Split T into its k dominant and n - k remaining invariant subspaces."""
    T = as_linear_map(T, cone.n)
    n = T.shape[0]
    k = rank_of(cone)
    if not 1 <= k < n:
        raise GapDegenerateError(f"Cone rank {k} leaves nothing to split in R^{n}")

    moduli = np.sort(np.abs(np.linalg.eigvals(T)))[::-1]
    top, rest = moduli[k - 1], moduli[k]
    if top - rest <= _GAP_TOL * top:
        raise GapDegenerateError(
            f"Eigenvalue moduli {top:.6e} and {rest:.6e} do not separate at rank {k}"
        )

    threshold = 0.5 * (top + rest)
    W1 = _orient_into_cone(
        _invariant_basis(T, lambda re, im: np.hypot(re, im) > threshold, k), cone
    )
    W2 = _invariant_basis(T, lambda re, im: np.hypot(re, im) < threshold, n - k)

    rng = np.random.default_rng(seed)
    _check_dominant_inside(W1, cone, rng)
    _check_rest_outside(W2, cone, rng)

    gap = float(top / rest) if rest > 0.0 else float("inf")
    return PFSplit(W1, W2, gap)


def contraction_ratio(v: Any, split: PFSplit) -> float:
    """Ratio |v2| / |v1| of the oblique decomposition v = v1 + v2."""
    v = np.asarray(v, dtype=float)
    k = split.W1.shape[1]
    coefficients = np.linalg.solve(np.hstack([split.W1, split.W2]), v)
    v1 = split.W1 @ coefficients[:k]
    v2 = split.W2 @ coefficients[k:]
    norm_v1 = float(np.linalg.norm(v1))
    if norm_v1 <= _DEGENERATE_TOL * float(np.linalg.norm(v)):
        raise DegenerateDirectionError("Vector has no component along W1")

    return float(np.linalg.norm(v2)) / norm_v1


def pf_split_to_dict(split: PFSplit) -> dict[str, Any]:
    """JSON document of a split; an infinite gap is written as null."""
    return {
        "W1": split.W1.tolist(),
        "W2": split.W2.tolist(),
        "gap": split.gap if np.isfinite(split.gap) else None,
    }
