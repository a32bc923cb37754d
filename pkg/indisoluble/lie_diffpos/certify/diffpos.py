#!/usr/bin/env python3

"""Sampled certification of uniform strict differential positivity.

For a left-invariant cone field the cone is the same set in frame coordinates
at every point, so propagating boundary rays with the variational flow and
grading them against one cone is enough. A state passes when no propagated
ray leaves the cone before the horizon T and every ray lies in the
eps-contracted cone from T on. The outcome is numerical evidence over finitely
many states and rays, not a proof.
"""

import logging

import numpy as np

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, NamedTuple

from indisoluble.lie_diffpos.certify.region import RegionSampler
from indisoluble.lie_diffpos.cones.boundary import boundary_sample
from indisoluble.lie_diffpos.cones.cone_json import cone_to_dict
from indisoluble.lie_diffpos.cones.cone_spec import ConeSpec
from indisoluble.lie_diffpos.cones.membership import BOUNDARY_TOL, margins
from indisoluble.lie_diffpos.dynamics.integrator import variational_flow
from indisoluble.lie_diffpos.dynamics.linearization import (
    DEFAULT_H_FD,
    pushforward_matrix,
)
from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.errors import (
    CutLocusError,
    DimensionMismatchError,
    DomainViolationError,
    FieldBlowUpError,
)
from indisoluble.lie_diffpos.lie.group_spec import GroupSpec
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.positivity.certificate import (
    Certificate,
    PositivityMode,
    mode_to_dict,
)
from indisoluble.lie_diffpos.positivity.positive_map import (
    default_mode,
    is_positive_map,
)
from indisoluble.lie_diffpos.time_domain import TimeDomain


class WorstCase(NamedTuple):
    """Location of the smallest relevant margin of a certification run."""

    state: int
    ray: int
    time: float
    margin: float
    point: tuple[float, ...]
    tangent: tuple[float, ...]


class DPCertificate(NamedTuple):
    """Outcome of certify_diffpos.

    worst_case is the first failing (state, ray, time) when the run fails and
    the location of min_final_margin when it passes.
    """

    passed: bool
    T: float
    eps: float
    n_states: int
    n_rays: int
    seed: int
    min_final_margin: float
    worst_case: WorstCase | None
    n_valid: int
    n_voided: int
    notes: tuple[str, ...]


class DiscreteMapCertificate(NamedTuple):
    """Outcome of certify_discrete_map over sampled states."""

    positive: bool
    strict: bool
    min_margin: float
    worst_state: int
    witness: np.ndarray | None
    n_states: int
    seed: int


class _StateOutcome(NamedTuple):
    index: int
    voided: str | None
    failure: WorstCase | None
    final: WorstCase | None


_NOTES = (
    "Sampled evidence over finitely many states and rays, not a proof.",
    "Bounded growth of the propagated rays is only checked over the finite horizon.",
)


def _worst(
    index: int, margin_grid: np.ndarray, times: np.ndarray, traj: Any, mask: np.ndarray
) -> WorstCase | None:
    if not np.any(mask):
        return None

    masked = np.where(mask[:, None], margin_grid, np.inf)
    sample, ray = np.unravel_index(int(np.argmin(masked)), masked.shape)
    tangent = traj.tangents[sample][:, ray]
    return WorstCase(
        state=index,
        ray=int(ray),
        time=float(times[sample]),
        margin=float(margin_grid[sample, ray]),
        point=tuple(traj.points[sample].flat().tolist()),
        tangent=tuple((tangent / np.linalg.norm(tangent)).tolist()),
    )


def _grade_state(
    sys: SystemSpec,
    cone: ConeSpec,
    region: RegionSampler,
    index: int,
    g0: Point,
    rays: np.ndarray,
    T: float,
    horizon: float,
    eps: float,
    h: float,
    h_report: float,
) -> _StateOutcome:
    try:
        traj = variational_flow(
            sys, g0, rays.T, horizon, h, h_report=h_report, normalize=True
        )
    except (FieldBlowUpError, CutLocusError, DomainViolationError) as ex:
        logging.warning("Voiding state %d: %s", index, ex)
        return _StateOutcome(index, str(ex), None, None)

    if not all(region.contains(point) for point in traj.points):
        logging.warning(
            "Voiding state %d: trajectory leaves %s", index, region.description
        )
        return _StateOutcome(index, "trajectory leaves the region", None, None)

    times = traj.times
    # rows: samples, columns: rays; margins are scale free
    margin_grid = np.stack([margins(cone, columns.T) for columns in traj.tangents])
    before = times < T - 0.5 * h
    after = ~before

    failure = None
    outside = before[:, None] & (margin_grid < -BOUNDARY_TOL)
    not_contracted = after[:, None] & (margin_grid < eps)
    failing = outside | not_contracted
    if np.any(failing):
        sample = int(np.argmax(np.any(failing, axis=1)))
        row_mask = np.zeros(len(times), dtype=bool)
        row_mask[sample] = True
        grid = np.where(failing, margin_grid, np.inf)
        failure = _worst(index, grid, times, traj, row_mask)

    final = _worst(index, margin_grid, times, traj, after)
    return _StateOutcome(index, None, failure, final)


def certify_diffpos(
    sys: SystemSpec,
    cone: ConeSpec,
    region: RegionSampler,
    T: float,
    eps: float,
    n_states: int,
    n_rays: int,
    seed: int,
    *,
    h: float = 1e-3,
    h_report: float | None = None,
    horizon: float | None = None,
    threads: int = 1,
) -> DPCertificate:
    """Certify that the flow maps cone boundary rays into the eps-cone by T.

    Each of n_states states drawn from region carries the same n_rays boundary
    rays through one variational integration up to horizon (T by default).
    States whose trajectory blows up, hits a singularity of the protocol or
    leaves the region are voided and reported; the run fails when no valid
    state remains.
    """
    if cone.n != sys.group.dim:
        raise DimensionMismatchError(
            f"Cone dimension {cone.n} does not match group dimension {sys.group.dim}"
        )
    if region.group != sys.group:
        raise DimensionMismatchError(
            f"Region over {region.group} does not match {sys.group}"
        )
    if sys.time_domain is not TimeDomain.CONTINUOUS:
        raise ValueError("Continuous certification needs a continuous-time system")
    if not T > 0.0 or not 0.0 < eps < 1.0:
        raise ValueError(f"Need T > 0 and 0 < eps < 1, got T={T}, eps={eps}")

    horizon = T if horizon is None else max(horizon, T)
    h_report = 10.0 * h if h_report is None else h_report
    states = region.sample(seed, n_states)
    rays = boundary_sample(cone, n_rays, seed)

    def grade(item: tuple[int, Point]) -> _StateOutcome:
        index, g0 = item
        return _grade_state(
            sys, cone, region, index, g0, rays, T, horizon, eps, h, h_report
        )

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        outcomes = sorted(executor.map(grade, enumerate(states)), key=lambda o: o.index)

    valid = [o for o in outcomes if o.voided is None]
    failures = [o.failure for o in valid if o.failure is not None]
    finals = [o.final for o in valid if o.final is not None]
    min_final = min((w.margin for w in finals), default=float("nan"))

    passed = bool(valid) and not failures
    if failures:
        worst_case = failures[0]
    else:
        worst_case = min(finals, key=lambda w: w.margin, default=None)

    logging.info(
        "Certification %s: %d valid, %d voided states, min final margin %.6f",
        "passed" if passed else "failed",
        len(valid),
        len(outcomes) - len(valid),
        min_final,
    )
    return DPCertificate(
        passed=passed,
        T=float(T),
        eps=float(eps),
        n_states=n_states,
        n_rays=n_rays,
        seed=seed,
        min_final_margin=float(min_final),
        worst_case=worst_case,
        n_valid=len(valid),
        n_voided=len(outcomes) - len(valid),
        notes=_NOTES,
    )


def certify_discrete_map(
    F: Callable[[Point], Point],
    group: GroupSpec,
    cone: ConeSpec,
    region: RegionSampler,
    n_states: int,
    seed: int,
    mode: PositivityMode | None = None,
    h_fd: float = DEFAULT_H_FD,
) -> DiscreteMapCertificate:
    """Check positivity of the pushforward of F at sampled states."""
    if cone.n != group.dim:
        raise DimensionMismatchError(
            f"Cone dimension {cone.n} does not match group dimension {group.dim}"
        )

    mode = mode or default_mode(cone)
    certificates: list[Certificate] = [
        is_positive_map(pushforward_matrix(F, g, h_fd), cone, mode)
        for g in region.sample(seed, n_states)
    ]
    worst = int(np.argmin([c.margin for c in certificates]))
    return DiscreteMapCertificate(
        positive=all(c.positive for c in certificates),
        strict=all(c.strict for c in certificates),
        min_margin=certificates[worst].margin,
        worst_state=worst,
        witness=certificates[worst].witness,
        n_states=n_states,
        seed=seed,
    )


def dp_certificate_to_dict(
    certificate: DPCertificate, cone: ConeSpec | None = None
) -> dict[str, Any]:
    """JSON document of a certificate; non-finite margins become null."""
    worst = certificate.worst_case
    document = {
        "pass": certificate.passed,
        "T": certificate.T,
        "eps": certificate.eps,
        "n_states": certificate.n_states,
        "n_rays": certificate.n_rays,
        "seed": certificate.seed,
        "min_final_margin": (
            certificate.min_final_margin
            if np.isfinite(certificate.min_final_margin)
            else None
        ),
        "worst_case": None if worst is None else worst._asdict(),
        "n_valid": certificate.n_valid,
        "n_voided": certificate.n_voided,
        "notes": list(certificate.notes),
    }
    if cone is not None:
        document["cone"] = cone_to_dict(cone)
    return document


def discrete_certificate_to_dict(
    certificate: DiscreteMapCertificate, mode: PositivityMode
) -> dict[str, Any]:
    return {
        "positive": certificate.positive,
        "strict": certificate.strict,
        "min_margin": certificate.min_margin,
        "worst_state": certificate.worst_state,
        "witness": (
            None if certificate.witness is None else certificate.witness.tolist()
        ),
        "n_states": certificate.n_states,
        "seed": certificate.seed,
        "mode": mode_to_dict(mode),
    }
