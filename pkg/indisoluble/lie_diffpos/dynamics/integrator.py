#!/usr/bin/env python3

"""Fixed-step Runge-Kutta-Munthe-Kaas integration on Lie groups.

Each step writes g(t + s) = g_n exp(Theta(s)) and integrates
Theta' = dexpinv_{-Theta}(Omega(g_n exp(Theta))) with the classical four-stage
Runge-Kutta tableau, truncating dexpinv after the double bracket. On abelian
groups this is the classical RK4 method. Variational flows carry a matrix of
tangent columns through the same stages.
"""

import logging

import numpy as np

from typing import Any, Callable, NamedTuple

from indisoluble.lie_diffpos.dynamics.linearization import (
    DEFAULT_H_FD,
    fd_linearization,
)
from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.dynamics.trajectory import Trajectory
from indisoluble.lie_diffpos.errors import (
    FieldBlowUpError,
    MissingLinearizationError,
)
from indisoluble.lie_diffpos.lie.group_ops import bracket, compose, exp
from indisoluble.lie_diffpos.lie.group_spec import GroupSpec
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.time_domain import TimeDomain


class _StepResult(NamedTuple):
    point: Point
    tangents: np.ndarray | None


BLOW_UP_NORM = 1e6


def _dexpinv(group: GroupSpec, theta: np.ndarray, omega: np.ndarray) -> np.ndarray:
    if group.is_abelian:
        return omega

    inner = bracket(group, theta, omega)
    return omega + 0.5 * inner + bracket(group, theta, inner) / 12.0


def _velocity(sys: SystemSpec, g: Point, t: float) -> np.ndarray:
    omega = np.asarray(sys.field(g, t), dtype=float)
    norm = float(np.linalg.norm(omega))
    if not np.isfinite(norm) or norm > BLOW_UP_NORM:
        raise FieldBlowUpError(
            f"Field norm {norm:.3e} exceeds {BLOW_UP_NORM:.0e} at t={t:.6f}",
            time=t,
            detail=norm,
        )
    return omega


def _unit_columns(tangents: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(tangents, axis=0)
    return tangents / np.where(norms > 0.0, norms, 1.0)


def _linearization_of(
    sys: SystemSpec, allow_fd: bool, h_fd: float
) -> Callable[[Point, float], np.ndarray]:
    if sys.linearization is not None:
        return sys.linearization
    if not allow_fd:
        raise MissingLinearizationError(
            "System has no analytic linearization and finite differences are disabled"
        )
    return lambda g, t: fd_linearization(sys, g, h_fd, t)


def _rkmk4_step(
    sys: SystemSpec,
    g: Point,
    t: float,
    h: float,
    tangents: np.ndarray | None,
    linearization: Callable[[Point, float], np.ndarray] | None,
) -> _StepResult:
    group = sys.group
    stage_offsets = (0.0, 0.5, 0.5, 1.0)
    weights = (1.0, 2.0, 2.0, 1.0)

    theta_increment = np.zeros(group.dim)
    tangent_increment = None if tangents is None else np.zeros_like(tangents)
    k_prev = np.zeros(group.dim)
    dv_prev = None if tangents is None else np.zeros_like(tangents)
    for offset, weight in zip(stage_offsets, weights):
        theta = offset * k_prev
        stage_point = g if offset == 0.0 else compose(g, exp(group, theta))
        stage_time = t + offset * h
        k = h * _dexpinv(group, theta, _velocity(sys, stage_point, stage_time))
        theta_increment += weight * k
        k_prev = k

        if tangents is not None:
            A = linearization(stage_point, stage_time)
            dv = h * (A @ (tangents + offset * dv_prev))
            tangent_increment += weight * dv
            dv_prev = dv

    next_point = compose(g, exp(group, theta_increment / 6.0))
    next_tangents = None if tangents is None else tangents + tangent_increment / 6.0
    return _StepResult(next_point, next_tangents)


def _integrate(
    sys: SystemSpec,
    g0: Point,
    T: float,
    h: float,
    h_report: float | None,
    v0: Any,
    linearization: Callable[[Point, float], np.ndarray] | None,
    normalize: bool = False,
) -> Trajectory:
    if sys.time_domain is not TimeDomain.CONTINUOUS:
        raise ValueError("Flows need a continuous-time system; use iterate instead")
    if g0.group != sys.group:
        raise ValueError(f"Initial point of {g0.group} does not match {sys.group}")
    if not 0.0 < h <= T:
        raise ValueError(f"Step must satisfy 0 < h <= T, got h={h}, T={T}")

    n_steps = max(1, int(round(T / h)))
    report_every = 1 if h_report is None else max(1, int(round(h_report / h)))
    tangents = None if v0 is None else np.array(v0, dtype=float)
    if tangents is not None and tangents.shape[0] != sys.group.dim:
        raise ValueError(
            f"Tangents must have {sys.group.dim} rows, got shape {tangents.shape}"
        )
    if tangents is not None and normalize:
        tangents = _unit_columns(tangents)

    times = [0.0]
    points = [g0]
    samples = None if tangents is None else [tangents.copy()]
    g = g0
    for step in range(1, n_steps + 1):
        t = (step - 1) * h
        try:
            g, tangents = _rkmk4_step(sys, g, t, h, tangents, linearization)
        except FieldBlowUpError as ex:
            partial = Trajectory(
                np.array(times),
                tuple(points),
                None if samples is None else np.array(samples),
            )
            logging.warning("Integration stopped at t=%.6f: %s", t, ex)
            raise ex.with_trajectory(partial) from ex

        if step % report_every == 0 or step == n_steps:
            times.append(step * h)
            points.append(g)
            if samples is not None:
                if normalize:
                    tangents = _unit_columns(tangents)
                samples.append(tangents.copy())

    logging.debug("Integrated %d steps of size %.3e", n_steps, h)
    return Trajectory(
        np.array(times), tuple(points), None if samples is None else np.array(samples)
    )


def flow(
    sys: SystemSpec, g0: Point, T: float, h: float, *, h_report: float | None = None
) -> Trajectory:
    """Integrate g' = g Omega(g, t) from g0 over [0, T] with fixed step h.

    Samples are kept every h_report (every step by default) and at the end.
    """
    return _integrate(sys, g0, T, h, h_report, None, None)


def variational_flow(
    sys: SystemSpec,
    g0: Point,
    v0: Any,
    T: float,
    h: float,
    *,
    h_report: float | None = None,
    allow_fd: bool = True,
    h_fd: float = DEFAULT_H_FD,
    normalize: bool = False,
) -> Trajectory:
    """Integrate the base flow jointly with v' = A(g(t), t) v.

    v0 is a frame-coordinate vector or a matrix whose columns are propagated
    together (the fundamental matrix when v0 is the identity).

    With normalize every tangent column is rescaled to unit norm at the start
    and at each report time.
    """
    linearization = _linearization_of(sys, allow_fd, h_fd)
    return _integrate(sys, g0, T, h, h_report, v0, linearization, normalize)


def iterate(
    sys: SystemSpec, g0: Point, steps: int, *, v0: Any = None
) -> Trajectory:
    """Iterate a discrete system, optionally pushing tangents forward."""
    if sys.time_domain is not TimeDomain.DISCRETE:
        raise ValueError("Iteration needs a discrete-time system")
    if steps < 1:
        raise ValueError(f"Iteration needs at least one step, got {steps}")
    if v0 is not None and sys.linearization is None:
        raise MissingLinearizationError("Discrete system has no linearization")

    tangents = None if v0 is None else np.array(v0, dtype=float)
    points = [g0]
    samples = None if tangents is None else [tangents.copy()]
    g = g0
    for k in range(steps):
        if tangents is not None:
            tangents = sys.linearization(g, k) @ tangents
            samples.append(tangents.copy())
        g = sys.update(g, k)
        points.append(g)

    return Trajectory(
        np.arange(steps + 1, dtype=float),
        tuple(points),
        None if samples is None else np.array(samples),
    )
