#!/usr/bin/env python3

"""Damped, forced planar pendulum on the cylinder S^1 x R."""

import numpy as np

from indisoluble.lie_diffpos.dynamics.system_spec import (
    META_COORDINATE_NAMES,
    META_MODEL,
    SystemSpec,
    make_system,
)
from indisoluble.lie_diffpos.errors import BadParamsError
from indisoluble.lie_diffpos.lie.group_spec import cylinder
from indisoluble.lie_diffpos.lie.point import Point


MODEL_NAME = "pendulum"


def pendulum(rho: float, u: float) -> SystemSpec:
    """theta' = v, v' = -sin(theta) - rho v + u with damping rho >= 0."""
    if not np.isfinite(rho) or rho < 0.0:
        raise BadParamsError(f"Damping rho must be non-negative, got {rho}")
    if not np.isfinite(u):
        raise BadParamsError(f"Torque u must be finite, got {u}")

    rho = float(rho)
    u = float(u)

    def field(g: Point, t: float) -> np.ndarray:
        theta, v = g.coords
        return np.array([v, -np.sin(theta) - rho * v + u])

    def linearization(g: Point, t: float) -> np.ndarray:
        return np.array([[0.0, 1.0], [-np.cos(g.coords[0]), -rho]])

    return make_system(
        cylinder(),
        field,
        linearization,
        meta={
            META_MODEL: MODEL_NAME,
            META_COORDINATE_NAMES: ("theta", "v"),
            "rho": rho,
            "u": u,
        },
    )
