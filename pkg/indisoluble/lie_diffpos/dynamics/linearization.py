#!/usr/bin/env python3

"""Finite-difference linearizations in left-invariant frame coordinates.

For g' = g Omega(g) the body-frame variational equation is
v' = (D Omega(g) - ad_Omega(g)) v, where D differentiates along the curves
g exp(s e_j). Column j of the linearization is therefore the central
difference of Omega along g exp(s e_j) minus the bracket [Omega(g), e_j].
The bracket term vanishes on abelian groups.
"""

import numpy as np

from typing import Any, Callable

from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.lie.group_ops import bracket, compose, exp, inverse, log
from indisoluble.lie_diffpos.lie.point import Point


_H_FD_MAX = 1e-3
_H_FD_MIN = 1e-7

DEFAULT_H_FD = 1e-5


def _check_step(h_fd: float) -> None:
    if not _H_FD_MIN <= h_fd <= _H_FD_MAX:
        raise ValueError(
            f"Finite-difference step must lie in [{_H_FD_MIN}, {_H_FD_MAX}], got {h_fd}"
        )


def _richardson(central: Callable[[float], np.ndarray], h_fd: float) -> np.ndarray:
    return (4.0 * central(0.5 * h_fd) - central(h_fd)) / 3.0


def fd_linearization(
    sys: SystemSpec, g: Point, h_fd: float = DEFAULT_H_FD, t: float = 0.0
) -> np.ndarray:
    """Linearization of the body-frame field at g by Richardson-extrapolated
    central differences plus the frame-transport bracket correction."""
    _check_step(h_fd)
    group = sys.group
    omega = np.asarray(sys.field(g, t), dtype=float)
    A = np.empty((group.dim, group.dim))
    for j in range(group.dim):
        e_j = np.zeros(group.dim)
        e_j[j] = 1.0

        def central(s: float) -> np.ndarray:
            forward = sys.field(compose(g, exp(group, s * e_j)), t)
            backward = sys.field(compose(g, exp(group, -s * e_j)), t)
            return (np.asarray(forward) - np.asarray(backward)) / (2.0 * s)

        A[:, j] = _richardson(central, h_fd) - bracket(group, omega, e_j)

    return A


def discrete_pushforward(
    F: Callable[[Point], Point], g: Point, v: Any, h_fd: float = DEFAULT_H_FD
) -> np.ndarray:
    """Frame coordinates of dF_g v pulled back to the frame at F(g)."""
    _check_step(h_fd)
    group = g.group
    v = np.asarray(v, dtype=float)
    base_inverse = inverse(F(g))

    def displacement(s: float) -> np.ndarray:
        moved = F(compose(g, exp(group, s * v)))
        return log(group, compose(base_inverse, moved))

    def central(s: float) -> np.ndarray:
        return (displacement(s) - displacement(-s)) / (2.0 * s)

    return _richardson(central, h_fd)


def pushforward_matrix(
    F: Callable[[Point], Point], g: Point, h_fd: float = DEFAULT_H_FD
) -> np.ndarray:
    """Matrix of the discrete pushforward, assembled column by column."""
    dim = g.group.dim
    return np.column_stack(
        [discrete_pushforward(F, g, np.eye(dim)[j], h_fd) for j in range(dim)]
    )
