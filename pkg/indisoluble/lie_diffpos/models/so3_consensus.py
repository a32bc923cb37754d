#!/usr/bin/env python3

"""Consensus of rigid-body attitudes on SO(3)^N.

Agent k moves with body velocity Omega_k + sum over edges (k, i) of
a_ki(t) f(theta_ki) u_ki, where x_ki = log(g_k^-1 g_i) = theta_ki u_ki is the
geodesic from g_k to g_i in the body frame of g_k. Each pairwise block of the
linearization is evaluated in the adapted basis {u1, u2, u3}, u1 radial, and
conjugated back into frame coordinates.
"""

import numpy as np

from typing import Any

from indisoluble.lie_diffpos.dynamics.integrator import BLOW_UP_NORM
from indisoluble.lie_diffpos.dynamics.system_spec import (
    META_DOMINANT_BASIS,
    META_MODEL,
    SystemSpec,
    make_system,
)
from indisoluble.lie_diffpos.errors import (
    BadParamsError,
    FieldBlowUpError,
    OutOfDomainError,
)
from indisoluble.lie_diffpos.lie.group_spec import so3_power
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.lie.so3 import hat, so3_log
from indisoluble.lie_diffpos.models.coupling import SO3Reshape
from indisoluble.lie_diffpos.models.digraph import Digraph


_SMALL_ANGLE = 1e-8

MODEL_NAME = "so3_consensus"


def _relative_logs(graph: Digraph, rotations: np.ndarray) -> np.ndarray:
    sources, targets = graph.edge_arrays()
    relative = np.transpose(rotations[sources], (0, 2, 1)) @ rotations[targets]
    return so3_log(relative)


def _radial_gains(reshape: SO3Reshape, angles: np.ndarray) -> np.ndarray:
    small = angles < _SMALL_ANGLE
    safe = np.where(small, 1.0, angles)
    return np.where(small, reshape.fprime(0.0), reshape.f(safe) / safe)


def adapted_basis(radial: np.ndarray) -> np.ndarray:
    """Right-handed orthonormal basis with first column along radial,
    completed by Gram-Schmidt from the least-aligned canonical axis."""
    u1 = np.asarray(radial, dtype=float)
    u1 = u1 / np.linalg.norm(u1)
    seed = np.zeros(3)
    seed[np.argmin(np.abs(u1))] = 1.0
    u2 = seed - np.dot(seed, u1) * u1
    u2 /= np.linalg.norm(u2)
    return np.column_stack([u1, u2, np.cross(u1, u2)])


def so3_block(reshape: SO3Reshape, r: float) -> np.ndarray:
    """Covariant derivative of f(r) d/dr in the adapted basis.

    [[f'(r), 0, 0], [0, c, f/2], [0, -f/2, c]] with c = (f/2) cot(r/2); the
    eigenvalues are f'(r) and (f/2)(cot(r/2) -+ i).

    Raises:
        OutOfDomainError: If r is not in (0, pi)
    """
    if not 0.0 < r < np.pi:
        raise OutOfDomainError(f"Geodesic distance {r} is outside (0, pi)")

    f = float(reshape.f(r))
    c = 0.5 * f / np.tan(0.5 * r)
    return np.array(
        [
            [float(reshape.fprime(r)), 0.0, 0.0],
            [0.0, c, 0.5 * f],
            [0.0, -0.5 * f, c],
        ]
    )


def pairwise_block(reshape: SO3Reshape, x: np.ndarray) -> np.ndarray:
    """Linearization block of f(theta) u with respect to the neighbour, in the
    body frame of the listening agent; x is the geodesic log(g_k^-1 g_i)."""
    r = float(np.linalg.norm(x))
    if r < _SMALL_ANGLE:
        return float(reshape.fprime(0.0)) * np.eye(3)

    # u1 points away from the neighbour
    basis = adapted_basis(-np.asarray(x, dtype=float))
    return basis @ so3_block(reshape, r) @ basis.T


def so3_consensus(graph: Digraph, reshape: SO3Reshape, omegas: Any) -> SystemSpec:
    """Build the attitude consensus protocol with intrinsic velocities
    omegas, one algebra element (3 coordinates) per agent."""
    agents = graph.agents
    omegas = np.array(omegas, dtype=float)
    if omegas.size != 3 * agents or not np.all(np.isfinite(omegas)):
        raise BadParamsError(
            f"Expected {agents} finite intrinsic velocities of 3 coordinates each"
        )
    omegas = omegas.reshape(agents, 3)
    sources, targets = graph.edge_arrays()

    def field(g: Point, t: float) -> np.ndarray:
        x = _relative_logs(graph, g.coords)
        gains = graph.weights_at(t) * _radial_gains(reshape, np.linalg.norm(x, axis=1))
        terms = gains[:, None] * x
        norms = np.linalg.norm(terms, axis=1)
        bad = ~np.isfinite(norms) | (norms > BLOW_UP_NORM)
        if np.any(bad):
            edge = graph.edges[int(np.argmax(bad))]
            raise FieldBlowUpError(
                f"Reshaping on edge {edge} diverged at t={t:.6f}", time=t, detail=edge
            )

        velocity = omegas.copy()
        np.add.at(velocity, sources, terms)
        return velocity.reshape(-1)

    def linearization(g: Point, t: float) -> np.ndarray:
        x = _relative_logs(graph, g.coords)
        weights = graph.weights_at(t)
        A = np.zeros((3 * agents, 3 * agents))
        for edge, (k, i) in enumerate(graph.edges):
            if weights[edge] == 0.0:
                continue

            block = weights[edge] * pairwise_block(reshape, x[edge])
            A[3 * k : 3 * k + 3, 3 * i : 3 * i + 3] += block
            A[3 * k : 3 * k + 3, 3 * k : 3 * k + 3] -= block

        for k in range(agents):
            A[3 * k : 3 * k + 3, 3 * k : 3 * k + 3] -= hat(omegas[k])
        return A

    return make_system(
        so3_power(agents),
        field,
        linearization,
        meta={
            META_MODEL: MODEL_NAME,
            META_DOMINANT_BASIS: tuple(np.tile(e, agents) for e in np.eye(3)),
            "reshape": reshape.kind.value,
        },
    )
