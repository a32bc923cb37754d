#!/usr/bin/env python3

"""Phase-oscillator networks on the N-torus.

theta_k' = omega_k + sum over edges (k, i) of a_ki(t) f_ki(theta_i - theta_k),
with the phase difference wrapped into the window of each coupling. The
linearization is the weighted Laplacian-like matrix with A_ki = a_ki f'_ki and
A_kk = -sum_i A_ki, so that A 1 = 0 at every state.
"""

import numpy as np

from typing import Any, Sequence

from indisoluble.lie_diffpos.dynamics.integrator import BLOW_UP_NORM
from indisoluble.lie_diffpos.dynamics.system_spec import (
    META_DOMINANT_BASIS,
    META_MODEL,
    SystemSpec,
    make_system,
)
from indisoluble.lie_diffpos.errors import BadParamsError, FieldBlowUpError
from indisoluble.lie_diffpos.lie.group_spec import torus
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.models.coupling import Coupling, wrap_into_domain
from indisoluble.lie_diffpos.models.digraph import Digraph


MODEL_NAME = "torus_consensus"


def _edge_groups(
    graph: Digraph, couplings: Coupling | Sequence[Coupling]
) -> list[tuple[Coupling, np.ndarray]]:
    if isinstance(couplings, Coupling):
        return [(couplings, np.arange(len(graph.edges)))]

    couplings = list(couplings)
    if len(couplings) != len(graph.edges):
        raise BadParamsError(
            f"Expected one coupling per edge ({len(graph.edges)}), got {len(couplings)}"
        )

    groups: dict[int, tuple[Coupling, list[int]]] = {}
    for index, coupling in enumerate(couplings):
        groups.setdefault(id(coupling), (coupling, []))[1].append(index)
    return [(coupling, np.array(indices)) for coupling, indices in groups.values()]


def _edge_terms(
    graph: Digraph,
    groups: list[tuple[Coupling, np.ndarray]],
    theta: np.ndarray,
    t: float,
    derivative: bool,
) -> np.ndarray:
    sources, targets = graph.edge_arrays()
    weights = graph.weights_at(t)
    terms = np.zeros(len(graph.edges))
    for coupling, indices in groups:
        present = indices[weights[indices] > 0.0]
        if present.size == 0:
            continue

        differences = theta[targets[present]] - theta[sources[present]]
        alpha = wrap_into_domain(coupling, differences)
        fn = coupling.fprime if derivative else coupling.f
        terms[present] = weights[present] * fn(alpha)
    return terms


def torus_consensus(
    graph: Digraph, couplings: Coupling | Sequence[Coupling], omegas: Any
) -> SystemSpec:
    """Build the oscillator network; couplings is one coupling for every
    edge or a sequence aligned with graph.edges."""
    omegas = np.array(omegas, dtype=float).reshape(-1)
    if omegas.shape != (graph.agents,):
        raise BadParamsError(
            f"Expected {graph.agents} intrinsic frequencies, got {omegas.shape[0]}"
        )
    if not np.all(np.isfinite(omegas)):
        raise BadParamsError("Intrinsic frequencies must be finite")

    groups = _edge_groups(graph, couplings)
    sources, targets = graph.edge_arrays()
    agents = graph.agents

    def field(g: Point, t: float) -> np.ndarray:
        terms = _edge_terms(graph, groups, g.coords, t, derivative=False)
        bad = ~np.isfinite(terms) | (np.abs(terms) > BLOW_UP_NORM)
        if np.any(bad):
            edge = graph.edges[int(np.argmax(bad))]
            raise FieldBlowUpError(
                f"Coupling on edge {edge} diverged at t={t:.6f}", time=t, detail=edge
            )
        return omegas + np.bincount(sources, weights=terms, minlength=agents)

    def linearization(g: Point, t: float) -> np.ndarray:
        terms = _edge_terms(graph, groups, g.coords, t, derivative=True)
        A = np.zeros((agents, agents))
        np.add.at(A, (sources, targets), terms)
        A[np.diag_indices(agents)] = -A.sum(axis=1)
        return A

    return make_system(
        torus(agents),
        field,
        linearization,
        meta={
            META_MODEL: MODEL_NAME,
            META_DOMINANT_BASIS: (np.ones(agents),),
            "omega": tuple(omegas.tolist()),
        },
    )
