#!/usr/bin/env python3

"""Linear consensus protocols in R^N over (time-varying) digraphs.

Continuous time: x' = A(t) x with the Laplacian form A = W - diag(W 1).
Discrete time: x+ = A(k) x where row k of A is (self_weight e_k + W[k]) scaled
to unit sum, so A(k) is row-stochastic.
"""

import numpy as np

from indisoluble.lie_diffpos.dynamics.system_spec import (
    META_DOMINANT_BASIS,
    META_MODEL,
    SystemSpec,
    make_system,
)
from indisoluble.lie_diffpos.errors import InvalidWeightsError
from indisoluble.lie_diffpos.lie.group_spec import euclidean
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.models.digraph import Digraph
from indisoluble.lie_diffpos.time_domain import TimeDomain


MODEL_NAME = "linear_consensus"


def consensus_matrix(
    graph: Digraph, time: TimeDomain, t: float, self_weight: float = 1.0
) -> np.ndarray:
    """Consensus matrix of the weights active at time (or step) t."""
    W = graph.weight_matrix(t)
    if time is TimeDomain.CONTINUOUS:
        return W - np.diag(W.sum(axis=1))

    A = W + self_weight * np.eye(graph.agents)
    return A / A.sum(axis=1, keepdims=True)


def linear_consensus(
    graph: Digraph, time: TimeDomain, self_weight: float = 1.0
) -> SystemSpec:
    """Build the consensus system; self_weight only matters in discrete time."""
    valid_self_weight = np.isfinite(self_weight) and self_weight > 0.0
    if time is TimeDomain.DISCRETE and not valid_self_weight:
        raise InvalidWeightsError(f"Self weight must be positive, got {self_weight}")

    group = euclidean(graph.agents)
    meta = {
        META_MODEL: MODEL_NAME,
        META_DOMINANT_BASIS: (np.ones(graph.agents),),
        "time": time.value,
    }

    def linearization(g: Point, t: float) -> np.ndarray:
        return consensus_matrix(graph, time, t, self_weight)

    if time is TimeDomain.CONTINUOUS:

        def field(g: Point, t: float) -> np.ndarray:
            return linearization(g, t) @ g.coords

        return make_system(group, field, linearization, meta=meta)

    def update(g: Point, k: int) -> Point:
        return Point(group, linearization(g, k) @ g.coords)

    return make_system(
        group,
        None,
        linearization,
        meta=meta,
        time_domain=TimeDomain.DISCRETE,
        update=update,
    )
