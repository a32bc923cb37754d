#!/usr/bin/env python3

"""Weighted, possibly time-varying, directed graphs.

An edge (k, i) means agent k listens to agent i. Weights are piecewise
constant in time: a schedule of weight vectors is cycled with a fixed dwell
time. An edge whose weight is zero during a phase is absent in that phase;
when delta is set every present weight must be at least delta.
"""

import logging

import numpy as np

from typing import Any, Sequence

from scipy.sparse.csgraph import connected_components

from indisoluble.lie_diffpos.errors import BadParamsError, InvalidWeightsError


def _check_edges(
    agents: int, edges: Sequence[Sequence[int]]
) -> tuple[tuple[int, int], ...]:
    checked = []
    for edge in edges:
        if len(edge) != 2:
            raise BadParamsError(f"Edge {edge} must be a pair (k, i)")

        k, i = int(edge[0]), int(edge[1])
        if not (0 <= k < agents and 0 <= i < agents):
            raise BadParamsError(
                f"Edge ({k}, {i}) refers to an agent outside 0..{agents - 1}"
            )
        if k == i:
            raise BadParamsError(f"Self-loop ({k}, {i}) is not allowed")
        checked.append((k, i))

    if len(set(checked)) != len(checked):
        raise BadParamsError("Edges must be unique")
    return tuple(checked)


def _check_weights(raw: Any, count: int, delta: float | None) -> np.ndarray:
    weights = np.array(raw, dtype=float)
    if weights.shape != (count,):
        raise InvalidWeightsError(
            f"Expected {count} weights, got shape {weights.shape}"
        )
    if not np.all(np.isfinite(weights)) or np.any(weights < 0.0):
        raise InvalidWeightsError("Weights must be finite and non-negative")
    if delta is not None:
        present = weights[weights > 0.0]
        if present.size and np.min(present) < delta:
            raise InvalidWeightsError(
                f"Present weight {np.min(present)} is below delta={delta}"
            )

    weights.setflags(write=False)
    return weights


def ring_digraph(agents: int, *, bidirectional: bool = True) -> "Digraph":
    """Ring k -> k+1 (mod N), mirrored when bidirectional."""
    edges = [(k, (k + 1) % agents) for k in range(agents)]
    if bidirectional and agents > 2:
        edges += [((k + 1) % agents, k) for k in range(agents)]
    return Digraph(agents, edges)


def complete_digraph(agents: int) -> "Digraph":
    return Digraph(
        agents, [(k, i) for k in range(agents) for i in range(agents) if k != i]
    )


def random_strongly_connected_digraph(
    agents: int,
    rng: np.random.Generator,
    p: float = 0.3,
    *,
    weight_range: tuple[float, float] = (0.5, 1.5),
) -> "Digraph":
    """Random directed ring through a shuffled agent order plus extra edges
    kept with probability p, with uniform random weights."""
    if not 0.0 <= p <= 1.0:
        raise BadParamsError(f"Edge probability must lie in [0, 1], got {p}")

    order = rng.permutation(agents)
    edges = {(int(order[j]), int(order[(j + 1) % agents])) for j in range(agents)}
    for k in range(agents):
        for i in range(agents):
            if k != i and rng.uniform() < p:
                edges.add((k, i))

    edges = sorted(edges)
    weights = rng.uniform(weight_range[0], weight_range[1], len(edges))
    return Digraph(agents, edges, weights)


def is_strongly_connected(graph: "Digraph", t: float = 0.0) -> bool:
    """Strong connectivity of the edges present at time t."""
    count, _ = connected_components(
        graph.weight_matrix(t) > 0.0, directed=True, connection="strong"
    )
    return count == 1


class Digraph:
    """Directed graph on N agents with a cyclic schedule of edge weights."""

    @property
    def agents(self) -> int:
        return self._agents

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def delta(self) -> float | None:
        return self._delta

    @property
    def dwell(self) -> float | None:
        return self._dwell

    @property
    def schedule(self) -> tuple[np.ndarray, ...]:
        """Get the weight vectors cycled through, one entry per edge each."""
        return self._schedule

    @property
    def is_time_varying(self) -> bool:
        return len(self._schedule) > 1

    def __init__(
        self,
        agents: int,
        edges: Sequence[Sequence[int]],
        weights: Any = None,
        *,
        schedule: Sequence[Any] | None = None,
        dwell: float | None = None,
        delta: float | None = None,
    ) -> None:
        """Initialize the graph.

        Args:
            agents: Number of vertices N >= 1
            edges: Ordered pairs (k, i), no self-loops
            weights: One weight per edge (all ones by default)
            schedule: Weight vectors cycled every dwell time units
            dwell: Length of each schedule phase
            delta: Lower bound for present weights

        Raises:
            BadParamsError: On malformed vertices, edges or timing
            InvalidWeightsError: On negative weights or weights below delta
        """
        if int(agents) < 1:
            raise BadParamsError(f"A digraph needs at least one agent, got {agents}")
        if delta is not None and not delta > 0.0:
            raise BadParamsError(f"delta must be positive, got {delta}")
        if weights is not None and schedule is not None:
            raise BadParamsError("Give either weights or a schedule, not both")

        self._agents = int(agents)
        self._edges = _check_edges(self._agents, edges)
        self._delta = None if delta is None else float(delta)

        count = len(self._edges)
        if schedule is None:
            phases = [np.ones(count) if weights is None else weights]
        else:
            phases = list(schedule)
            if not phases:
                raise BadParamsError("Schedule must hold at least one phase")
        self._schedule = tuple(_check_weights(w, count, self._delta) for w in phases)

        if len(self._schedule) > 1 and (dwell is None or not dwell > 0.0):
            raise BadParamsError(f"A schedule needs a positive dwell time, got {dwell}")
        self._dwell = None if dwell is None else float(dwell)

        self._sources = np.array([k for k, _ in self._edges], dtype=int)
        self._targets = np.array([i for _, i in self._edges], dtype=int)
        logging.debug(
            "Digraph with %d agents, %d edges, %d phases",
            self._agents,
            count,
            len(self._schedule),
        )

    def __repr__(self) -> str:
        return f"Digraph(agents={self._agents}, edges={list(self._edges)})"

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the listening agents k and the listened-to agents i per edge."""
        return self._sources, self._targets

    def weights_at(self, t: float) -> np.ndarray:
        """Per-edge weights of the phase active at time t."""
        if len(self._schedule) == 1:
            return self._schedule[0]

        phase = int(np.floor(t / self._dwell)) % len(self._schedule)
        return self._schedule[phase]

    def weight_matrix(self, t: float = 0.0) -> np.ndarray:
        """N x N matrix W with W[k, i] = a_ki(t)."""
        matrix = np.zeros((self._agents, self._agents))
        matrix[self._sources, self._targets] = self.weights_at(t)
        return matrix

    def mirrored(self) -> "Digraph":
        """Copy with every edge (k, i) completed by (i, k) of the same weight."""
        pairs = {edge: j for j, edge in enumerate(self._edges)}
        edges = list(self._edges)
        index = list(range(len(edges)))
        for (k, i), j in pairs.items():
            if (i, k) not in pairs:
                edges.append((i, k))
                index.append(j)

        schedule = [phase[index] for phase in self._schedule]
        return Digraph(
            self._agents, edges, schedule=schedule, dwell=self._dwell, delta=self._delta
        )
