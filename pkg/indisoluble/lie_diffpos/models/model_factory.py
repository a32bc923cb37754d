#!/usr/bin/env python3

"""Build systems from their JSON model documents.

    {"model": "pendulum", "rho": 2.5, "u": 2.0}
    {"model": "torus_consensus", "N": 3, "edges": [[0, 1], ...],
     "coupling": {"kind": "barrier_sync"}, "omega": [...]}
    {"model": "so3_consensus", "N": 3, "topology": "complete",
     "reshape": {"kind": "linear"}, "omega": [[0, 0, 0.5], ...]}
    {"model": "linear_consensus", "N": 4, "topology": "ring",
     "time": "discrete", "self_weight": 1.0}

Graphs are given either by "edges" (with optional "weights", or "schedule"
and "dwell", "delta" and "bidirectional") or by "topology" ("ring" or
"complete"). Torus edges may override the shared coupling through
"edge_couplings": [{"edge": [k, i], "coupling": {...}}].
"""

import numpy as np

from typing import Any

from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.errors import BadParamsError
from indisoluble.lie_diffpos.models.coupling import (
    coupling_from_dict,
    so3_reshape_from_dict,
)
from indisoluble.lie_diffpos.models.digraph import (
    Digraph,
    complete_digraph,
    ring_digraph,
)
from indisoluble.lie_diffpos.models.linear_consensus import linear_consensus
from indisoluble.lie_diffpos.models.pendulum import pendulum
from indisoluble.lie_diffpos.models.so3_consensus import so3_consensus
from indisoluble.lie_diffpos.models.torus_consensus import torus_consensus
from indisoluble.lie_diffpos.time_domain import TimeDomain


KEY_AGENTS = "N"
KEY_BIDIRECTIONAL = "bidirectional"
KEY_COUPLING = "coupling"
KEY_DELTA = "delta"
KEY_DWELL = "dwell"
KEY_EDGE = "edge"
KEY_EDGE_COUPLINGS = "edge_couplings"
KEY_EDGES = "edges"
KEY_MODEL = "model"
KEY_OMEGA = "omega"
KEY_RESHAPE = "reshape"
KEY_RHO = "rho"
KEY_SCHEDULE = "schedule"
KEY_SELF_WEIGHT = "self_weight"
KEY_TIME = "time"
KEY_TOPOLOGY = "topology"
KEY_U = "u"
KEY_WEIGHTS = "weights"


def _require(raw: dict[str, Any], key: str) -> Any:
    if key not in raw:
        raise BadParamsError(f"Model '{raw.get(KEY_MODEL)}' requires key '{key}'")
    return raw[key]


def _number(raw: dict[str, Any], key: str, default: float | None = None) -> float:
    value = _require(raw, key) if default is None else raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadParamsError(f"'{key}' must be a number, got {value!r}")
    return float(value)


def _agents(raw: dict[str, Any]) -> int:
    agents = _require(raw, KEY_AGENTS)
    if isinstance(agents, bool) or not isinstance(agents, int) or agents < 2:
        raise BadParamsError(f"'{KEY_AGENTS}' must be an integer >= 2, got {agents!r}")
    return agents


def _edge_couplings(raw: dict[str, Any], graph: Digraph) -> list:
    shared = coupling_from_dict(_require(raw, KEY_COUPLING))
    couplings = [shared] * len(graph.edges)
    index = {edge: j for j, edge in enumerate(graph.edges)}
    for override in raw.get(KEY_EDGE_COUPLINGS, []):
        if not isinstance(override, dict):
            raise BadParamsError(f"'{KEY_EDGE_COUPLINGS}' entries must be objects")

        edge = tuple(_require(override, KEY_EDGE))
        if edge not in index:
            raise BadParamsError(f"Coupling override for unknown edge {list(edge)}")
        couplings[index[edge]] = coupling_from_dict(_require(override, KEY_COUPLING))
    return couplings


def digraph_from_dict(raw: dict[str, Any]) -> Digraph:
    """Build the interaction graph of a consensus model document."""
    agents = _agents(raw)
    topology = raw.get(KEY_TOPOLOGY)
    if topology is not None and KEY_EDGES in raw:
        raise BadParamsError(f"Give either '{KEY_TOPOLOGY}' or '{KEY_EDGES}', not both")

    match topology:
        case None:
            pass
        case "ring":
            return ring_digraph(agents, bidirectional=raw.get(KEY_BIDIRECTIONAL, True))
        case "complete":
            return complete_digraph(agents)
        case _:
            raise BadParamsError(f"Unknown topology {topology!r}")

    edges = _require(raw, KEY_EDGES)
    if not isinstance(edges, list):
        raise BadParamsError(f"'{KEY_EDGES}' must be a list of [k, i] pairs")

    graph = Digraph(
        agents,
        edges,
        raw.get(KEY_WEIGHTS),
        schedule=raw.get(KEY_SCHEDULE),
        dwell=raw.get(KEY_DWELL),
        delta=raw.get(KEY_DELTA),
    )
    return graph.mirrored() if raw.get(KEY_BIDIRECTIONAL, False) else graph


def system_from_dict(raw: Any) -> SystemSpec:
    """Build a system from its model document.

    Raises:
        BadParamsError: On unknown models or malformed fields
        InvalidWeightsError: On invalid graph weights
    """
    if not isinstance(raw, dict):
        raise BadParamsError(f"Model must be a JSON object, got {type(raw).__name__}")

    model = raw.get(KEY_MODEL)
    match model:
        case "pendulum":
            return pendulum(_number(raw, KEY_RHO), _number(raw, KEY_U, 0.0))
        case "torus_consensus":
            graph = digraph_from_dict(raw)
            omegas = raw.get(KEY_OMEGA, [0.0] * graph.agents)
            return torus_consensus(graph, _edge_couplings(raw, graph), omegas)
        case "so3_consensus":
            graph = digraph_from_dict(raw)
            reshape = so3_reshape_from_dict(_require(raw, KEY_RESHAPE))
            omegas = raw.get(KEY_OMEGA, np.zeros((graph.agents, 3)).tolist())
            return so3_consensus(graph, reshape, omegas)
        case "linear_consensus":
            graph = digraph_from_dict(raw)
            try:
                time = TimeDomain(raw.get(KEY_TIME, TimeDomain.CONTINUOUS.value))
            except ValueError as ex:
                raise BadParamsError(
                    f"Unknown time domain {raw.get(KEY_TIME)!r}"
                ) from ex
            return linear_consensus(graph, time, _number(raw, KEY_SELF_WEIGHT, 1.0))
        case _:
            raise BadParamsError(f"Unknown model: {model!r}")
