#!/usr/bin/env python3

"""JSON documents for cone descriptions.

Schema per variant:
    {"variant": "orthant", "n": 3, "symmetric": true}
    {"variant": "polyhedral", "normals": [[...], ...], "symmetric": true}
    {"variant": "quadratic", "P": [[...], ...]}
    {"variant": "sync", "m": 1, "N": 4, "mu": 2.0}
"""

from typing import Any

from indisoluble.lie_diffpos.cones.cone_spec import (
    ConeSpec,
    OrthantCone,
    PolyhedralCone,
    QuadraticCone,
    SyncCone,
    default_mu,
    make_orthant,
    make_polyhedral,
    make_quadratic,
    sync_cone,
)


KEY_AGENTS = "N"
KEY_DIM = "n"
KEY_M = "m"
KEY_MU = "mu"
KEY_NORMALS = "normals"
KEY_P = "P"
KEY_SYMMETRIC = "symmetric"
KEY_VARIANT = "variant"
VARIANT_ORTHANT = "orthant"
VARIANT_POLYHEDRAL = "polyhedral"
VARIANT_QUADRATIC = "quadratic"
VARIANT_SYNC = "sync"


def _require(raw: dict[str, Any], key: str) -> Any:
    if key not in raw:
        raise ValueError(f"Cone '{raw.get(KEY_VARIANT)}' requires key '{key}'")
    return raw[key]


def _symmetric_flag(raw: dict[str, Any]) -> bool:
    symmetric = raw.get(KEY_SYMMETRIC, True)
    if not isinstance(symmetric, bool):
        raise ValueError(f"'{KEY_SYMMETRIC}' must be a boolean")
    return symmetric


def cone_from_dict(raw: Any) -> ConeSpec:
    """Build a cone from its JSON document; raises ValueError on schema errors."""
    if not isinstance(raw, dict):
        raise ValueError(f"Cone must be a JSON object, got {type(raw).__name__}")

    variant = raw.get(KEY_VARIANT)
    if variant == VARIANT_ORTHANT:
        return make_orthant(_require(raw, KEY_DIM), symmetric=_symmetric_flag(raw))
    if variant == VARIANT_POLYHEDRAL:
        return make_polyhedral(
            _require(raw, KEY_NORMALS), symmetric=_symmetric_flag(raw)
        )
    if variant == VARIANT_QUADRATIC:
        return make_quadratic(_require(raw, KEY_P))
    if variant == VARIANT_SYNC:
        agents = _require(raw, KEY_AGENTS)
        mu = raw.get(KEY_MU, default_mu(agents) if isinstance(agents, int) else 0.0)
        if not isinstance(mu, (int, float)) or isinstance(mu, bool):
            raise ValueError(f"'{KEY_MU}' must be a number")
        return sync_cone(_require(raw, KEY_M), agents, float(mu))

    raise ValueError(f"Unknown cone variant: {variant!r}")


def cone_to_dict(cone: ConeSpec) -> dict[str, Any]:
    """JSON document of a cone; cone_from_dict inverts it."""
    match cone:
        case OrthantCone():
            return {
                KEY_VARIANT: VARIANT_ORTHANT,
                KEY_DIM: cone.n,
                KEY_SYMMETRIC: cone.symmetric,
            }
        case PolyhedralCone():
            return {
                KEY_VARIANT: VARIANT_POLYHEDRAL,
                KEY_NORMALS: cone.normals.tolist(),
                KEY_SYMMETRIC: cone.symmetric,
            }
        case QuadraticCone():
            return {KEY_VARIANT: VARIANT_QUADRATIC, KEY_P: cone.P.tolist()}
        case SyncCone():
            return {
                KEY_VARIANT: VARIANT_SYNC,
                KEY_M: cone.m,
                KEY_AGENTS: cone.agents,
                KEY_MU: cone.mu,
            }
