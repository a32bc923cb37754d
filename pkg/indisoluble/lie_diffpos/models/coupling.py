#!/usr/bin/env python3

"""Coupling functions for phase oscillators and reshaping functions for
rotation consensus.

A torus coupling f acts on the wrapped phase difference alpha of an edge. Each
coupling carries the open domain on which it is defined and the base of the
2*pi window differences are wrapped into before evaluation.
"""

import numpy as np

from enum import Enum
from typing import Any, Callable, Mapping, NamedTuple, TypeAlias

from indisoluble.lie_diffpos.errors import BadParamsError, DomainViolationError


ScalarFn: TypeAlias = Callable[[np.ndarray], np.ndarray]


class CouplingKind(Enum):
    SINE = "sine"
    BARRIER_SYNC = "barrier_sync"
    REPULSIVE_BALANCE = "repulsive_balance"
    LINEAR_GAIN = "linear_gain"
    CUSTOM = "custom"


class Coupling(NamedTuple):
    """Edge coupling with its derivative.

    domain is the open interval of admissible wrapped differences and
    monotone_domain the part of it where f' > 0. wrap_base is None when f is
    2*pi periodic and needs no wrapping.
    """

    kind: CouplingKind
    f: ScalarFn
    fprime: ScalarFn
    domain: tuple[float, float]
    wrap_base: float | None
    monotone_domain: tuple[float, float]


class SO3ReshapeKind(Enum):
    LINEAR = "linear"
    SIN_HALF = "sin_half"
    TAN_HALF = "tan_half"


class SO3Reshape(NamedTuple):
    """Radial reshaping f(theta) of the geodesic attraction between rotations."""

    kind: SO3ReshapeKind
    f: ScalarFn
    fprime: ScalarFn
    barrier: bool


_TWO_PI = 2.0 * np.pi

KEY_DOMAIN = "domain"
KEY_F = "f"
KEY_FPRIME = "fprime"
KEY_GAIN = "gain"
KEY_KIND = "kind"
KEY_WRAP_BASE = "wrap_base"


def _gain(params: Mapping[str, Any]) -> float:
    gain = params.get(KEY_GAIN, 1.0)
    if isinstance(gain, bool) or not isinstance(gain, (int, float)):
        raise BadParamsError(f"Gain must be a number, got {gain!r}")
    if not np.isfinite(gain) or gain <= 0.0:
        raise BadParamsError(f"Gain must be positive and finite, got {gain}")
    return float(gain)


def _custom_coupling(params: Mapping[str, Any]) -> Coupling:
    f = params.get(KEY_F)
    fprime = params.get(KEY_FPRIME)
    if not callable(f) or not callable(fprime):
        raise BadParamsError("Custom couplings need callables 'f' and 'fprime'")

    lo, hi = params.get(KEY_DOMAIN, (-np.pi, np.pi))
    if not lo < hi or hi - lo > _TWO_PI:
        raise BadParamsError(f"Invalid coupling domain ({lo}, {hi})")

    wrap_base = params.get(KEY_WRAP_BASE, lo if np.isfinite(lo) else None)
    return Coupling(
        CouplingKind.CUSTOM, f, fprime, (lo, hi), wrap_base, (lo, hi)
    )


def make_coupling(
    kind: CouplingKind | str, params: Mapping[str, Any] | None = None
) -> Coupling:
    """Instantiate a coupling of the given kind scaled by params['gain'].

    Sine: gain sin(alpha), strictly increasing on (-pi/2, pi/2).
    BarrierSync: gain tan(alpha/2) on (-pi, pi), diverging at +-pi.
    RepulsiveBalance: -gain cot(alpha/2) on (0, 2*pi), zero at pi.
    LinearGain: gain alpha on (-pi, pi).
    Custom: caller supplied f, fprime, domain and wrap_base.
    """
    params = params or {}
    try:
        kind = CouplingKind(kind)
    except ValueError as ex:
        raise BadParamsError(f"Unknown coupling kind {kind!r}") from ex

    if kind is CouplingKind.CUSTOM:
        return _custom_coupling(params)

    gain = _gain(params)
    match kind:
        case CouplingKind.SINE:
            return Coupling(
                kind,
                lambda a: gain * np.sin(a),
                lambda a: gain * np.cos(a),
                (-np.inf, np.inf),
                None,
                (-0.5 * np.pi, 0.5 * np.pi),
            )
        case CouplingKind.BARRIER_SYNC:
            return Coupling(
                kind,
                lambda a: gain * np.tan(0.5 * a),
                lambda a: 0.5 * gain / np.cos(0.5 * a) ** 2,
                (-np.pi, np.pi),
                -np.pi,
                (-np.pi, np.pi),
            )
        case CouplingKind.REPULSIVE_BALANCE:
            return Coupling(
                kind,
                lambda a: -gain / np.tan(0.5 * a),
                lambda a: 0.5 * gain / np.sin(0.5 * a) ** 2,
                (0.0, _TWO_PI),
                0.0,
                (0.0, _TWO_PI),
            )
        case CouplingKind.LINEAR_GAIN:
            return Coupling(
                kind,
                lambda a: gain * np.asarray(a, dtype=float),
                lambda a: gain * np.ones_like(np.asarray(a, dtype=float)),
                (-np.pi, np.pi),
                -np.pi,
                (-np.pi, np.pi),
            )


def coupling_from_dict(raw: Mapping[str, Any]) -> Coupling:
    """Build a coupling from {"kind": ..., "gain": ...}."""
    if not isinstance(raw, Mapping) or KEY_KIND not in raw:
        raise BadParamsError(f"Coupling must be an object with a '{KEY_KIND}' key")
    if raw[KEY_KIND] == CouplingKind.CUSTOM.value:
        raise BadParamsError("Custom couplings cannot be read from configuration")

    return make_coupling(raw[KEY_KIND], raw)


def wrap_into_domain(coupling: Coupling, alpha: Any) -> np.ndarray:
    """Wrap phase differences into the coupling window and check the domain.

    Raises:
        DomainViolationError: If a wrapped difference is outside the open domain
    """
    alpha = np.asarray(alpha, dtype=float)
    if coupling.wrap_base is not None:
        alpha = coupling.wrap_base + np.mod(alpha - coupling.wrap_base, _TWO_PI)

    lo, hi = coupling.domain
    outside = ~((alpha > lo) & (alpha < hi))
    if np.any(outside):
        raise DomainViolationError(
            f"Phase difference {np.asarray(alpha)[outside].flat[0]:.6f} "
            f"is outside the {coupling.kind.value} domain ({lo:.6f}, {hi:.6f})"
        )
    return alpha


def make_so3_reshape(
    kind: SO3ReshapeKind | str, gain: float = 1.0
) -> SO3Reshape:
    """Reshaping functions with f(0) = 0 and f' > 0 on (0, pi).

    linear: gain theta. sin_half: gain sin(theta/2). tan_half: gain
    tan(theta/2), a barrier diverging at the cut locus.
    """
    try:
        kind = SO3ReshapeKind(kind)
    except ValueError as ex:
        raise BadParamsError(f"Unknown reshaping kind {kind!r}") from ex
    gain = _gain({KEY_GAIN: gain})

    match kind:
        case SO3ReshapeKind.LINEAR:
            return SO3Reshape(
                kind,
                lambda r: gain * np.asarray(r, dtype=float),
                lambda r: gain * np.ones_like(np.asarray(r, dtype=float)),
                False,
            )
        case SO3ReshapeKind.SIN_HALF:
            return SO3Reshape(
                kind,
                lambda r: gain * np.sin(0.5 * r),
                lambda r: 0.5 * gain * np.cos(0.5 * r),
                False,
            )
        case SO3ReshapeKind.TAN_HALF:
            return SO3Reshape(
                kind,
                lambda r: gain * np.tan(0.5 * r),
                lambda r: 0.5 * gain / np.cos(0.5 * r) ** 2,
                True,
            )


def so3_reshape_from_dict(raw: Mapping[str, Any]) -> SO3Reshape:
    if not isinstance(raw, Mapping) or KEY_KIND not in raw:
        raise BadParamsError(f"Reshaping must be an object with a '{KEY_KIND}' key")

    return make_so3_reshape(raw[KEY_KIND], raw.get(KEY_GAIN, 1.0))
