#!/usr/bin/env python3

"""Run configuration factory and validation.

Creates and validates run configurations from JSON documents: the model, the
initial state, the integrator, the cone, the certification job and the
parameter sweep. Problems are logged and reported as None so that the command
line maps them to its configuration-error exit code.
"""

import copy
import json
import logging

import numpy as np

from pathlib import Path
from typing import Any, NamedTuple

from indisoluble.lie_diffpos.certify.region import RegionSampler, region_from_dict
from indisoluble.lie_diffpos.cones.cone_json import cone_from_dict
from indisoluble.lie_diffpos.cones.cone_spec import ConeSpec
from indisoluble.lie_diffpos.dynamics.system_spec import SystemSpec
from indisoluble.lie_diffpos.lie.group_ops import exp
from indisoluble.lie_diffpos.lie.point import Point
from indisoluble.lie_diffpos.models.model_factory import system_from_dict
from indisoluble.lie_diffpos.tools.is_valid_count import is_valid_count
from indisoluble.lie_diffpos.tools.is_valid_number import (
    is_valid_number,
    is_valid_open_unit,
    is_valid_positive_number,
)
from indisoluble.lie_diffpos.tools.is_valid_seed import is_valid_seed


class IntegratorConfig(NamedTuple):
    h: float
    T: float | None
    h_report: float


class InitialConfig(NamedTuple):
    point: Point
    tangent: np.ndarray | None


class CertificationConfig(NamedTuple):
    eps: float
    n_states: int
    n_rays: int
    seed: int
    region: RegionSampler
    horizon: float | None


class SweepConfig(NamedTuple):
    parameter: str
    values: tuple[float, ...]


class RunConfig(NamedTuple):
    """Validated run configuration; raw is the document it was built from."""

    raw: dict[str, Any]
    system: SystemSpec
    integrator: IntegratorConfig
    initial: InitialConfig | None
    cone: ConeSpec | None
    certification: CertificationConfig | None
    sweep: SweepConfig | None


_GRID_TOL = 1e-9
_VAL_H = 1e-3
_VAL_REPORT_FACTOR = 10

KEY_ALGEBRA = "algebra"
KEY_CERTIFICATION = "certification"
KEY_CONE = "cone"
KEY_COORDS = "coords"
KEY_EPS = "eps"
KEY_H = "h"
KEY_H_REPORT = "h_report"
KEY_HORIZON = "horizon"
KEY_INITIAL = "initial"
KEY_INTEGRATOR = "integrator"
KEY_MODEL = "model"
KEY_N_RAYS = "n_rays"
KEY_N_STATES = "n_states"
KEY_PARAMETER = "parameter"
KEY_REGION = "region"
KEY_SEED = "seed"
KEY_START = "start"
KEY_STEP = "step"
KEY_STOP = "stop"
KEY_SWEEP = "sweep"
KEY_T = "T"
KEY_TANGENT = "tangent"
KEY_VALUES = "values"


def _section(raw: dict[str, Any], key: str) -> dict[str, Any] | None:
    section = raw.get(key, {})
    if not isinstance(section, dict):
        logging.error(
            "Section '%s' must be an object, got %s", key, type(section).__name__
        )
        return None
    return section


def _positive(section: dict[str, Any], key: str, default: Any = None) -> float | None:
    value = section.get(key, default)
    success, error = is_valid_positive_number(value)
    if not success:
        logging.error("Invalid '%s' (%r): %s", key, value, error)
        return None
    return float(value)


def _count(section: dict[str, Any], key: str) -> int | None:
    value = section.get(key)
    success, error = is_valid_count(value)
    if not success:
        logging.error("Invalid '%s' (%r): %s", key, value, error)
        return None
    return value


def _make_system(raw: dict[str, Any]) -> SystemSpec | None:
    if KEY_MODEL not in raw:
        logging.error("Configuration must include a '%s' section", KEY_MODEL)
        return None

    try:
        return system_from_dict(raw[KEY_MODEL])
    except ValueError as ex:
        logging.error("Failed to create model: %s", ex)
        return None


def _make_integrator(raw: dict[str, Any]) -> IntegratorConfig | None:
    section = _section(raw, KEY_INTEGRATOR)
    if section is None:
        return None

    h = _positive(section, KEY_H, _VAL_H)
    if h is None:
        return None

    T = None
    if KEY_T in section:
        T = _positive(section, KEY_T)
        if T is None:
            return None
        if h > T:
            logging.error("Step h=%s exceeds the horizon T=%s", h, T)
            return None

    h_report = _positive(section, KEY_H_REPORT, _VAL_REPORT_FACTOR * h)
    if h_report is None:
        return None
    if h_report < h:
        logging.error(
            "Report step %s is smaller than the integration step %s", h_report, h
        )
        return None

    return IntegratorConfig(h, T, h_report)


def _make_initial(raw: dict[str, Any], system: SystemSpec) -> InitialConfig | None:
    section = raw[KEY_INITIAL]
    if not isinstance(section, dict):
        logging.error("Section '%s' must be an object", KEY_INITIAL)
        return None
    if (KEY_COORDS in section) == (KEY_ALGEBRA in section):
        logging.error(
            "Initial state needs exactly one of '%s' or '%s'", KEY_COORDS, KEY_ALGEBRA
        )
        return None

    try:
        if KEY_COORDS in section:
            point = Point(system.group, section[KEY_COORDS])
        else:
            point = exp(system.group, np.array(section[KEY_ALGEBRA], dtype=float))

        tangent = None
        if KEY_TANGENT in section:
            tangent = np.array(section[KEY_TANGENT], dtype=float)
            if tangent.shape != (system.group.dim,):
                raise ValueError(
                    f"Tangent must have {system.group.dim} entries, "
                    f"got shape {tangent.shape}"
                )
    except (TypeError, ValueError) as ex:
        logging.error("Failed to create initial state: %s", ex)
        return None

    return InitialConfig(point, tangent)


def _make_cone(raw: dict[str, Any], system: SystemSpec) -> ConeSpec | None:
    try:
        cone = cone_from_dict(raw[KEY_CONE])
    except ValueError as ex:
        logging.error("Failed to create cone: %s", ex)
        return None

    if cone.n != system.group.dim:
        logging.error(
            "Cone dimension %d does not match model dimension %d",
            cone.n,
            system.group.dim,
        )
        return None
    return cone


def _make_certification(
    raw: dict[str, Any], system: SystemSpec, seed_override: int | None
) -> CertificationConfig | None:
    section = _section(raw, KEY_CERTIFICATION)
    if section is None:
        return None

    eps = section.get(KEY_EPS)
    success, error = is_valid_open_unit(eps)
    if not success:
        logging.error("Invalid '%s' (%r): %s", KEY_EPS, eps, error)
        return None

    n_states = _count(section, KEY_N_STATES)
    n_rays = _count(section, KEY_N_RAYS)
    if n_states is None or n_rays is None:
        return None

    seed = section.get(KEY_SEED) if seed_override is None else seed_override
    success, error = is_valid_seed(seed)
    if not success:
        logging.error(
            "Certification needs a valid '%s' (%r): %s", KEY_SEED, seed, error
        )
        return None

    horizon = None
    if KEY_HORIZON in section:
        horizon = _positive(section, KEY_HORIZON)
        if horizon is None:
            return None

    try:
        region = region_from_dict(section.get(KEY_REGION), system.group)
    except ValueError as ex:
        logging.error("Failed to create region: %s", ex)
        return None

    return CertificationConfig(float(eps), n_states, n_rays, seed, region, horizon)


def _make_sweep(raw: dict[str, Any]) -> SweepConfig | None:
    section = _section(raw, KEY_SWEEP)
    if section is None:
        return None

    parameter = section.get(KEY_PARAMETER)
    if not isinstance(parameter, str) or "." not in parameter:
        logging.error(
            "Sweep '%s' must be a dotted path such as model.rho, got %r",
            KEY_PARAMETER,
            parameter,
        )
        return None

    if KEY_VALUES in section:
        values = section[KEY_VALUES]
        if not isinstance(values, list) or not all(
            is_valid_number(v)[0] for v in values
        ):
            logging.error("Sweep '%s' must be a list of numbers", KEY_VALUES)
            return None
        grid = tuple(float(v) for v in values)
    else:
        start = section.get(KEY_START)
        stop = section.get(KEY_STOP)
        step = _positive(section, KEY_STEP)
        if step is None:
            return None
        if not all(is_valid_number(v)[0] for v in (start, stop)):
            logging.error("Sweep needs numeric '%s' and '%s'", KEY_START, KEY_STOP)
            return None
        count = int(np.floor((stop - start) / step + _GRID_TOL)) + 1
        grid = tuple(float(start + i * step) for i in range(max(count, 0)))

    if not grid:
        logging.error("Sweep grid is empty")
        return None

    return SweepConfig(parameter, grid)


def load_raw_config(path: Path) -> dict[str, Any] | None:
    """Read a JSON configuration document."""
    try:
        with open(path, "r", encoding="utf-8") as stream:
            raw = json.load(stream)
    except (OSError, json.JSONDecodeError) as ex:
        logging.error("Failed to read configuration %s: %s", path, ex)
        return None

    if not isinstance(raw, dict):
        logging.error("Configuration must be a JSON object, got %s", type(raw).__name__)
        return None
    return raw


def set_parameter(raw: dict[str, Any], parameter: str, value: Any) -> dict[str, Any]:
    """Copy of raw with the dotted path parameter set to value."""
    updated = copy.deepcopy(raw)
    *parents, leaf = parameter.split(".")
    section = updated
    for key in parents:
        section = section.setdefault(key, {})
        if not isinstance(section, dict):
            raise ValueError(
                f"Sweep path '{parameter}' crosses a non-object at '{key}'"
            )
    section[leaf] = value
    return updated


def make_run_config(
    raw: dict[str, Any], seed_override: int | None = None
) -> RunConfig | None:
    """Create a complete run configuration from a JSON document."""
    system = _make_system(raw)
    if system is None:
        return None

    integrator = _make_integrator(raw)
    if integrator is None:
        return None

    initial = None
    if KEY_INITIAL in raw:
        initial = _make_initial(raw, system)
        if initial is None:
            return None

    cone = None
    if KEY_CONE in raw:
        cone = _make_cone(raw, system)
        if cone is None:
            return None

    certification = None
    if KEY_CERTIFICATION in raw:
        certification = _make_certification(raw, system, seed_override)
        if certification is None:
            return None

    sweep = None
    if KEY_SWEEP in raw:
        sweep = _make_sweep(raw)
        if sweep is None:
            return None

    return RunConfig(
        raw=raw,
        system=system,
        integrator=integrator,
        initial=initial,
        cone=cone,
        certification=certification,
        sweep=sweep,
    )
