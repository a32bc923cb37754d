#!/usr/bin/env python3

"""Command implementations: simulate, certify, pf and sweep.

Each command reads its JSON inputs, runs the analysis and writes its
artifacts, returning a process exit code: 0 on success or a passed
certificate, 1 on an analytic negative, 2 on configuration errors and 3 when
the dynamics blow up at run time.
"""

import csv
import json
import logging
import platform
import sys
import time

import numpy as np
import scipy

from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, NamedTuple, TextIO

from indisoluble.lie_diffpos.certify.attractors import (
    alignment_ratio,
    splay_check,
    sync_distance,
)
from indisoluble.lie_diffpos.certify.diffpos import (
    DPCertificate,
    certify_diffpos,
    dp_certificate_to_dict,
)
from indisoluble.lie_diffpos.cones.cone_json import cone_from_dict
from indisoluble.lie_diffpos.dynamics.integrator import flow, iterate, variational_flow
from indisoluble.lie_diffpos.dynamics.system_spec import (
    META_COORDINATE_NAMES,
    META_DOMINANT_BASIS,
    META_MODEL,
    SystemSpec,
)
from indisoluble.lie_diffpos.dynamics.trajectory import (
    Trajectory,
    write_series_csv,
    write_trajectory_csv,
)
from indisoluble.lie_diffpos.errors import (
    DegenerateDirectionError,
    FieldBlowUpError,
    LieDiffPosError,
)
from indisoluble.lie_diffpos.models import (
    linear_consensus,
    so3_consensus,
    torus_consensus,
)
from indisoluble.lie_diffpos.positivity.certificate import certificate_to_dict
from indisoluble.lie_diffpos.positivity.consensus import (
    LyapunovKind,
    consensus_lyapunov,
)
from indisoluble.lie_diffpos.positivity.pf_split import pf_split, pf_split_to_dict
from indisoluble.lie_diffpos.positivity.positive_map import (
    default_mode,
    is_positive_map,
)
from indisoluble.lie_diffpos.run_config_factory import (
    KEY_SWEEP,
    RunConfig,
    load_raw_config,
    make_run_config,
    set_parameter,
)
from indisoluble.lie_diffpos.time_domain import TimeDomain


class ExitCode(IntEnum):
    SUCCESS = 0
    NEGATIVE = 1
    CONFIG_ERROR = 2
    BLOW_UP = 3


class _PointOutcome(NamedTuple):
    index: int
    value: float
    exit_code: ExitCode
    certificate: DPCertificate | None


FILE_CERTIFICATE = "certificate.json"
FILE_DIAGNOSTICS = "diagnostics.csv"
FILE_RUN = "run.json"
FILE_SWEEP = "sweep.csv"
FILE_TRAJECTORY = "trajectory.csv"


def _versions() -> dict[str, str]:
    try:
        package = version("lie_diffpos")
    except PackageNotFoundError:
        package = "unknown"

    return {
        "lie_diffpos": package,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "scipy": scipy.__version__,
    }


def _write_json(path: Path, document: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as stream:
        json.dump(document, stream, indent=2, sort_keys=True)
        stream.write("\n")


def _write_run_json(
    out_dir: Path, command: str, raw: dict[str, Any], started: float, **extra: Any
) -> None:
    _write_json(
        out_dir / FILE_RUN,
        {
            "command": command,
            "config": raw,
            "versions": _versions(),
            "wall_time": time.perf_counter() - started,
            **extra,
        },
    )


def _load_run_config(
    config_path: Path, seed: int | None
) -> tuple[dict[str, Any], RunConfig] | None:
    raw = load_raw_config(config_path)
    if raw is None:
        return None

    config = make_run_config(raw, seed)
    if config is None:
        return None
    return raw, config


def _simulate(config: RunConfig) -> Trajectory:
    system = config.system
    initial = config.initial
    if system.time_domain is TimeDomain.DISCRETE:
        return iterate(
            system, initial.point, int(round(config.integrator.T)), v0=initial.tangent
        )

    if initial.tangent is None:
        return flow(
            system,
            initial.point,
            config.integrator.T,
            config.integrator.h,
            h_report=config.integrator.h_report,
        )
    return variational_flow(
        system,
        initial.point,
        initial.tangent,
        config.integrator.T,
        config.integrator.h,
        h_report=config.integrator.h_report,
    )


def _diagnostics(system: SystemSpec, traj: Trajectory) -> tuple[list[str], np.ndarray]:
    columns: dict[str, list[float]] = {"t": list(traj.times)}
    model = system.meta.get(META_MODEL)
    if system.time_domain is TimeDomain.CONTINUOUS:
        velocities = [
            np.asarray(system.field(g, t)) for t, g in zip(traj.times, traj.points)
        ]
        columns["field_norm"] = [float(np.linalg.norm(v)) for v in velocities]
        if model == torus_consensus.MODEL_NAME:
            columns["residual"] = [
                float(np.max(np.abs(v - v.mean()))) for v in velocities
            ]
            columns["splay_error"] = [splay_check(g) for g in traj.points]

    if model == so3_consensus.MODEL_NAME:
        columns["sync_dist"] = [sync_distance(g) for g in traj.points]
    if model == linear_consensus.MODEL_NAME:
        columns["lyapunov"] = [
            consensus_lyapunov(g.coords, LyapunovKind.TSITSIKLIS) for g in traj.points
        ]

    basis = system.meta.get(META_DOMINANT_BASIS)
    if traj.tangents is not None and basis is not None:
        try:
            columns["phi"] = list(alignment_ratio(traj, basis))
        except DegenerateDirectionError as ex:
            logging.warning("Skipping alignment ratio: %s", ex)

    return list(columns), np.column_stack(list(columns.values()))


def _write_simulation(out_dir: Path, system: SystemSpec, traj: Trajectory) -> None:
    write_trajectory_csv(
        traj, out_dir / FILE_TRAJECTORY, system.meta.get(META_COORDINATE_NAMES)
    )
    header, rows = _diagnostics(system, traj)
    write_series_csv(out_dir / FILE_DIAGNOSTICS, header, rows)


def _certify(
    raw: dict[str, Any], out_dir: Path, seed: int | None, threads: int
) -> tuple[ExitCode, DPCertificate | None]:
    started = time.perf_counter()
    config = make_run_config(raw, seed)
    if config is None:
        return ExitCode.CONFIG_ERROR, None
    if (
        config.cone is None
        or config.certification is None
        or config.integrator.T is None
    ):
        logging.error("Certification needs 'cone', 'certification' and 'integrator.T'")
        return ExitCode.CONFIG_ERROR, None

    job = config.certification
    try:
        certificate = certify_diffpos(
            config.system,
            config.cone,
            job.region,
            config.integrator.T,
            job.eps,
            job.n_states,
            job.n_rays,
            job.seed,
            h=config.integrator.h,
            h_report=config.integrator.h_report,
            horizon=job.horizon,
            threads=threads,
        )
    except ValueError as ex:
        logging.error("Certification could not run: %s", ex)
        return ExitCode.CONFIG_ERROR, None

    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(
        out_dir / FILE_CERTIFICATE, dp_certificate_to_dict(certificate, config.cone)
    )
    _write_run_json(out_dir, "certify", raw, started, region=job.region.description)
    return (ExitCode.SUCCESS if certificate.passed else ExitCode.NEGATIVE), certificate


def _sweep_row(outcome: _PointOutcome) -> list[str]:
    certificate = outcome.certificate
    if certificate is None:
        return [
            str(outcome.index),
            repr(outcome.value),
            "error",
            str(int(outcome.exit_code)),
            "",
            "",
            "",
        ]

    return [
        str(outcome.index),
        repr(outcome.value),
        "pass" if certificate.passed else "fail",
        str(int(outcome.exit_code)),
        repr(certificate.min_final_margin),
        str(certificate.n_valid),
        str(certificate.n_voided),
    ]


def cmd_simulate(config_path: Path, out_dir: Path, *, seed: int | None = None) -> int:
    """Integrate the configured model and write trajectory, diagnostics and run
    metadata. A blow-up still writes the partial trajectory."""
    started = time.perf_counter()
    loaded = _load_run_config(config_path, seed)
    if loaded is None:
        return ExitCode.CONFIG_ERROR
    raw, config = loaded

    if config.initial is None or config.integrator.T is None:
        logging.error("Simulation needs an 'initial' state and 'integrator.T'")
        return ExitCode.CONFIG_ERROR

    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        traj = _simulate(config)
    except FieldBlowUpError as ex:
        logging.error("Simulation blew up: %s", ex)
        if ex.trajectory is not None:
            _write_simulation(out_dir, config.system, ex.trajectory)
        _write_run_json(out_dir, "simulate", raw, started, blow_up=str(ex))
        return ExitCode.BLOW_UP
    except LieDiffPosError as ex:
        logging.error("Simulation stopped: %s", ex)
        _write_run_json(out_dir, "simulate", raw, started, failure=str(ex))
        return ExitCode.BLOW_UP

    _write_simulation(out_dir, config.system, traj)
    _write_run_json(out_dir, "simulate", raw, started)
    logging.info("Wrote %d samples to %s", len(traj.times), out_dir)
    return ExitCode.SUCCESS


def cmd_certify(
    config_path: Path, out_dir: Path, *, seed: int | None = None, threads: int = 1
) -> int:
    """Run the configured certification and write certificate.json."""
    raw = load_raw_config(config_path)
    if raw is None:
        return ExitCode.CONFIG_ERROR

    exit_code, _ = _certify(raw, out_dir, seed, threads)
    return exit_code


def cmd_pf(
    matrix_path: Path, cone_path: Path, *, seed: int = 0, stream: TextIO | None = None
) -> int:
    """Check strict positivity of a map and print its dominant split as JSON."""
    stream = stream or sys.stdout
    try:
        with open(matrix_path, "r", encoding="utf-8") as matrix_stream:
            matrix = json.load(matrix_stream)
        with open(cone_path, "r", encoding="utf-8") as cone_stream:
            cone = cone_from_dict(json.load(cone_stream))
        certificate = is_positive_map(matrix, cone, default_mode(cone))
    except (OSError, ValueError) as ex:
        logging.error("Failed to read map or cone: %s", ex)
        return ExitCode.CONFIG_ERROR

    document = {"certificate": certificate_to_dict(certificate), "pf_split": None}
    exit_code = ExitCode.NEGATIVE
    if certificate.strict:
        try:
            document["pf_split"] = pf_split_to_dict(pf_split(matrix, cone, seed=seed))
            exit_code = ExitCode.SUCCESS
        except LieDiffPosError as ex:
            logging.warning("No dominant split: %s", ex)
    else:
        logging.info("Map is not strictly positive (margin %.6e)", certificate.margin)

    json.dump(document, stream, indent=2, sort_keys=True)
    stream.write("\n")
    return exit_code


def cmd_sweep(
    config_path: Path, out_dir: Path, *, seed: int | None = None, threads: int = 1
) -> int:
    """Certify every point of the configured parameter grid.

    Each grid point gets its own sub-directory; sweep.csv summarizes them in
    grid order. Failing or invalid grid points do not abort the sweep.
    """
    loaded = _load_run_config(config_path, seed)
    if loaded is None:
        return ExitCode.CONFIG_ERROR
    raw, config = loaded

    if config.sweep is None:
        logging.error("Sweep needs a '%s' section", KEY_SWEEP)
        return ExitCode.CONFIG_ERROR

    base = {key: value for key, value in raw.items() if key != KEY_SWEEP}
    parameter = config.sweep.parameter

    def run_point(item: tuple[int, float]) -> _PointOutcome:
        index, value = item
        try:
            point_raw = set_parameter(base, parameter, value)
        except ValueError as ex:
            logging.error("Grid point %d: %s", index, ex)
            return _PointOutcome(index, value, ExitCode.CONFIG_ERROR, None)

        exit_code, certificate = _certify(
            point_raw, out_dir / f"point_{index:03d}", seed, 1
        )
        logging.info(
            "Grid point %d (%s=%s): exit %d", index, parameter, value, exit_code
        )
        return _PointOutcome(index, value, exit_code, certificate)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        outcomes = sorted(
            executor.map(run_point, enumerate(config.sweep.values)),
            key=lambda o: o.index,
        )

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / FILE_SWEEP, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream)
        writer.writerow(
            [
                "index",
                parameter,
                "status",
                "exit_code",
                "min_final_margin",
                "n_valid",
                "n_voided",
            ]
        )
        writer.writerows(_sweep_row(outcome) for outcome in outcomes)

    return ExitCode.SUCCESS
