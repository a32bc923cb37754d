#!/usr/bin/env python3

"""CLI entry point for the differential positivity toolkit."""

import argparse
import logging
import os

from pathlib import Path
from typing import Any

from indisoluble.lie_diffpos.commands import (
    ExitCode,
    cmd_certify,
    cmd_pf,
    cmd_simulate,
    cmd_sweep,
)
from indisoluble.lie_diffpos.tools.is_valid_count import is_valid_count

_ARG_COMMAND = "command"
_ARG_CONE = "cone"
_ARG_CONFIG = "config"
_ARG_LOG_LEVEL = "log_level"
_ARG_MATRIX = "matrix"
_ARG_OUT = "out"
_ARG_SEED = "seed"
_ARG_THREADS = "threads"
_CMD_CERTIFY = "certify"
_CMD_PF = "pf"
_CMD_SIMULATE = "simulate"
_CMD_SWEEP = "sweep"
_ENV_THREADS = "LIE_DIFFPOS_THREADS"
_GRP_GENERAL = "general arguments"
_GRP_RUN = "run arguments"
_LOG_LEVEL_NAMES = ("debug", "info", "warning", "error", "critical")
_NAME_CONE = "cone"
_NAME_CONFIG = "config"
_NAME_LOG_LEVEL = "log-level"
_NAME_MATRIX = "matrix"
_NAME_OUT = "out"
_NAME_SEED = "seed"
_NAME_THREADS = "threads"
_VAL_LOG_LEVEL = "info"
_VAL_THREADS = 1


def _add_general_arguments(parser: argparse.ArgumentParser) -> None:
    general_group = parser.add_argument_group(_GRP_GENERAL)
    general_group.add_argument(
        f"--{_NAME_LOG_LEVEL}",
        type=str,
        choices=_LOG_LEVEL_NAMES,
        default=_VAL_LOG_LEVEL,
        dest=_ARG_LOG_LEVEL,
        help=f"Logging level (default: {_VAL_LOG_LEVEL})",
    )


def _add_run_arguments(parser: argparse.ArgumentParser, threads: bool) -> None:
    run_group = parser.add_argument_group(_GRP_RUN)
    run_group.add_argument(
        f"--{_NAME_CONFIG}",
        type=Path,
        required=True,
        dest=_ARG_CONFIG,
        help="Path to the JSON run configuration",
    )
    run_group.add_argument(
        f"--{_NAME_OUT}",
        type=Path,
        required=True,
        dest=_ARG_OUT,
        help="Output directory, created if missing",
    )
    run_group.add_argument(
        f"--{_NAME_SEED}",
        type=int,
        default=None,
        dest=_ARG_SEED,
        help="Override the seed of the configuration",
    )
    if threads:
        run_group.add_argument(
            f"--{_NAME_THREADS}",
            type=int,
            default=None,
            dest=_ARG_THREADS,
            help=(
                f"Worker threads (default: ${_ENV_THREADS} when set, "
                f"else {_VAL_THREADS})"
            ),
        )


def _make_arg_parser() -> argparse.ArgumentParser:
    epilog = f"""
Commands
========

{_CMD_SIMULATE}
{len(_CMD_SIMULATE) * '-'}
Integrate the configured model from its initial state and write
trajectory.csv, diagnostics.csv and run.json into --{_NAME_OUT}.

{_CMD_CERTIFY}
{len(_CMD_CERTIFY) * '-'}
Sample states and cone boundary rays, propagate them with the variational
flow and write certificate.json. Exits 0 when the certificate passes, 1 when
it fails.

{_CMD_PF}
{len(_CMD_PF) * '-'}
Check strict positivity of the matrix in --{_NAME_MATRIX} with respect to the
cone in --{_NAME_CONE} and print the dominant split as JSON.

{_CMD_SWEEP}
{len(_CMD_SWEEP) * '-'}
Certify every value of the configured parameter grid, one sub-directory per
value, and summarize them in sweep.csv.

Exit codes
==========
0 success, 1 analytic negative, 2 configuration error, 3 run-time blow-up.

Example usage
=============
%(prog)s {_CMD_CERTIFY} --{_NAME_CONFIG} pendulum.json --{_NAME_OUT} runs/pendulum
%(prog)s {_CMD_PF} --{_NAME_MATRIX} T.json --{_NAME_CONE} cone.json
"""
    parser = argparse.ArgumentParser(
        description="Invariant differential positivity on Lie groups",
        epilog=epilog,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest=_ARG_COMMAND, required=True)

    simulate = commands.add_parser(_CMD_SIMULATE, help="Integrate a model")
    _add_run_arguments(simulate, threads=False)
    _add_general_arguments(simulate)

    certify = commands.add_parser(_CMD_CERTIFY, help="Certify differential positivity")
    _add_run_arguments(certify, threads=True)
    _add_general_arguments(certify)

    pf = commands.add_parser(_CMD_PF, help="Dominant split of a strictly positive map")
    pf_group = pf.add_argument_group(_GRP_RUN)
    pf_group.add_argument(
        f"--{_NAME_MATRIX}",
        type=Path,
        required=True,
        dest=_ARG_MATRIX,
        help="Path to a JSON square matrix",
    )
    pf_group.add_argument(
        f"--{_NAME_CONE}",
        type=Path,
        required=True,
        dest=_ARG_CONE,
        help="Path to a JSON cone",
    )
    pf_group.add_argument(
        f"--{_NAME_SEED}",
        type=int,
        default=0,
        dest=_ARG_SEED,
        help="Seed of the random subspace checks (default: 0)",
    )
    _add_general_arguments(pf)

    sweep = commands.add_parser(_CMD_SWEEP, help="Certify over a parameter grid")
    _add_run_arguments(sweep, threads=True)
    _add_general_arguments(sweep)

    return parser


def _threads(args: dict[str, Any]) -> int | None:
    threads = args.get(_ARG_THREADS)
    source = f"--{_NAME_THREADS}"
    if threads is None:
        threads = os.environ.get(_ENV_THREADS)
        source = _ENV_THREADS
        if threads is None:
            return _VAL_THREADS
        try:
            threads = int(threads)
        except ValueError:
            pass

    success, error = is_valid_count(threads)
    if not success:
        logging.error("Invalid %s (%r): %s", source, threads, error)
        return None
    return threads


def _main(args: dict[str, Any]) -> int:
    # Set up logging
    numeric_level = getattr(logging, args[_ARG_LOG_LEVEL].upper())
    logging.basicConfig(
        level=numeric_level,
        format="%(asctime)s - %(levelname)s - %(module)s.%(funcName)s - %(message)s",
    )

    command = args[_ARG_COMMAND]
    if command == _CMD_PF:
        return cmd_pf(args[_ARG_MATRIX], args[_ARG_CONE], seed=args[_ARG_SEED])
    if command == _CMD_SIMULATE:
        return cmd_simulate(args[_ARG_CONFIG], args[_ARG_OUT], seed=args[_ARG_SEED])

    threads = _threads(args)
    if threads is None:
        return ExitCode.CONFIG_ERROR

    run = cmd_certify if command == _CMD_CERTIFY else cmd_sweep
    return run(args[_ARG_CONFIG], args[_ARG_OUT], seed=args[_ARG_SEED], threads=threads)


def main() -> int:
    args = _make_arg_parser().parse_args()
    return int(_main(vars(args)))
