#!/usr/bin/env python3

"""Sampled trajectories and their CSV form.

The CSV header is `t, q_1..q_n[, v_1..v_d]` where q are the flattened point
coordinates (rotation matrices row-major, nine columns per agent) and v the
tangent frame coordinates. Models may rename the q columns.
"""

import csv

import numpy as np

from pathlib import Path
from typing import NamedTuple, Sequence

from indisoluble.lie_diffpos.lie.point import Point


class Trajectory(NamedTuple):
    """Samples of a flow; tangents has shape (len, d) or (len, d, m) when present."""

    times: np.ndarray
    points: tuple[Point, ...]
    tangents: np.ndarray | None = None


def _format(value: float) -> str:
    return repr(float(value))


def trajectory_header(
    trajectory: Trajectory, coordinate_names: Sequence[str] | None = None
) -> list[str]:
    width = trajectory.points[0].flat().size
    names = list(coordinate_names or [f"q_{i}" for i in range(1, width + 1)])
    if len(names) != width:
        raise ValueError(f"Expected {width} coordinate names, got {len(names)}")

    header = ["t", *names]
    if trajectory.tangents is not None:
        dim = trajectory.tangents.shape[1]
        if trajectory.tangents.ndim == 2:
            header.extend(f"v_{i}" for i in range(1, dim + 1))
        else:
            header.extend(
                f"v_{i}_{r}"
                for i in range(1, dim + 1)
                for r in range(1, trajectory.tangents.shape[2] + 1)
            )
    return header


def write_trajectory_csv(
    trajectory: Trajectory,
    path: Path,
    coordinate_names: Sequence[str] | None = None,
) -> None:
    """Write one row per sample with shortest round-trip float formatting."""
    header = trajectory_header(trajectory, coordinate_names)
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream)
        writer.writerow(header)
        for index, (time, point) in enumerate(
            zip(trajectory.times, trajectory.points)
        ):
            row = [_format(time), *(_format(q) for q in point.flat())]
            if trajectory.tangents is not None:
                row.extend(_format(v) for v in trajectory.tangents[index].reshape(-1))
            writer.writerow(row)


def write_series_csv(
    path: Path, header: Sequence[str], rows: Sequence[Sequence[float]]
) -> None:
    """Write a numeric table with a header row."""
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream)
        writer.writerow(header)
        for row in rows:
            writer.writerow(_format(value) for value in row)
