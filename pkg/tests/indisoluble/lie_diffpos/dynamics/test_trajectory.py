#!/usr/bin/env python3

import csv

import numpy as np
import pytest

from indisoluble.lie_diffpos.dynamics.system_spec import make_system
from indisoluble.lie_diffpos.dynamics.trajectory import (
    Trajectory,
    trajectory_header,
    write_series_csv,
    write_trajectory_csv,
)
from indisoluble.lie_diffpos.lie.group_spec import cylinder, so3_power, torus
from indisoluble.lie_diffpos.lie.point import Point, identity
from indisoluble.lie_diffpos.time_domain import TimeDomain


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as stream:
        return list(csv.reader(stream))


def _torus_trajectory(tangents=None):
    points = (Point(torus(2), [0.0, 1.0]), Point(torus(2), [0.5, 1.5]))
    return Trajectory(np.array([0.0, 0.1]), points, tangents)


class TestTrajectoryHeader:
    def test_default_coordinate_names(self):
        assert trajectory_header(_torus_trajectory()) == ["t", "q_1", "q_2"]

    def test_rotation_products_use_nine_columns_per_agent(self):
        traj = Trajectory(np.zeros(1), (identity(so3_power(2)),))

        assert len(trajectory_header(traj)) == 1 + 18

    def test_vector_tangents_add_v_columns(self):
        header = trajectory_header(_torus_trajectory(np.zeros((2, 2))), ["a", "b"])

        assert header == ["t", "a", "b", "v_1", "v_2"]

    def test_matrix_tangents_add_indexed_columns(self):
        header = trajectory_header(_torus_trajectory(np.zeros((2, 2, 2))))

        assert header[3:] == ["v_1_1", "v_1_2", "v_2_1", "v_2_2"]

    def test_rejects_wrong_number_of_names(self):
        with pytest.raises(ValueError, match="Expected 2 coordinate names"):
            trajectory_header(_torus_trajectory(), ["theta"])


class TestWriteCsv:
    def test_writes_one_row_per_sample(self, tmp_path):
        path = tmp_path / "trajectory.csv"
        traj = Trajectory(
            np.array([0.0, 0.5]),
            (Point(cylinder(), [0.1, 2.0]), Point(cylinder(), [0.2, 1.5])),
        )

        write_trajectory_csv(traj, path, ("theta", "v"))

        rows = _read_rows(path)
        assert rows[0] == ["t", "theta", "v"]
        assert rows[2] == ["0.5", "0.2", "1.5"]

    def test_floats_round_trip_exactly(self, tmp_path):
        path = tmp_path / "series.csv"

        write_series_csv(path, ["t", "x"], [[0.1, 1.0 / 3.0]])

        assert float(_read_rows(path)[1][1]) == 1.0 / 3.0


class TestMakeSystem:
    def test_meta_is_read_only(self):
        sys = make_system(torus(1), lambda g, t: np.zeros(1), meta={"model": "x"})

        with pytest.raises(TypeError):
            sys.meta["model"] = "y"

    def test_continuous_systems_need_a_field(self):
        with pytest.raises(ValueError, match="vector field"):
            make_system(torus(1), None)

    def test_discrete_systems_need_an_update(self):
        with pytest.raises(ValueError, match="update map"):
            make_system(torus(1), None, time_domain=TimeDomain.DISCRETE)
