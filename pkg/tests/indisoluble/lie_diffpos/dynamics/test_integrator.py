#!/usr/bin/env python3

import numpy as np
import pytest
import scipy.linalg

from indisoluble.lie_diffpos.dynamics.integrator import (
    BLOW_UP_NORM,
    flow,
    iterate,
    variational_flow,
)
from indisoluble.lie_diffpos.dynamics.system_spec import make_system
from indisoluble.lie_diffpos.errors import (
    FieldBlowUpError,
    MissingLinearizationError,
)
from indisoluble.lie_diffpos.lie.group_ops import compose, exp
from indisoluble.lie_diffpos.lie.group_spec import euclidean, so3, torus
from indisoluble.lie_diffpos.lie.point import Point, identity
from indisoluble.lie_diffpos.lie.so3 import hat
from indisoluble.lie_diffpos.time_domain import TimeDomain

_A = np.array([[-0.5, 1.0], [-1.0, -0.2]])


def _linear_system(with_linearization=True):
    return make_system(
        euclidean(2),
        lambda g, t: _A @ g.coords,
        (lambda g, t: _A) if with_linearization else None,
    )


def _constant_rotation(omega):
    return make_system(so3(), lambda g, t: omega, lambda g, t: -hat(omega))


def _averaging_system(with_linearization=True):
    W = np.array([[0.5, 0.5], [0.25, 0.75]])
    system = make_system(
        euclidean(2),
        None,
        (lambda g, k: W) if with_linearization else None,
        time_domain=TimeDomain.DISCRETE,
        update=lambda g, k: Point(g.group, W @ g.coords),
    )
    return system, W


class TestFlow:
    def test_constant_phase_velocity_is_exact(self):
        sys = make_system(torus(2), lambda g, t: np.array([1.0, -0.5]))

        traj = flow(sys, identity(torus(2)), 2.0, 0.1)

        np.testing.assert_allclose(traj.points[-1].coords, [2.0, 2 * np.pi - 1.0])

    def test_constant_body_velocity_follows_the_one_parameter_group(self):
        omega = np.array([0.3, -0.7, 1.1])
        g0 = exp(so3(), np.array([0.2, 0.1, 0.0]))

        traj = flow(_constant_rotation(omega), g0, 1.5, 0.05)

        expected = compose(g0, exp(so3(), 1.5 * omega))
        np.testing.assert_allclose(traj.points[-1].coords, expected.coords, atol=1e-12)

    def test_matches_the_matrix_exponential_on_linear_systems(self):
        x0 = np.array([1.0, -2.0])

        traj = flow(_linear_system(), Point(euclidean(2), x0), 1.0, 0.01)

        np.testing.assert_allclose(
            traj.points[-1].coords, scipy.linalg.expm(_A) @ x0, atol=1e-9
        )

    def test_reports_on_the_coarse_grid_and_at_the_end(self):
        traj = flow(_linear_system(), identity(euclidean(2)), 1.0, 0.1, h_report=0.3)

        np.testing.assert_allclose(traj.times, [0.0, 0.3, 0.6, 0.9, 1.0])
        assert len(traj.points) == 5
        assert traj.tangents is None

    def test_rotation_stays_orthonormal(self):
        omega = np.array([2.0, 1.0, -3.0])

        traj = flow(_constant_rotation(omega), identity(so3()), 20.0, 0.01)

        final = traj.points[-1].coords
        np.testing.assert_allclose(final @ final.T, np.eye(3), atol=1e-12)

    def test_blow_up_keeps_the_partial_trajectory(self):
        sys = make_system(
            euclidean(1),
            lambda g, t: np.array([10.0 * BLOW_UP_NORM if t > 0.27 else 1.0]),
        )

        with pytest.raises(FieldBlowUpError, match="exceeds") as raised:
            flow(sys, identity(euclidean(1)), 1.0, 0.1)

        partial = raised.value.trajectory
        assert partial is not None
        assert partial.times[-1] == pytest.approx(0.2)
        assert raised.value.time > 0.27

    def test_non_finite_field_is_a_blow_up(self):
        sys = make_system(euclidean(1), lambda g, t: np.array([np.nan]))

        with pytest.raises(FieldBlowUpError):
            flow(sys, identity(euclidean(1)), 1.0, 0.5)

    @pytest.mark.parametrize(
        "T,h,message",
        [(1.0, 0.0, "0 < h <= T"), (0.1, 0.2, "0 < h <= T")],
        ids=["zero-step", "step-beyond-horizon"],
    )
    def test_rejects_invalid_steps(self, T, h, message):
        with pytest.raises(ValueError, match=message):
            flow(_linear_system(), identity(euclidean(2)), T, h)

    def test_rejects_initial_points_of_other_groups(self):
        with pytest.raises(ValueError, match="does not match"):
            flow(_linear_system(), identity(torus(2)), 1.0, 0.1)


class TestVariationalFlow:
    def test_propagates_the_fundamental_matrix(self):
        traj = variational_flow(
            _linear_system(), identity(euclidean(2)), np.eye(2), 1.0, 0.01
        )

        np.testing.assert_allclose(traj.tangents[-1], scipy.linalg.expm(_A), atol=1e-9)
        assert traj.tangents.shape == (101, 2, 2)

    def test_propagates_single_vectors(self):
        v0 = np.array([0.0, 1.0])

        traj = variational_flow(_linear_system(), identity(euclidean(2)), v0, 0.5, 0.01)

        np.testing.assert_allclose(
            traj.tangents[-1], scipy.linalg.expm(0.5 * _A) @ v0, atol=1e-9
        )

    def test_body_frame_tangents_of_a_rigid_rotation(self):
        omega = np.array([0.0, 0.0, 1.0])

        traj = variational_flow(
            _constant_rotation(omega), identity(so3()), np.eye(3), 1.0, 0.01
        )

        np.testing.assert_allclose(
            traj.tangents[-1], scipy.linalg.expm(-hat(omega)), atol=1e-9
        )

    def test_normalized_columns_follow_the_raw_directions(self):
        v0 = np.array([[1.0, 0.0], [1.0, 1.0]])

        traj = variational_flow(
            _linear_system(),
            identity(euclidean(2)),
            v0,
            1.0,
            0.01,
            h_report=0.1,
            normalize=True,
        )

        raw = scipy.linalg.expm(_A) @ v0
        np.testing.assert_allclose(
            traj.tangents[-1], raw / np.linalg.norm(raw, axis=0), atol=1e-9
        )
        np.testing.assert_allclose(np.linalg.norm(traj.tangents[0], axis=0), 1.0)

    def test_normalized_columns_stay_finite_under_strong_expansion(self):
        A = np.diag([40.0, 20.0])
        sys = make_system(euclidean(2), lambda g, t: np.zeros(2), lambda g, t: A)
        v0 = np.array([[1.0, 0.0], [1.0, 1.0]])

        traj = variational_flow(
            sys, identity(euclidean(2)), v0, 30.0, 0.01, h_report=1.0, normalize=True
        )

        assert np.all(np.isfinite(traj.tangents))
        np.testing.assert_allclose(np.linalg.norm(traj.tangents, axis=1), 1.0)
        np.testing.assert_allclose(traj.tangents[-1], np.eye(2), atol=1e-9)

    def test_falls_back_to_finite_differences(self):
        analytic = variational_flow(
            _linear_system(), identity(euclidean(2)), np.eye(2), 0.5, 0.01
        )
        numeric = variational_flow(
            _linear_system(False), identity(euclidean(2)), np.eye(2), 0.5, 0.01
        )

        np.testing.assert_allclose(numeric.tangents, analytic.tangents, atol=1e-8)

    def test_can_forbid_finite_differences(self):
        with pytest.raises(MissingLinearizationError):
            variational_flow(
                _linear_system(False),
                identity(euclidean(2)),
                np.eye(2),
                1.0,
                0.1,
                allow_fd=False,
            )

    def test_rejects_tangents_of_the_wrong_dimension(self):
        with pytest.raises(ValueError, match="2 rows"):
            variational_flow(
                _linear_system(), identity(euclidean(2)), np.ones(3), 1.0, 0.1
            )


class TestIterate:
    def test_applies_the_update_map(self):
        sys, W = _averaging_system()

        traj = iterate(sys, Point(euclidean(2), [1.0, 0.0]), 3)

        np.testing.assert_array_equal(traj.times, [0.0, 1.0, 2.0, 3.0])
        np.testing.assert_allclose(
            traj.points[-1].coords, np.linalg.matrix_power(W, 3) @ [1.0, 0.0]
        )

    def test_pushes_tangents_forward(self):
        sys, W = _averaging_system()

        traj = iterate(sys, identity(euclidean(2)), 2, v0=np.eye(2))

        np.testing.assert_allclose(traj.tangents[-1], W @ W)

    def test_tangents_need_a_linearization(self):
        sys, _ = _averaging_system(with_linearization=False)

        with pytest.raises(MissingLinearizationError):
            iterate(sys, identity(euclidean(2)), 2, v0=np.eye(2))

    def test_rejects_continuous_systems(self):
        with pytest.raises(ValueError, match="discrete-time"):
            iterate(_linear_system(), identity(euclidean(2)), 2)

    def test_flow_rejects_discrete_systems(self):
        sys, _ = _averaging_system()

        with pytest.raises(ValueError, match="continuous-time"):
            flow(sys, identity(euclidean(2)), 1.0, 0.1)
