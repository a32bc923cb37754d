#!/usr/bin/env python3

import numpy as np
import pytest

from indisoluble.lie_diffpos.positivity.s_procedure import (
    maximize_min_eigenvalue,
    multiplier_bound,
)

_P = np.diag([1.0, 1.0, -1.0])


class TestMaximizeMinEigenvalue:
    def test_finds_the_balancing_multiplier(self):
        base = np.diag([9.0, 4.0, -0.25])

        optimum = maximize_min_eigenvalue(base, _P, 0.0, 100.0)

        assert optimum.multiplier == pytest.approx(2.125, abs=1e-6)
        assert optimum.value == pytest.approx(1.875, abs=1e-6)

    def test_value_at_an_endpoint_when_monotone(self):
        optimum = maximize_min_eigenvalue(np.eye(3), np.eye(3), 0.0, 5.0)

        assert optimum.multiplier == pytest.approx(0.0, abs=1e-6)
        assert optimum.value == pytest.approx(1.0, abs=1e-6)

    def test_symmetrizes_the_base(self):
        base = np.array([[2.0, 1.0, 0.0], [-1.0, 2.0, 0.0], [0.0, 0.0, -1.0]])

        symmetric = maximize_min_eigenvalue(np.diag([2.0, 2.0, -1.0]), _P, 0.0, 10.0)

        assert maximize_min_eigenvalue(base, _P, 0.0, 10.0).value == pytest.approx(
            symmetric.value
        )


class TestMultiplierBound:
    def test_scales_with_the_condition_of_p(self):
        assert multiplier_bound(2.0, np.diag([4.0, -0.5])) == pytest.approx(160.0)

    def test_is_at_least_one(self):
        assert multiplier_bound(1e-6, np.eye(2)) == 1.0
