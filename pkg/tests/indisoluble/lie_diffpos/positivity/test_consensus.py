#!/usr/bin/env python3

import numpy as np
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from indisoluble.lie_diffpos.errors import NonPositiveError
from indisoluble.lie_diffpos.positivity.consensus import (
    LyapunovKind,
    check_consensus_matrix,
    consensus_lyapunov,
)
from indisoluble.lie_diffpos.time_domain import TimeDomain

_weights = st.lists(
    st.floats(min_value=0.01, max_value=10.0, allow_nan=False), min_size=9, max_size=9
)
_states = st.lists(
    st.floats(min_value=0.1, max_value=100.0, allow_nan=False), min_size=3, max_size=3
)


class TestConsensusLyapunov:
    def test_tsitsiklis_is_the_spread(self):
        assert consensus_lyapunov([1.0, -2.0, 0.5], LyapunovKind.TSITSIKLIS) == 3.0

    def test_birkhoff_is_the_log_ratio(self):
        assert consensus_lyapunov([1.0, np.e, 2.0], LyapunovKind.BIRKHOFF) == (
            pytest.approx(1.0)
        )

    def test_birkhoff_needs_positive_states(self):
        with pytest.raises(NonPositiveError, match="strictly positive"):
            consensus_lyapunov([1.0, 0.0], LyapunovKind.BIRKHOFF)

    @settings(max_examples=50, deadline=None)
    @given(_weights, _states)
    def test_stochastic_maps_do_not_increase_either_functional(self, weights, x):
        A = np.array(weights).reshape(3, 3)
        A /= A.sum(axis=1, keepdims=True)
        x = np.array(x)

        for kind in LyapunovKind:
            before = consensus_lyapunov(x, kind)
            assert consensus_lyapunov(A @ x, kind) <= before + 1e-12


class TestCheckConsensusMatrix:
    def test_accepts_row_stochastic_matrices(self):
        assert check_consensus_matrix([[0.5, 0.5], [0.2, 0.8]], TimeDomain.DISCRETE)

    def test_accepts_laplacian_generators(self):
        assert check_consensus_matrix([[-1.0, 1.0], [2.0, -2.0]], TimeDomain.CONTINUOUS)

    @pytest.mark.parametrize(
        "A,time",
        [
            ([[0.5, 0.6], [0.2, 0.8]], TimeDomain.DISCRETE),
            ([[1.5, -0.5], [0.2, 0.8]], TimeDomain.DISCRETE),
            ([[-1.0, 1.0], [2.0, -1.0]], TimeDomain.CONTINUOUS),
            ([[1.0, -1.0], [2.0, -2.0]], TimeDomain.CONTINUOUS),
        ],
        ids=["row-sum", "negative-entry", "nonzero-row-sum", "not-metzler"],
    )
    def test_rejects_other_matrices(self, A, time):
        assert not check_consensus_matrix(A, time)
