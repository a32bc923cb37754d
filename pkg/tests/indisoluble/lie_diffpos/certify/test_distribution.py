#!/usr/bin/env python3

import numpy as np
import pytest

from indisoluble.lie_diffpos.certify.distribution import check_invariant_distribution
from indisoluble.lie_diffpos.errors import DependentBasisError
from indisoluble.lie_diffpos.lie.group_spec import so3, so3_power, torus


class TestCheckInvariantDistribution:
    @pytest.mark.parametrize(
        "group,basis,expected",
        [
            (so3(), [[0.0, 0.0, 1.0]], True),
            (so3(), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], False),
            (so3(), np.eye(3), True),
            (torus(3), [[1.0, 0.0, 0.0], [0.0, 1.0, 1.0]], True),
            (so3_power(2), [np.tile(e, 2) for e in np.eye(3)], True),
            (so3_power(2), [[1.0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1.0, 0]], True),
            (so3_power(2), [[1.0, 0, 0, 1.0, 0, 0], [0, 1.0, 0, 0, 0, 0]], False),
        ],
        ids=[
            "so3-line",
            "so3-plane",
            "so3-algebra",
            "torus",
            "diagonal",
            "separate-factors",
            "mixed",
        ],
    )
    def test_closure_under_the_bracket(self, group, basis, expected):
        assert check_invariant_distribution(group, basis) is expected

    def test_rejects_dependent_vectors(self):
        with pytest.raises(DependentBasisError, match="dependent"):
            check_invariant_distribution(so3(), [[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])

    def test_rejects_an_empty_basis(self):
        with pytest.raises(DependentBasisError, match="at least one"):
            check_invariant_distribution(so3(), [])

    def test_rejects_vectors_of_the_wrong_length(self):
        with pytest.raises(ValueError, match="length 3"):
            check_invariant_distribution(so3(), [[1.0, 0.0]])
