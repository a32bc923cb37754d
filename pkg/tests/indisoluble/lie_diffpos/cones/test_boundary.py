#!/usr/bin/env python3

import numpy as np
import pytest

from indisoluble.lie_diffpos.cones.boundary import boundary_sample
from indisoluble.lie_diffpos.cones.cone_spec import (
    make_orthant,
    make_polyhedral,
    make_quadratic,
    quadratic_form,
    sync_cone,
)
from indisoluble.lie_diffpos.cones.membership import margins
from indisoluble.lie_diffpos.errors import EmptyBoundaryError


class TestBoundarySample:
    @pytest.mark.parametrize(
        "cone",
        [
            make_quadratic(np.diag([1.0, -1.0, -2.0])),
            make_quadratic(np.diag([3.0, 1.0, -1.0, -1.0])),
            sync_cone(1, 4, 2.0),
            sync_cone(3, 2, 1.0),
            make_orthant(3),
            make_polyhedral([[1.0, 0.0], [1.0, 1.0]]),
        ],
        ids=["lorentz", "rank-two", "sync-scalar", "sync-rotation", "orthant", "wedge"],
    )
    def test_samples_are_unit_boundary_vectors(self, cone):
        samples = boundary_sample(cone, 25, seed=4)

        assert samples.shape == (25, cone.n)
        np.testing.assert_allclose(np.linalg.norm(samples, axis=1), 1.0)
        np.testing.assert_allclose(margins(cone, samples), 0.0, atol=1e-9)

    def test_quadratic_samples_annihilate_the_form(self):
        cone = make_quadratic(np.diag([2.0, -1.0, -0.5]))
        P = quadratic_form(cone)

        samples = boundary_sample(cone, 10, seed=0)

        np.testing.assert_allclose(
            np.einsum("ri,ij,rj->r", samples, P, samples), 0.0, atol=1e-12
        )

    def test_is_reproducible_from_the_seed(self):
        cone = make_orthant(4)

        np.testing.assert_array_equal(
            boundary_sample(cone, 8, seed=9), boundary_sample(cone, 8, seed=9)
        )

    def test_covers_every_orthant_face(self):
        samples = boundary_sample(make_orthant(3), 9, seed=1)

        zeros = np.isclose(samples, 0.0, atol=1e-9)
        assert all(np.any(zeros[:, j]) for j in range(3))

    def test_scalar_sync_samples_sit_on_the_positive_nappe(self):
        cone = sync_cone(1, 3, 1.5)

        samples = boundary_sample(cone, 12, seed=2)

        assert np.all(samples @ np.ones(3) >= 0.0)

    def test_definite_forms_have_no_boundary(self):
        with pytest.raises(EmptyBoundaryError, match="Definite"):
            boundary_sample(make_quadratic(np.eye(2)), 3, seed=0)

    def test_rejects_empty_requests(self):
        with pytest.raises(ValueError, match="at least 1"):
            boundary_sample(make_orthant(2), 0, seed=0)
