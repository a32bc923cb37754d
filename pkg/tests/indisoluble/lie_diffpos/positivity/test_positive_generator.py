#!/usr/bin/env python3

import numpy as np
import pytest
import scipy.linalg

from indisoluble.lie_diffpos.cones.boundary import boundary_sample
from indisoluble.lie_diffpos.cones.cone_spec import (
    make_orthant,
    make_polyhedral,
    make_quadratic,
)
from indisoluble.lie_diffpos.cones.membership import margins
from indisoluble.lie_diffpos.errors import UnsupportedCombinationError
from indisoluble.lie_diffpos.positivity.certificate import exact_mode, sampled_mode
from indisoluble.lie_diffpos.positivity.positive_generator import (
    boundary_fluxes,
    is_positive_generator,
)

_ROTATION = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])


@pytest.fixture
def lorentz():
    return make_quadratic(np.diag([1.0, -1.0, -1.0]))


class TestQuadraticGenerators:
    def test_expansion_of_the_axis_is_strict(self, lorentz):
        certificate = is_positive_generator(np.diag([1.0, 0.0, 0.0]), lorentz)

        assert certificate.strict

    @pytest.mark.parametrize(
        "A", [np.eye(3), _ROTATION], ids=["scaling", "rotation"]
    )
    def test_symmetries_of_the_cone_are_not_strict(self, lorentz, A):
        certificate = is_positive_generator(A, lorentz)

        assert certificate.positive
        assert not certificate.strict

    def test_expansion_across_the_cone_fails_with_witness(self, lorentz):
        A = np.diag([0.0, 1.0, 0.0])

        certificate = is_positive_generator(A, lorentz)

        assert not certificate.positive
        assert boundary_fluxes(A, lorentz, certificate.witness[None, :])[0] < 0.0

    def test_flow_of_a_strict_generator_keeps_rays_inside(self, lorentz):
        A = np.diag([1.0, 0.0, 0.0])
        rays = boundary_sample(lorentz, 20, seed=0)

        images = rays @ scipy.linalg.expm(0.5 * A).T

        assert np.all(margins(lorentz, images) > 0.0)


class TestMetzlerGenerators:
    def test_strongly_connected_coupling_is_strict(self):
        certificate = is_positive_generator([[-1.0, 1.0], [1.0, -1.0]], make_orthant(2))

        assert certificate.strict

    def test_one_way_coupling_is_not_strict(self):
        certificate = is_positive_generator([[-1.0, 0.0], [1.0, -1.0]], make_orthant(2))

        assert certificate.positive
        assert not certificate.strict

    def test_negative_off_diagonal_leaves_through_a_face(self):
        certificate = is_positive_generator([[0.0, -1.0], [1.0, 0.0]], make_orthant(2))

        assert not certificate.positive
        np.testing.assert_array_equal(certificate.witness, [0.0, 1.0])

    def test_exact_mode_needs_a_quadratic_cone(self):
        with pytest.raises(UnsupportedCombinationError):
            is_positive_generator(np.eye(2), make_orthant(2), exact_mode())


class TestSampledGenerators:
    def test_inward_rotation_of_a_wedge(self):
        cone = make_polyhedral([[1.0, 0.0], [0.0, 1.0]], symmetric=False)
        A = np.array([[-1.0, 0.5], [0.5, -1.0]])

        certificate = is_positive_generator(A, cone, sampled_mode(40, 2))

        assert certificate.positive
