#!/usr/bin/env python3

import numpy as np
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st

from indisoluble.lie_diffpos.cones.cone_spec import (
    make_orthant,
    make_polyhedral,
    make_quadratic,
    sync_cone,
)
from indisoluble.lie_diffpos.cones.membership import margin
from indisoluble.lie_diffpos.errors import (
    DimensionMismatchError,
    UnsupportedCombinationError,
)
from indisoluble.lie_diffpos.positivity.certificate import (
    CertificateMode,
    certificate_to_dict,
    exact_mode,
    make_certificate,
    sampled_mode,
    sign_pattern_mode,
)
from indisoluble.lie_diffpos.positivity.linear_map import as_linear_map
from indisoluble.lie_diffpos.positivity.positive_map import (
    default_mode,
    is_positive_map,
)


@pytest.fixture
def lorentz():
    return make_quadratic(np.diag([1.0, 1.0, -1.0]))


class TestCertificate:
    @pytest.mark.parametrize(
        "value,positive,strict",
        [
            (0.5, True, True),
            (0.0, True, False),
            (-1e-12, True, False),
            (-0.1, False, False),
        ],
    )
    def test_margin_classification(self, value, positive, strict):
        certificate = make_certificate(value, exact_mode(), np.ones(2))

        assert certificate.positive is positive
        assert certificate.strict is strict
        assert (certificate.witness is None) is positive

    def test_sampled_mode_requires_rays(self):
        with pytest.raises(ValueError, match="at least one ray"):
            sampled_mode(0)

    def test_document_lists_mode_parameters(self):
        certificate = make_certificate(-0.5, sampled_mode(10, 3), np.array([1.0, 0.0]))

        assert certificate_to_dict(certificate) == {
            "positive": False,
            "strict": False,
            "margin": -0.5,
            "mode": {"kind": "sampled", "n_rays": 10, "seed": 3},
            "witness": [1.0, 0.0],
        }


class TestAsLinearMap:
    @pytest.mark.parametrize(
        "entries",
        [[1.0, 2.0], [[1.0, 2.0]], []],
        ids=["vector", "rectangular", "empty"],
    )
    def test_rejects_non_square_input(self, entries):
        with pytest.raises(DimensionMismatchError, match="square"):
            as_linear_map(entries)

    def test_checks_the_acting_dimension(self):
        with pytest.raises(DimensionMismatchError, match="does not act on R\\^3"):
            as_linear_map(np.eye(2), 3)

    def test_rejects_non_finite_entries(self):
        with pytest.raises(ValueError, match="finite"):
            as_linear_map([[1.0, np.inf], [0.0, 1.0]])


class TestExactMode:
    def test_strict_diagonal_expansion(self, lorentz):
        certificate = is_positive_map(np.diag([3.0, 2.0, 0.5]), lorentz)

        assert certificate.strict
        assert certificate.mode.kind is CertificateMode.EXACT_S_PROCEDURE

    def test_identity_is_positive_but_not_strict(self, lorentz):
        certificate = is_positive_map(np.eye(3), lorentz)

        assert certificate.positive
        assert not certificate.strict

    def test_witness_leaves_the_cone(self, lorentz):
        T = np.diag([1.0, 1.0, 2.0])

        certificate = is_positive_map(T, lorentz)

        assert not certificate.positive
        assert margin(lorentz, T @ certificate.witness) < 0.0

    def test_scalar_sync_cone_rejects_nappe_swaps(self):
        cone = sync_cone(1, 3, 1.5)

        certificate = is_positive_map(-2.0 * np.eye(3), cone)

        assert not certificate.positive
        np.testing.assert_allclose(certificate.witness, np.ones(3) / np.sqrt(3.0))

    def test_requires_a_quadratic_cone(self):
        with pytest.raises(UnsupportedCombinationError, match="No exact map test"):
            is_positive_map(np.eye(2), make_orthant(2), exact_mode())


class TestSignPatternMode:
    def test_positive_matrices_are_strict(self):
        certificate = is_positive_map([[1.0, 2.0], [0.5, 1.0]], make_orthant(2))

        assert certificate.strict
        assert certificate.margin == pytest.approx(0.25)

    def test_zero_entries_are_not_strict(self):
        certificate = is_positive_map([[1.0, 0.0], [0.5, 1.0]], make_orthant(2))

        assert certificate.positive
        assert not certificate.strict

    def test_negative_entry_gives_a_basis_witness(self):
        certificate = is_positive_map([[1.0, -2.0], [1.0, 1.0]], make_orthant(2))

        assert not certificate.positive
        np.testing.assert_array_equal(certificate.witness, [0.0, 1.0])

    def test_symmetric_orthant_accepts_nonpositive_maps(self):
        assert is_positive_map(-np.eye(2), make_orthant(2)).positive
        assert is_positive_map([[-1.0, -2.0], [-3.0, -4.0]], make_orthant(2)).strict

    def test_one_sided_orthant_rejects_nonpositive_maps(self):
        certificate = is_positive_map(-np.eye(2), make_orthant(2, symmetric=False))

        assert not certificate.positive
        assert certificate.margin == pytest.approx(-1.0)

    def test_mixed_column_is_the_witness_on_symmetric_orthants(self):
        certificate = is_positive_map([[1.0, -1.0], [-1.0, -1.0]], make_orthant(2))

        assert not certificate.positive
        np.testing.assert_array_equal(certificate.witness, [1.0, 0.0])

    def test_requires_an_orthant(self, lorentz):
        with pytest.raises(UnsupportedCombinationError, match="needs an orthant"):
            is_positive_map(np.eye(3), lorentz, sign_pattern_mode())


class TestSampledMode:
    def test_identity_keeps_boundary_rays_on_the_boundary(self):
        cone = make_polyhedral([[1.0, 0.0], [1.0, 1.0]], symmetric=False)

        certificate = is_positive_map(np.eye(2), cone, sampled_mode(50, 1))

        assert certificate.positive
        assert not certificate.strict

    def test_agrees_with_exact_mode_on_strict_maps(self, lorentz):
        T = np.diag([3.0, 2.0, 0.5])

        assert is_positive_map(T, lorentz, sampled_mode(200, 0)).strict

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000), st.sampled_from([(3, 1), (4, 1), (4, 2)]))
    def test_never_contradicts_exact_mode(self, seed, shape):
        n, k = shape
        rng = np.random.default_rng(seed)
        Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        cone = make_quadratic(Q @ np.diag(np.r_[np.ones(k), -np.ones(n - k)]) @ Q.T)
        spectrum = np.r_[rng.uniform(1.5, 2.5, k), rng.uniform(-1.0, 1.0, n - k)]
        T = Q @ np.diag(spectrum) @ Q.T + 0.3 * rng.normal(size=(n, n))

        exact = is_positive_map(T, cone, exact_mode())
        sampled = is_positive_map(T, cone, sampled_mode(500, seed))

        if exact.margin > 1e-3:
            assert sampled.margin > 0.0
        if sampled.margin < -1e-3:
            assert not exact.positive

    def test_is_default_for_polyhedral_cones(self):
        cone = make_polyhedral([[1.0, 0.0]])

        assert default_mode(cone).kind is CertificateMode.SAMPLED


class TestDefaultMode:
    def test_quadratic_and_sync_cones_use_the_exact_test(self, lorentz):
        sync = sync_cone(3, 2, 1.0)

        assert default_mode(lorentz).kind is CertificateMode.EXACT_S_PROCEDURE
        assert default_mode(sync).kind is CertificateMode.EXACT_S_PROCEDURE

    def test_orthants_use_sign_patterns(self):
        assert default_mode(make_orthant(3)).kind is CertificateMode.SIGN_PATTERN
