"""Tests for G-matrices, G-stability certification and the scheme catalogue."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from oneleg.core.exceptions import GridMismatchError, GStabilityViolationError, ParameterError
from oneleg.entropy.grid import GridState, History
from oneleg.schemes import (
    GMatrix,
    family_g_matrix,
    bdf2,
    family_scheme,
    g_norm_sq,
    gamma_method,
    implicit_euler,
    implicit_midpoint,
    scheme_catalogue,
    scheme_g_matrix,
    verify_g_stability,
)

pytestmark = pytest.mark.unit

BDF2_G = [[0.5, -1.0], [-1.0, 2.5]]
SECOND_DIFFERENCE_SQUARE = np.array([[1.0, -2.0, 1.0], [-2.0, 4.0, -2.0], [1.0, -2.0, 1.0]])


class TestGMatrix:
    """GMatrix invariants."""

    def test_accepts_spd(self) -> None:
        """A symmetric positive definite matrix is accepted."""
        g = GMatrix.from_array(BDF2_G)
        assert g.p == 2
        np.testing.assert_array_equal(g.matrix, BDF2_G)

    def test_rejects_asymmetric(self) -> None:
        """Off-diagonal entries must match exactly."""
        with pytest.raises(ValidationError):
            GMatrix(entries=((1.0, 0.1), (0.0, 1.0)))

    def test_rejects_indefinite(self) -> None:
        """Indefinite matrices raise ParameterError through from_array."""
        with pytest.raises(ParameterError):
            GMatrix.from_array([[1.0, 2.0], [2.0, 1.0]])

    def test_rejects_three_by_three(self) -> None:
        """Only p in {1, 2} is supported."""
        with pytest.raises(ValidationError):
            GMatrix(entries=((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))


class TestFamilyGMatrix:
    """Closed-form family G candidate."""

    def test_bdf2_parameters(self) -> None:
        """(3/2, 1) gives (1/4) [[1, -2], [-2, 5]]."""
        g = family_g_matrix(1.5, 1.0)
        np.testing.assert_allclose(g.matrix, 0.25 * np.array([[1.0, -2.0], [-2.0, 5.0]]), atol=1e-15)

    def test_determinant(self, rng: np.random.Generator) -> None:
        """det G = (beta2 - alpha2/2)/4."""
        for _ in range(20):
            alpha2 = rng.uniform(0.5, 3.0)
            beta2 = alpha2 / 2.0 + rng.uniform(0.01, 10.0)
            g = family_g_matrix(alpha2, beta2)
            assert np.linalg.det(g.matrix) == pytest.approx((beta2 - alpha2 / 2.0) / 4.0, rel=1e-9)

    def test_half_half(self) -> None:
        """(1/2, 1/2) gives I/4 with determinant 1/16."""
        g = family_g_matrix(0.5, 0.5)
        np.testing.assert_allclose(g.matrix, 0.25 * np.eye(2), atol=1e-15)
        assert np.linalg.det(g.matrix) == pytest.approx(1.0 / 16.0)

    def test_gamma_parameters(self) -> None:
        """At the gamma substitution the matrix is diag(gamma, 1)/(2(gamma+1))."""
        gamma = 0.2
        s = gamma_method(gamma)
        g = family_g_matrix(s.alpha_p, s.beta_p)
        np.testing.assert_allclose(g.matrix, np.diag([gamma, 1.0]) / (2.0 * (gamma + 1.0)), atol=1e-14)

    def test_rejects_constraint_violation(self) -> None:
        """beta2 <= alpha2/2 raises."""
        with pytest.raises(GStabilityViolationError):
            family_g_matrix(1.0, 0.5)


class TestVerifyGStability:
    """Eigenvalue certification of the remainder form."""

    def test_bdf2_certified_with_remainder(self) -> None:
        """BDF2 with (1/2)[[1,-2],[-2,5]] leaves (1/4)(v0 - 2 v1 + v2)^2."""
        cert = verify_g_stability(bdf2(), BDF2_G)
        assert cert.certified
        assert cert.scale_used == 1
        np.testing.assert_allclose(np.array(cert.remainder), 0.25 * SECOND_DIFFERENCE_SQUARE, atol=1e-12)
        assert cert.remainder_min_eig >= -1e-10

    def test_bdf2_identity_rejected(self) -> None:
        """G = I is not a G-matrix for BDF2; q(0, 1, 1) = -1."""
        cert = verify_g_stability(bdf2(), np.eye(2))
        assert not cert.certified
        assert cert.scale_used == 1
        assert cert.evaluate([0.0, 1.0, 1.0]) == pytest.approx(-1.0)

    def test_bdf2_family_matrix_needs_scale_two(self) -> None:
        """The closed-form BDF2 candidate certifies only after doubling."""
        cert = verify_g_stability(bdf2(), family_g_matrix(1.5, 1.0))
        assert cert.certified
        assert cert.scale_used == 2

    @pytest.mark.parametrize("gamma", [9.0 - 4.0 * math.sqrt(5.0), 0.2, 0.5, 1.0])
    def test_gamma_method_remainder(self, gamma: float) -> None:
        """G = diag(gamma, 1)/(gamma+1) leaves gamma(1-gamma)/(2(gamma+1)^3)(v0 - 2 v1 + v2)^2."""
        g = np.diag([gamma, 1.0]) / (gamma + 1.0)
        cert = verify_g_stability(gamma_method(gamma), g)
        assert cert.certified
        assert cert.scale_used == 1
        coeff = gamma * (1.0 - gamma) / (2.0 * (gamma + 1.0) ** 3)
        np.testing.assert_allclose(np.array(cert.remainder), coeff * SECOND_DIFFERENCE_SQUARE, atol=1e-14)

    def test_midpoint_identity(self) -> None:
        """The mid-point rule is G-stable with the 1x1 identity."""
        cert = verify_g_stability(implicit_midpoint(), [[1.0]])
        assert cert.certified
        assert cert.scale_used == 1

    def test_scaling_invariance(self) -> None:
        """Certifying (s, G) at scale 1 matches certifying (s, G/2) at scale 2."""
        at_one = verify_g_stability(bdf2(), BDF2_G)
        at_two = verify_g_stability(bdf2(), np.array(BDF2_G) / 2.0)
        assert at_one.certified and at_two.certified
        assert (at_one.scale_used, at_two.scale_used) == (1, 2)
        np.testing.assert_allclose(np.array(at_one.remainder), np.array(at_two.remainder), atol=1e-15)

    def test_random_family_certified(self, rng: np.random.Generator) -> None:
        """Admissible family members (alpha2 >= 1/2) certify with the closed-form candidate."""
        for _ in range(100):
            alpha2 = rng.uniform(0.5, 3.0)
            beta2 = alpha2 / 2.0 + rng.uniform(0.01, 10.0)
            cert = verify_g_stability(family_scheme(alpha2, beta2), family_g_matrix(alpha2, beta2))
            assert cert.certified, (alpha2, beta2)
            assert cert.remainder_min_eig >= -1e-10

    def test_zero_unstable_family_not_certified(self) -> None:
        """alpha2 < 1/2 has a rho root outside the unit disc and is not certified."""
        cert = verify_g_stability(family_scheme(0.3, 0.5), family_g_matrix(0.3, 0.5))
        assert not cert.certified

    def test_dimension_mismatch(self) -> None:
        """A 1x1 G for a two-step scheme raises GridMismatchError."""
        with pytest.raises(GridMismatchError):
            verify_g_stability(bdf2(), [[1.0]])

    def test_non_spd_candidate(self) -> None:
        """Indefinite candidates raise ParameterError."""
        with pytest.raises(ParameterError):
            verify_g_stability(bdf2(), [[1.0, 0.0], [0.0, -1.0]])


class TestSchemeGMatrix:
    """Certified G-matrix lookup used by the integrator."""

    def test_bdf2_rescaled(self) -> None:
        """BDF2 gets (1/2)[[1,-2],[-2,5]]."""
        np.testing.assert_allclose(scheme_g_matrix(bdf2()).matrix, BDF2_G, atol=1e-15)

    def test_one_step_identity(self) -> None:
        """Mid-point and Euler use the 1x1 identity."""
        assert scheme_g_matrix(implicit_midpoint()).entries == ((1.0,),)
        assert scheme_g_matrix(implicit_euler()).entries == ((1.0,),)

    def test_gamma_rescaled(self) -> None:
        """The gamma-method gets diag(gamma, 1)/(gamma+1)."""
        g = scheme_g_matrix(gamma_method(0.2))
        np.testing.assert_allclose(g.matrix, np.diag([0.2, 1.0]) / 1.2, atol=1e-14)

    def test_uncertified_family_raises(self) -> None:
        """Zero-unstable family members have no G-matrix."""
        with pytest.raises(GStabilityViolationError):
            scheme_g_matrix(family_scheme(0.3, 0.5))


class TestGNormSq:
    """G-weighted window norm."""

    def test_identity_constant_state(self) -> None:
        """1x1 identity on v = c gives c^2 on the unit torus."""
        window = History(states=(GridState(values=np.full((1, 8), 3.0)),))
        assert g_norm_sq(GMatrix(entries=((1.0,),)), window) == pytest.approx(9.0)

    def test_bdf2_constant_window(self) -> None:
        """Entries of (1/2)[[1,-2],[-2,5]] sum to 1, so (c, c) gives c^2."""
        state = GridState(values=np.full((1, 10), 2.0))
        window = History(states=(state, state))
        assert g_norm_sq(GMatrix.from_array(BDF2_G), window) == pytest.approx(4.0)

    def test_positive_for_random_windows(self, rng: np.random.Generator) -> None:
        """Nonzero windows have strictly positive G-norm."""
        g = GMatrix.from_array(BDF2_G)
        for _ in range(50):
            window = History(
                states=(GridState(values=rng.normal(size=(2, 12))), GridState(values=rng.normal(size=(2, 12))))
            )
            assert g_norm_sq(g, window) > 0.0

    def test_window_length_mismatch(self) -> None:
        """A single-state window with a 2x2 G raises."""
        window = History(states=(GridState(values=np.ones((1, 4))),))
        with pytest.raises(GridMismatchError):
            g_norm_sq(GMatrix.from_array(BDF2_G), window)


class TestCatalogue:
    """Scheme catalogue rows."""

    def test_row_count_and_order(self) -> None:
        """bdf2, midpoint, three gamma-methods, then a 10 x 10 family grid."""
        rows = scheme_catalogue()
        assert len(rows) == 105
        assert [r.name for r in rows[:2]] == ["bdf2", "midpoint"]
        assert all(r.name.startswith("gamma(") for r in rows[2:5])

    def test_bdf2_row(self) -> None:
        """BDF2 is certified; its G entries are those of the doubled candidate."""
        row = scheme_catalogue()[0]
        assert row.certified and row.admissible
        assert row.scale_used == 2
        assert (row.g00, row.g01, row.g11) == pytest.approx((0.5, -1.0, 2.5))

    def test_inadmissible_family_row(self) -> None:
        """family(1, 0.45) violates beta2 > alpha2/2 and is marked inadmissible."""
        row = next(r for r in scheme_catalogue() if r.name == "family(1,0.45)")
        assert not row.admissible
        assert not row.certified
        assert row.g00 is None

    def test_all_admissible_rows_certified(self) -> None:
        """Every admissible row passes certification."""
        rows = scheme_catalogue()
        assert all(r.certified for r in rows if r.admissible)
        assert any(not r.admissible for r in rows)

    def test_midpoint_row_padding(self) -> None:
        """One-step rows leave the third coefficient and off-diagonal G empty."""
        row = scheme_catalogue()[1]
        assert row.p == 1
        assert row.alpha2 is None and row.beta2 is None
        assert row.g00 == 1.0 and row.g01 is None
