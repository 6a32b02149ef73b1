"""Tests for one-leg scheme coefficients and order conditions."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from oneleg.core.exceptions import GStabilityViolationError, ParameterError
from oneleg.schemes import (
    SchemeCoefficients,
    bdf2,
    check_order,
    family_parameters,
    family_scheme,
    gamma_method,
    implicit_euler,
    implicit_midpoint,
)

pytestmark = pytest.mark.unit

GAMMA_STABLE_AT_INFINITY = 9.0 - 4.0 * math.sqrt(5.0)


class TestNamedSchemes:
    """Coefficients of the named schemes."""

    def test_bdf2_coefficients(self) -> None:
        """BDF2 is rho = (1/2, -2, 3/2), sigma = (0, 0, 1)."""
        s = bdf2()
        assert s.p == 2
        assert s.alphas == (0.5, -2.0, 1.5)
        assert s.betas == (0.0, 0.0, 1.0)

    def test_midpoint_coefficients(self) -> None:
        """Mid-point rule is rho = (-1, 1), sigma = (1/2, 1/2)."""
        s = implicit_midpoint()
        assert s.p == 1
        assert s.alphas == (-1.0, 1.0)
        assert s.betas == (0.5, 0.5)

    def test_euler_coefficients(self) -> None:
        """Implicit Euler is rho = (-1, 1), sigma = (0, 1)."""
        s = implicit_euler()
        assert (s.alphas, s.betas) == ((-1.0, 1.0), (0.0, 1.0))

    def test_gamma_one_fifth(self) -> None:
        """gamma = 1/5 gives alpha = (-1/6, -2/3, 5/6), beta = (2/9, 2/9, 5/9)."""
        s = gamma_method(0.2)
        np.testing.assert_allclose(s.alphas, (-1 / 6, -2 / 3, 5 / 6), atol=1e-15)
        np.testing.assert_allclose(s.betas, (2 / 9, 2 / 9, 5 / 9), atol=1e-15)

    def test_gamma_one(self) -> None:
        """gamma = 1 gives alpha = (-1/2, 0, 1/2), beta = (1/2, 0, 1/2)."""
        s = gamma_method(1.0)
        assert s.alphas == (-0.5, 0.0, 0.5)
        assert s.betas == (0.5, 0.0, 0.5)

    def test_gamma_stable_at_infinity_normalized(self) -> None:
        """sigma(1) = 1 within 1e-14 for gamma = 9 - 4 sqrt(5)."""
        s = gamma_method(GAMMA_STABLE_AT_INFINITY)
        assert abs(math.fsum(s.betas) - 1.0) <= 1e-14

    @pytest.mark.parametrize("gamma", [0.0, -0.1, 1.0000001, 2.0])
    def test_gamma_out_of_range(self, gamma: float) -> None:
        """gamma outside (0, 1] raises ParameterError."""
        with pytest.raises(ParameterError):
            gamma_method(gamma)


class TestFamily:
    """Two-parameter family of second-order schemes."""

    def test_family_recovers_bdf2_exactly(self) -> None:
        """(alpha2, beta2) = (3/2, 1) reproduces BDF2 coefficient-wise."""
        fam = family_scheme(1.5, 1.0)
        ref = bdf2()
        assert fam.alphas == ref.alphas
        assert fam.betas == ref.betas

    @pytest.mark.parametrize("gamma", [GAMMA_STABLE_AT_INFINITY, 0.2, 1.0])
    def test_family_recovers_gamma_method(self, gamma: float) -> None:
        """The gamma substitution reproduces gamma_method within 1e-14."""
        fam = family_scheme(1.0 / (gamma + 1.0), (3.0 * gamma + 1.0) / (2.0 * (gamma + 1.0) ** 2))
        ref = gamma_method(gamma)
        np.testing.assert_allclose(fam.alphas, ref.alphas, atol=1e-14)
        np.testing.assert_allclose(fam.betas, ref.betas, atol=1e-14)

    def test_family_rejects_boundary(self) -> None:
        """beta2 <= alpha2/2 raises GStabilityViolationError."""
        with pytest.raises(GStabilityViolationError):
            family_scheme(1.0, 0.4)
        with pytest.raises(GStabilityViolationError):
            family_scheme(1.0, 0.5)

    def test_family_rejects_nonpositive_alpha2(self) -> None:
        """alpha2 <= 0 raises ParameterError."""
        with pytest.raises(ParameterError):
            family_scheme(0.0, 0.5)

    def test_alpha2_checked_before_stability_bound(self) -> None:
        """A negative alpha2 is reported as such even when beta2 also fails its bound."""
        with pytest.raises(ParameterError, match="alpha2 must be positive") as exc_info:
            family_scheme(-1.0, -1.0)
        assert not isinstance(exc_info.value, GStabilityViolationError)

    def test_family_error_is_parameter_error(self) -> None:
        """G-stability violations map to the configuration exit code."""
        with pytest.raises(ParameterError) as exc_info:
            family_scheme(1.0, 0.45)
        assert exc_info.value.exit_code == 2


class TestCheckOrder:
    """Consistency and second-order conditions."""

    def test_bdf2_residuals_vanish(self) -> None:
        """All four residuals of BDF2 are exactly zero."""
        report = check_order(bdf2())
        assert report.residuals == (0.0, 0.0, 0.0, 0.0)
        assert report.consistent and report.second_order

    def test_midpoint_consistent_and_second_order(self) -> None:
        """The mid-point rule is consistent and second order."""
        report = check_order(implicit_midpoint())
        assert report.consistent
        assert report.second_order

    def test_euler_first_order_only(self) -> None:
        """Implicit Euler is consistent but not second order."""
        report = check_order(implicit_euler())
        assert report.consistent
        assert not report.second_order

    def test_inconsistent_scheme(self) -> None:
        """alpha = (-1, 0, 1), beta = (0, 0, 1) has rho'(1) = 2."""
        s = SchemeCoefficients(name="bad", p=2, alphas=(-1.0, 0.0, 1.0), betas=(0.0, 0.0, 1.0))
        report = check_order(s)
        assert not report.consistent
        assert not report.second_order
        assert report.residuals[1] == 1.0

    def test_random_family_members_second_order(self, rng: np.random.Generator) -> None:
        """Random admissible family members satisfy all order conditions."""
        for _ in range(100):
            alpha2 = rng.uniform(0.1, 3.0)
            beta2 = alpha2 / 2.0 + rng.uniform(0.01, 10.0)
            report = check_order(family_scheme(alpha2, beta2))
            assert report.second_order
            assert max(abs(r) for r in report.residuals) < 1e-12


class TestValidation:
    """SchemeCoefficients invariants."""

    def test_rejects_unnormalized_sigma(self) -> None:
        """sigma(1) != 1 is rejected."""
        with pytest.raises(ValidationError):
            SchemeCoefficients(name="x", p=1, alphas=(-1.0, 1.0), betas=(0.5, 0.6))

    def test_rejects_nonpositive_leading_alpha(self) -> None:
        """alpha_p must be positive."""
        with pytest.raises(ValidationError):
            SchemeCoefficients(name="x", p=1, alphas=(1.0, -1.0), betas=(0.0, 1.0))

    def test_rejects_wrong_length(self) -> None:
        """Coefficient vectors need p + 1 entries."""
        with pytest.raises(ValidationError):
            SchemeCoefficients(name="x", p=2, alphas=(-1.0, 1.0), betas=(0.0, 1.0))

    def test_frozen(self) -> None:
        """Schemes are immutable."""
        s = bdf2()
        with pytest.raises(ValidationError):
            s.name = "other"  # ty: ignore

    def test_family_parameters_roundtrip(self) -> None:
        """family_parameters recovers (alpha2, beta2) of a family member."""
        assert family_parameters(family_scheme(0.8, 0.9)) == (0.8, 0.9)

    def test_family_parameters_rejects_first_order(self) -> None:
        """A one-step scheme has no family parameters."""
        with pytest.raises(GStabilityViolationError):
            family_parameters(implicit_euler())
