"""One-leg multistep coefficients and their order conditions.

A one-leg method with p steps is the pair of polynomials

    rho(xi)   = sum_j alpha_j xi^j,    sigma(xi) = sum_j beta_j xi^j,   j = 0..p,

applied to the forward shift E. Only p in {1, 2} is supported: second order
is the ceiling for A-stable (hence G-stable) schemes, so longer windows buy
nothing here.
"""

from __future__ import annotations

import math
from typing import Literal, Self

from pydantic import BaseModel, ConfigDict, model_validator

from ..core.exceptions import GStabilityViolationError, ParameterError

# Normalization tolerance for sigma(1) = 1
SIGMA_NORMALIZATION_TOL = 1e-13

# Residual threshold for the order conditions
ORDER_TOL = 1e-12


class SchemeCoefficients(BaseModel):
    """Coefficients of a one-leg method (rho, sigma).

    Attributes:
        name: Human-readable label ("bdf2", "gamma(0.2)", ...)
        p: Step count (1 or 2)
        alphas: alpha_0 .. alpha_p
        betas: beta_0 .. beta_p
    """

    model_config = ConfigDict(frozen=True)

    name: str
    p: Literal[1, 2]
    alphas: tuple[float, ...]
    betas: tuple[float, ...]

    @model_validator(mode="after")
    def validate_coefficients(self) -> Self:
        """Check lengths, alpha_p > 0, beta_p > 0 and sigma(1) = 1."""
        if len(self.alphas) != self.p + 1 or len(self.betas) != self.p + 1:
            raise ValueError(f"Expected {self.p + 1} alphas and betas, got {len(self.alphas)} and {len(self.betas)}")
        if not self.alphas[-1] > 0:
            raise ValueError(f"alpha_p must be positive, got {self.alphas[-1]}")
        if not self.betas[-1] > 0:
            raise ValueError(f"beta_p must be positive, got {self.betas[-1]}")
        if abs(math.fsum(self.betas) - 1.0) > SIGMA_NORMALIZATION_TOL:
            raise ValueError(f"sigma(1) must equal 1, got {math.fsum(self.betas)!r}")
        return self

    @property
    def alpha_p(self) -> float:
        return self.alphas[-1]

    @property
    def beta_p(self) -> float:
        return self.betas[-1]


class OrderReport(BaseModel):
    """Residuals of the normalization, consistency and second-order conditions.

    Attributes:
        consistent: rho(1) = 0, rho'(1) = 1 and sigma(1) = 1 hold
        second_order: additionally rho'(1) + rho''(1) = 2 sigma'(1)
        residuals: (rho(1), rho'(1) - 1, sigma(1) - 1, rho'(1) + rho''(1) - 2 sigma'(1))
    """

    model_config = ConfigDict(frozen=True)

    consistent: bool
    second_order: bool
    residuals: tuple[float, float, float, float]


# ---------------------------------------------------------------------------
# Named schemes
# ---------------------------------------------------------------------------


def bdf2() -> SchemeCoefficients:
    """Two-step backward differentiation formula."""
    return SchemeCoefficients(name="bdf2", p=2, alphas=(0.5, -2.0, 1.5), betas=(0.0, 0.0, 1.0))


def implicit_midpoint() -> SchemeCoefficients:
    """Implicit mid-point rule; its G-norm is the plain norm."""
    return SchemeCoefficients(name="midpoint", p=1, alphas=(-1.0, 1.0), betas=(0.5, 0.5))


def implicit_euler() -> SchemeCoefficients:
    """Implicit Euler, used to produce v_1 before a two-step scheme can start."""
    return SchemeCoefficients(name="euler", p=1, alphas=(-1.0, 1.0), betas=(0.0, 1.0))


def gamma_method(gamma: float) -> SchemeCoefficients:
    """Two-step gamma-method.

    gamma = 9 - 4*sqrt(5) optimizes the stability at infinity, gamma = 1/5
    minimizes the error constant.

    Args:
        gamma: Free parameter in (0, 1].

    Raises:
        ParameterError: If gamma is outside (0, 1].
    """
    if not 0.0 < gamma <= 1.0:
        raise ParameterError(f"gamma must lie in (0, 1], got {gamma}", context={"gamma": gamma})

    s = gamma + 1.0
    alphas = (-gamma / s, (gamma - 1.0) / s, 1.0 / s)
    denom = 2.0 * s * s
    betas = (gamma * (gamma + 3.0) / denom, (gamma - 1.0) ** 2 / denom, (3.0 * gamma + 1.0) / denom)
    return SchemeCoefficients(name=f"gamma({gamma:.6g})", p=2, alphas=alphas, betas=betas)


def family_scheme(alpha2: float, beta2: float) -> SchemeCoefficients:
    """Member of the two-parameter family of second-order two-step schemes.

    (alpha2, beta2) = (3/2, 1) is BDF2; alpha2 = 1/(g+1), beta2 = (3g+1)/(2(g+1)^2)
    is the gamma-method with parameter g.

    Args:
        alpha2: Leading rho coefficient, must be positive.
        beta2: Leading sigma coefficient, must exceed alpha2/2.

    Raises:
        ParameterError: If alpha2 <= 0.
        GStabilityViolationError: If beta2 <= alpha2/2.
    """
    if not alpha2 > 0.0:
        raise ParameterError(f"alpha2 must be positive, got {alpha2}", context={"alpha2": alpha2})
    if not beta2 > alpha2 / 2.0:
        raise GStabilityViolationError(
            f"family scheme needs beta2 > alpha2/2, got alpha2={alpha2}, beta2={beta2}",
            context={"alpha2": alpha2, "beta2": beta2},
        )

    alphas = (alpha2 - 1.0, 1.0 - 2.0 * alpha2, alpha2)
    betas = (0.5 - alpha2 + beta2, 0.5 + alpha2 - 2.0 * beta2, beta2)
    return SchemeCoefficients(name=f"family({alpha2:.6g},{beta2:.6g})", p=2, alphas=alphas, betas=betas)


# ---------------------------------------------------------------------------
# Order conditions
# ---------------------------------------------------------------------------


def check_order(s: SchemeCoefficients) -> OrderReport:
    """Evaluate the consistency and second-order conditions of a scheme."""
    a, b = s.alphas, s.betas
    rho_1 = math.fsum(a)
    drho_1 = math.fsum(j * a_j for j, a_j in enumerate(a))
    ddrho_1 = math.fsum(j * (j - 1) * a_j for j, a_j in enumerate(a))
    sigma_1 = math.fsum(b)
    dsigma_1 = math.fsum(j * b_j for j, b_j in enumerate(b))

    residuals = (rho_1, drho_1 - 1.0, sigma_1 - 1.0, drho_1 + ddrho_1 - 2.0 * dsigma_1)
    consistent = all(abs(r) < ORDER_TOL for r in residuals[:3])
    return OrderReport(
        consistent=consistent,
        second_order=consistent and abs(residuals[3]) < ORDER_TOL,
        residuals=residuals,
    )


def family_parameters(s: SchemeCoefficients) -> tuple[float, float]:
    """Recover (alpha2, beta2) of a second-order two-step scheme.

    Every normalized second-order two-step scheme belongs to the family, so
    the leading coefficients determine it.

    Raises:
        GStabilityViolationError: If s is not a second-order two-step scheme.
    """
    if s.p != 2 or not check_order(s).second_order:
        raise GStabilityViolationError(
            f"{s.name} is not a second-order two-step scheme", context={"scheme": s.name}
        )
    return s.alpha_p, s.beta_p
