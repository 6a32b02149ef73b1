"""G-matrices and numerical G-stability certification.

A scheme (rho, sigma) is G-stable with matrix G when, for every window
v = (v_0, .., v_p),

    q(v) = (rho(E)v)(sigma(E)v) - 1/2 V_1^T G V_1 + 1/2 V_0^T G V_0 >= 0,

with V_0 = (v_0, .., v_{p-1}) and V_1 = (v_1, .., v_p). q is a quadratic form
on R^{p+1}, so certification is an eigenvalue test on a 3x3 (or 2x2)
symmetric matrix.

The closed-form family matrix and the BDF2 matrix quoted alongside it differ
by a factor 2, so the certifier is the source of truth: a candidate G that
fails at scale 1 is retried as 2G and the scale that worked is reported.
"""

from __future__ import annotations

from functools import lru_cache
from typing import TYPE_CHECKING, Literal, Self

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..core.exceptions import GridMismatchError, GStabilityViolationError, ParameterError
from .coefficients import SchemeCoefficients, family_parameters

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from ..entropy.grid import History

# Relative tolerance for the minimum eigenvalue of the remainder form
PSD_REL_TOL = 1e-12


class GMatrix(BaseModel):
    """Symmetric positive definite p x p matrix defining the G-norm.

    Attributes:
        entries: Row-major matrix entries
    """

    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[float, ...], ...]

    @model_validator(mode="after")
    def validate_spd(self) -> Self:
        """Reject non-square, non-symmetric, or indefinite matrices."""
        p = len(self.entries)
        if p not in (1, 2) or any(len(row) != p for row in self.entries):
            raise ValueError(f"G must be 1x1 or 2x2, got shape {[len(r) for r in self.entries]}")
        for i in range(p):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"G must be symmetric, G[{i}][{j}] != G[{j}][{i}]")
        if np.linalg.eigvalsh(np.array(self.entries)).min() <= 0.0:
            raise ValueError("G must be positive definite")
        return self

    @property
    def p(self) -> int:
        return len(self.entries)

    @property
    def matrix(self) -> NDArray[np.float64]:
        return np.array(self.entries, dtype=float)

    def scaled(self, factor: float) -> GMatrix:
        return GMatrix(entries=tuple(tuple(factor * x for x in row) for row in self.entries))

    @classmethod
    def from_array(cls, values: ArrayLike) -> GMatrix:
        """Build a GMatrix from any 2-D array-like.

        Raises:
            ParameterError: If the matrix is not symmetric positive definite.
        """
        arr = np.atleast_2d(np.asarray(values, dtype=float))
        try:
            return cls(entries=tuple(tuple(float(x) for x in row) for row in arr))
        except ValidationError as e:
            raise ParameterError(f"Invalid G-matrix: {e.errors()[0]['msg']}") from e


class GStabilityCertificate(BaseModel):
    """Outcome of verify_g_stability.

    Attributes:
        certified: The remainder form is positive semidefinite
        remainder_min_eig: Smallest eigenvalue of the remainder matrix
        scale_used: 1 if G itself certified, 2 if 2G did (1 when neither did)
        remainder: The (p+1)x(p+1) remainder matrix at scale_used
    """

    model_config = ConfigDict(frozen=True)

    certified: bool
    remainder_min_eig: float
    scale_used: Literal[1, 2]
    remainder: tuple[tuple[float, ...], ...]

    def evaluate(self, v: ArrayLike) -> float:
        """Value of the remainder quadratic form q(v)."""
        vec = np.asarray(v, dtype=float)
        return float(vec @ np.array(self.remainder) @ vec)


def family_g_matrix(alpha2: float, beta2: float) -> GMatrix:
    """Closed-form G candidate for the family scheme (alpha2, beta2).

    Its determinant is (beta2 - alpha2/2)/4. Pass the result through
    verify_g_stability, which decides the scale.

    Raises:
        GStabilityViolationError: If beta2 <= alpha2/2.
    """
    if not beta2 > alpha2 / 2.0:
        raise GStabilityViolationError(
            f"G is not positive definite for beta2 <= alpha2/2 (alpha2={alpha2}, beta2={beta2})",
            context={"alpha2": alpha2, "beta2": beta2},
        )
    g00 = ((2.0 * alpha2 - 5.0) * alpha2 + 2.0 * beta2 + 2.0) / 4.0
    g01 = ((-2.0 * alpha2 + 3.0) * alpha2 - 2.0 * beta2) / 4.0
    g11 = ((2.0 * alpha2 - 1.0) * alpha2 + 2.0 * beta2) / 4.0
    return GMatrix(entries=((g00, g01), (g01, g11)))


def remainder_matrix(s: SchemeCoefficients, g: NDArray[np.float64]) -> tuple[NDArray[np.float64], float]:
    """Symmetric matrix of q(v) and the magnitude of the terms forming it.

    Returns:
        Tuple of (remainder matrix, largest absolute entry among the
        product and G contributions before cancellation).
    """
    a = np.asarray(s.alphas)
    b = np.asarray(s.betas)
    product = 0.5 * (np.outer(a, b) + np.outer(b, a))
    m = product.copy()
    m[1:, 1:] -= 0.5 * g
    m[:-1, :-1] += 0.5 * g
    magnitude = max(float(np.abs(product).max()), 0.5 * float(np.abs(g).max()))
    return m, magnitude


def verify_g_stability(s: SchemeCoefficients, g: GMatrix | ArrayLike) -> GStabilityCertificate:
    """Certify (rho, sigma) as G-stable with G (or 2G).

    Args:
        s: Scheme to certify.
        g: Candidate G-matrix (GMatrix or array-like).

    Returns:
        The certificate; certified=False when neither G nor 2G works.

    Raises:
        ParameterError: If g is not symmetric positive definite.
        GridMismatchError: If g is not p x p.
    """
    gm = g if isinstance(g, GMatrix) else GMatrix.from_array(g)
    if gm.p != s.p:
        raise GridMismatchError(f"G is {gm.p}x{gm.p} but scheme {s.name} has p={s.p}")

    attempts: list[GStabilityCertificate] = []
    for scale in (1, 2):
        m, magnitude = remainder_matrix(s, scale * gm.matrix)
        min_eig = float(np.linalg.eigvalsh(m).min())
        cert = GStabilityCertificate(
            certified=min_eig >= -PSD_REL_TOL * magnitude,
            remainder_min_eig=min_eig,
            scale_used=scale,
            remainder=tuple(tuple(float(x) for x in row) for row in m),
        )
        if cert.certified:
            logger.trace(f"{s.name} certified at scale {scale} (min eig {min_eig:.3e})")
            return cert
        attempts.append(cert)

    logger.debug(f"{s.name} not certified (min eig {attempts[0].remainder_min_eig:.3e} at scale 1)")
    return attempts[0]


@lru_cache(maxsize=32)
def scheme_g_matrix(s: SchemeCoefficients) -> GMatrix:
    """Certified G-matrix of a supported scheme, already rescaled.

    p = 1 schemes (midpoint, Euler) use the 1x1 identity. p = 2 schemes must
    be second order; their family matrix is certified and rescaled.

    Raises:
        GStabilityViolationError: If no certified G is available.
    """
    if s.p == 1:
        candidate = GMatrix(entries=((1.0,),))
    else:
        candidate = family_g_matrix(*family_parameters(s))

    cert = verify_g_stability(s, candidate)
    if not cert.certified:
        raise GStabilityViolationError(
            f"{s.name} is not G-stable (remainder min eigenvalue {cert.remainder_min_eig:.3e})",
            context={"scheme": s.name, "remainder_min_eig": cert.remainder_min_eig},
        )
    return candidate if cert.scale_used == 1 else candidate.scaled(2.0)


def g_norm_sq(g: GMatrix, window: History) -> float:
    """G-weighted squared norm sum_ij G_ij <v_{k+i}, v_{k+j}> of a window.

    The inner product is the grid-weighted discrete L2 product, summed over
    nodes and species and multiplied by h.

    Raises:
        GridMismatchError: If the window length differs from p.
    """
    if len(window.states) != g.p:
        raise GridMismatchError(f"Window has {len(window.states)} states but G is {g.p}x{g.p}")
    stack = np.stack([state.values.ravel() for state in window.states])
    gram = (stack @ stack.T) * window.grid_h
    return float(np.sum(g.matrix * gram))
