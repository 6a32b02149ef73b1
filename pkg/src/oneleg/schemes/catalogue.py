"""Catalogue of named and family schemes with their certification results."""

from __future__ import annotations

import math

from loguru import logger
from pydantic import BaseModel, ConfigDict

from ..core.exceptions import GStabilityViolationError
from .coefficients import SchemeCoefficients, bdf2, family_scheme, gamma_method, implicit_midpoint
from .gstability import GMatrix, family_g_matrix, verify_g_stability

# gamma values with a documented optimality property
CATALOGUE_GAMMAS = (9.0 - 4.0 * math.sqrt(5.0), 0.2, 1.0)

# 10 x 10 sample of the (alpha2, beta2) plane
FAMILY_ALPHA2 = tuple((5 + k) / 10 for k in range(10))
FAMILY_BETA2 = tuple((1 + 4 * k) / 20 for k in range(10))


class CatalogueRow(BaseModel):
    """One scheme in the catalogue export.

    G entries and scale_used are None when no G applies (inadmissible
    parameters) or the entry does not exist (g01, g11 for p = 1).
    """

    model_config = ConfigDict(frozen=True)

    name: str
    p: int
    alpha0: float
    alpha1: float
    alpha2: float | None
    beta0: float
    beta1: float
    beta2: float | None
    g00: float | None
    g01: float | None
    g11: float | None
    certified: bool
    scale_used: int | None
    admissible: bool


def _certified_row(s: SchemeCoefficients, g: GMatrix) -> CatalogueRow:
    cert = verify_g_stability(s, g)
    gm = g.scaled(float(cert.scale_used)).matrix
    padded_a = (*s.alphas, None) if s.p == 1 else s.alphas
    padded_b = (*s.betas, None) if s.p == 1 else s.betas
    return CatalogueRow(
        name=s.name,
        p=s.p,
        alpha0=padded_a[0],
        alpha1=padded_a[1],
        alpha2=padded_a[2],
        beta0=padded_b[0],
        beta1=padded_b[1],
        beta2=padded_b[2],
        g00=float(gm[0, 0]),
        g01=float(gm[0, 1]) if s.p == 2 else None,
        g11=float(gm[1, 1]) if s.p == 2 else None,
        certified=cert.certified,
        scale_used=cert.scale_used,
        admissible=True,
    )


def _family_row(alpha2: float, beta2: float) -> CatalogueRow:
    try:
        s = family_scheme(alpha2, beta2)
    except GStabilityViolationError:
        # Coefficients are still well defined; only the G-stability constraint fails
        return CatalogueRow(
            name=f"family({alpha2:.6g},{beta2:.6g})",
            p=2,
            alpha0=alpha2 - 1.0,
            alpha1=1.0 - 2.0 * alpha2,
            alpha2=alpha2,
            beta0=0.5 - alpha2 + beta2,
            beta1=0.5 + alpha2 - 2.0 * beta2,
            beta2=beta2,
            g00=None,
            g01=None,
            g11=None,
            certified=False,
            scale_used=None,
            admissible=False,
        )
    return _certified_row(s, family_g_matrix(alpha2, beta2))


def scheme_catalogue() -> list[CatalogueRow]:
    """Named schemes followed by the family sample grid.

    Order: bdf2, midpoint, the three gamma-methods, then the family grid
    with alpha2 varying slowest.
    """
    rows = [_certified_row(bdf2(), family_g_matrix(1.5, 1.0))]
    rows.append(_certified_row(implicit_midpoint(), GMatrix(entries=((1.0,),))))
    for gamma in CATALOGUE_GAMMAS:
        s = gamma_method(gamma)
        rows.append(_certified_row(s, family_g_matrix(s.alpha_p, s.beta_p)))
    for alpha2 in FAMILY_ALPHA2:
        for beta2 in FAMILY_BETA2:
            rows.append(_family_row(alpha2, beta2))

    uncertified = [r.name for r in rows if r.admissible and not r.certified]
    if uncertified:
        logger.warning(f"Admissible schemes failed certification: {uncertified}")
    logger.debug(f"Scheme catalogue: {len(rows)} rows, {sum(not r.admissible for r in rows)} inadmissible")
    return rows
