"""Discrete entropy, relative entropy, and entropy-production diagnostics."""

from __future__ import annotations

from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..core.exceptions import DomainError
from ..schemes.gstability import GMatrix, g_norm_sq
from .grid import GridState, History


class EntropyConfig(BaseModel):
    """Exponent of the entropy density h(u) = sum_j (u_j)^alpha.

    Attributes:
        alpha: Entropy exponent
        experimental: Allow alpha outside the range covered by the analysis
            (alpha = 1 in particular)
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    experimental: bool = False

    @model_validator(mode="after")
    def validate_alpha(self) -> Self:
        """1 < alpha <= 2, relaxed to alpha >= 1 in experimental mode."""
        if self.experimental:
            if not self.alpha >= 1.0:
                raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        elif not 1.0 < self.alpha <= 2.0:
            raise ValueError(f"alpha must lie in (1, 2], got {self.alpha} (set experimental to relax)")
        return self

    @property
    def analysis_backed(self) -> bool:
        return 1.0 < self.alpha <= 2.0

    def integral(self, u: GridState) -> float:
        """Grid quadrature of h(u) over the torus."""
        return float(np.sum(u.values**self.alpha) * u.grid_h)


def discrete_entropy(g: GMatrix, hist: History) -> float:
    """H[V_k] = 1/2 ||V_k||_G^2 with grid-weighted inner products."""
    return 0.5 * g_norm_sq(g, hist)


def relative_entropy(h_k: float, h_star: float) -> float:
    return h_k - h_star


def _require_positive(w: GridState) -> None:
    low = float(w.values.min())
    if not low > 0.0:
        raise DomainError("Entropy production needs strictly positive w", context={"min_w": low})


def skt_entropy_production(w: GridState, alpha: float, d1: float, d2: float) -> float:
    """(2/alpha^2)(alpha - 1) * int sum_j d_j |grad w_j^{alpha/2}|^2.

    Gradients are periodic forward differences.

    Raises:
        DomainError: If w is not strictly positive.
    """
    _require_positive(w)
    h = w.grid_h
    root = w.values ** (alpha / 2.0)
    grad_sq = ((np.roll(root, -1, axis=1) - root) / h) ** 2
    weights = np.array([d1, d2][: w.n_species])
    return float((2.0 / alpha**2) * (alpha - 1.0) * h * np.sum(weights[:, None] * grad_sq))


def dlss_entropy_production(w: GridState, alpha: float) -> float:
    """int (Laplacian of w^{alpha/2})^2 with the 3-point second difference.

    The alpha-dependent constant in front of this integral has no closed
    form, so the raw integral is returned.

    Raises:
        DomainError: If w is not strictly positive.
    """
    _require_positive(w)
    h = w.grid_h
    root = w.values ** (alpha / 2.0)
    lap = (np.roll(root, -1, axis=1) - 2.0 * root + np.roll(root, 1, axis=1)) / h**2
    return float(h * np.sum(lap**2))
