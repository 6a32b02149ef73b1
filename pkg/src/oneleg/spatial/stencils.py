"""Periodic finite-difference stencils on the unit grid (last axis = nodes)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray


def second_difference(f: NDArray[np.float64]) -> NDArray[np.float64]:
    """f_{i+1} - 2 f_i + f_{i-1} with periodic wrap, unscaled."""
    return np.roll(f, -1, axis=-1) - 2.0 * f + np.roll(f, 1, axis=-1)


@lru_cache(maxsize=16)
def second_difference_matrix(n: int) -> sp.csr_matrix:
    """Cyclic tridiagonal matrix of second_difference on n nodes.

    The cached matrix is shared between callers; treat it as read-only.
    """
    if n < 3:
        raise ValueError(f"Periodic second difference needs at least 3 nodes, got {n}")
    ones = np.ones(n)
    d2 = sp.diags([ones[:-1], -2.0 * ones, ones[:-1]], [-1, 0, 1], shape=(n, n), format="lil")
    d2[0, n - 1] += 1.0
    d2[n - 1, 0] += 1.0
    return d2.tocsr()
