"""Nodal state on the periodic unit grid and the p-state history window."""

from __future__ import annotations

from typing import Any, Self

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class GridState(BaseModel):
    """Per-species nodal values on x_i = i/N, i = 0..N-1, of the unit torus.

    Depending on context the values are densities u, entropy variables v,
    blended states sigma(E)v, or reconstructed w. The array is copied to
    float64 and made read-only on construction.

    Attributes:
        values: Array of shape (n_species, N)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: NDArray[np.float64]

    @field_validator("values", mode="before")
    @classmethod
    def _as_readonly_array(cls, v: Any) -> NDArray[np.float64]:
        arr = np.array(v, dtype=np.float64, copy=True)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_shape(self) -> Self:
        """One or two species, at least one node, finite values."""
        if self.values.ndim != 2 or self.values.shape[0] not in (1, 2) or self.values.shape[1] < 1:
            raise ValueError(f"values must have shape (1|2, N), got {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        return self

    @classmethod
    def from_flat(cls, flat: NDArray[np.float64], n_species: int) -> GridState:
        """Rebuild a state from the species-major flat vector used by Newton."""
        return cls(values=np.reshape(flat, (n_species, -1)))

    @property
    def n_species(self) -> int:
        return self.values.shape[0]

    @property
    def grid_n(self) -> int:
        return self.values.shape[1]

    @property
    def grid_h(self) -> float:
        return 1.0 / self.grid_n

    @property
    def nodes(self) -> NDArray[np.float64]:
        return np.arange(self.grid_n) * self.grid_h

    @property
    def flat(self) -> NDArray[np.float64]:
        return self.values.ravel()

    def same_grid(self, other: GridState) -> bool:
        return self.values.shape == other.values.shape


class History(BaseModel):
    """Window V_k = (v_k, .., v_{k+p-1}) of consecutive states, oldest first."""

    model_config = ConfigDict(frozen=True)

    states: tuple[GridState, ...]

    @model_validator(mode="after")
    def validate_window(self) -> Self:
        """Non-empty and every state on the same grid."""
        if not self.states:
            raise ValueError("History needs at least one state")
        first = self.states[0]
        for i, state in enumerate(self.states[1:], start=1):
            if not first.same_grid(state):
                raise ValueError(f"State {i} has shape {state.values.shape}, expected {first.values.shape}")
        return self

    @property
    def p(self) -> int:
        return len(self.states)

    @property
    def latest(self) -> GridState:
        return self.states[-1]

    @property
    def n_species(self) -> int:
        return self.states[0].n_species

    @property
    def grid_n(self) -> int:
        return self.states[0].grid_n

    @property
    def grid_h(self) -> float:
        return self.states[0].grid_h

    def shifted(self, v_new: GridState) -> History:
        """Window V_{k+1}: drop the oldest state and append v_new."""
        return History(states=(*self.states[1:], v_new))
