"""Deterministic Sobol' sequence streams.

A stream is a resumable cursor over the d-dimensional Sobol' sequence
(Joe-Kuo direction numbers, Gray-code order). The all-zeros first point
of the raw sequence is skipped, so the first emitted point is (0.5, ..., 0.5).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from .errors import UnsupportedDimensionError

# scipy ships Joe-Kuo direction numbers up to this dimension.
MAX_DIMENSION = 21201


@dataclass
class SobolStream:
    """Single-owner cursor over the skip-zero Sobol' sequence.

    Two streams with equal dimension and equal index emit identical
    points, and emitting k then j points equals emitting k+j at once.
    """

    dimension: int
    index: int = 0
    _engine: qmc.Sobol = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise UnsupportedDimensionError(f"dimension must be >= 1, got {self.dimension}")
        if self.dimension > MAX_DIMENSION:
            raise UnsupportedDimensionError(
                f"dimension {self.dimension} exceeds the direction-number table ({MAX_DIMENSION})"
            )
        self._engine = qmc.Sobol(d=self.dimension, scramble=False)
        # +1 skips the initial all-zeros point of the raw sequence.
        self._engine.fast_forward(self.index + 1)

    def next(self, count: int) -> np.ndarray:
        """Emit the next `count` points as a (count, d) array in [0, 1)."""
        if count < 0:
            raise ValueError(f"count must be >= 0, got {count}")
        if count == 0:
            return np.empty((0, self.dimension))
        pts = self._engine.random(count)
        self.index += count
        return pts

    def skip(self, count: int) -> "SobolStream":
        """Advance as if `count` points were emitted and discarded."""
        if count < 0:
            raise ValueError(f"count must be >= 0, got {count}")
        if count > 0:
            self._engine.fast_forward(count)
            self.index += count
        return self


def sobol_points(dimension: int, count: int, skip: int = 0) -> np.ndarray:
    """One-shot draw: `count` points after skipping `skip`, as (count, d)."""
    stream = SobolStream(dimension)
    stream.skip(skip)
    return stream.next(count)
