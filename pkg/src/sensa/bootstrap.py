"""Bootstrap envelopes for cumulative curves and global indices.

The resampling unit is one whole evaluation block (a design row with
all its m+2 observations), never an individual evaluation: the index
estimators rely on the pairing inside a block, and resampling must
preserve it. Replicate r draws its own generator seeded seed + r, so
replicates are reproducible and independent of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .estimators import EvaluationBlock, SensitivityIndices, compute_indices, estimate_variance
from .regional import AlphaEpsilon, CumulativeCurve, boxcar_contributions, cumulative_local


@dataclass(frozen=True)
class BootstrapSpec:
    """Replicate count and the resampler's base seed.

    The design itself stays deterministic; randomness enters only
    through which blocks each replicate draws.
    """

    replicates: int = 25
    seed: int = 0

    def __post_init__(self):
        if self.replicates < 0:
            raise ValueError(f"replicates must be >= 0, got {self.replicates}")


def _resample(blocks: Sequence[EvaluationBlock], seed: int) -> list[EvaluationBlock]:
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(blocks), size=len(blocks))
    return [blocks[t] for t in idx]


def bootstrap_curves(blocks: Sequence[EvaluationBlock], i: int, j: int,
                     params: AlphaEpsilon, spec: BootstrapSpec) -> list[CumulativeCurve]:
    """R replicate cumulative curves for output j along input i.

    Each replicate recomputes its own output variance from the
    resampled blocks, so each curve's terminal value is that
    replicate's total-sensitivity estimate.
    """
    blocks = list(blocks)
    curves = []
    for r in range(spec.replicates):
        sample = _resample(blocks, spec.seed + r)
        vhat = estimate_variance(sample)[j - 1]
        t = boxcar_contributions(sample, i, j, params)
        curves.append(cumulative_local(t, vhat, len(sample)))
    return curves


def bootstrap_indices(blocks: Sequence[EvaluationBlock],
                      spec: BootstrapSpec) -> list[SensitivityIndices]:
    """R replicate index sets from block resampling."""
    blocks = list(blocks)
    return [compute_indices(_resample(blocks, spec.seed + r))
            for r in range(spec.replicates)]


def percentile_band(curves: Sequence[CumulativeCurve], grid: np.ndarray,
                    coverage: float = 0.95) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise (lo, hi) percentile envelope of curves on an x grid."""
    tail = 100.0 * (1.0 - coverage) / 2.0
    values = np.stack([c.value_at(grid) for c in curves])
    return (np.percentile(values, tail, axis=0),
            np.percentile(values, 100.0 - tail, axis=0))
