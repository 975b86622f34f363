"""Regional sensitivity: exact boxcar densities and their cumulative curves.

Every observation (one design row, one input dimension) contributes a
rectangular "boxcar" of local sensitivity spread uniformly over the
interval between its paired x-coordinates, widened by epsilon. Sums of
boxcars are kept exact as piecewise-constant functions over the merged
endpoint set; no histogram binning is involved anywhere, so curves and
densities carry no partitioning artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import DegenerateDensityError

if TYPE_CHECKING:
    from .estimators import EvaluationBlock


@dataclass(frozen=True)
class AlphaEpsilon:
    """Exponent alpha on output differences and the interval guard epsilon.

    alpha = 0 makes every contribution's numerator 1 (non-adaptive);
    alpha = 2 weights by squared differences (variance); negative alpha
    emphasizes regions of small output change. epsilon > 0 widens each
    interval and guards the width denominator against zero.
    """

    alpha: float = 2.0
    epsilon: float = 1e-4

    def __post_init__(self):
        if not np.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class PiecewiseConstantDensity:
    """Nonnegative step function: values[p] on [breakpoints[p], breakpoints[p+1]).

    Zero outside [breakpoints[0], breakpoints[-1]]. dropped_terms counts
    contributions discarded because a negative exponent met a zero
    output difference.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    dropped_terms: int = 0

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", np.asarray(self.breakpoints, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if len(self.breakpoints) != len(self.values) + 1:
            raise ValueError("need exactly one value per interval between breakpoints")
        if len(self.breakpoints) >= 2 and not np.all(np.diff(self.breakpoints) > 0):
            raise ValueError("breakpoints must be strictly ascending")

    def integral(self) -> float:
        return float(np.sum(self.values * np.diff(self.breakpoints)))

    def normalized(self) -> "PiecewiseConstantDensity":
        mass = self.integral()
        if mass <= 0:
            raise DegenerateDensityError("cannot normalize a density with zero total mass")
        return PiecewiseConstantDensity(self.breakpoints, self.values / mass, self.dropped_terms)


@dataclass(frozen=True)
class CumulativeCurve:
    """Piecewise-linear nondecreasing curve anchored at cumulative[0] = 0.

    Constant at 0 below the first breakpoint and constant at its final
    value above the last. defined is False when the normalizing variance
    was zero and the curve carries no information.
    """

    breakpoints: np.ndarray
    cumulative: np.ndarray
    defined: bool = True

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", np.asarray(self.breakpoints, dtype=float))
        object.__setattr__(self, "cumulative", np.asarray(self.cumulative, dtype=float))
        if len(self.breakpoints) != len(self.cumulative):
            raise ValueError("one cumulative value per breakpoint")

    def value_at(self, x) -> np.ndarray:
        """Evaluate the curve at x (scalar or array)."""
        return np.interp(np.asarray(x, dtype=float), self.breakpoints, self.cumulative,
                         left=0.0, right=float(self.cumulative[-1]))

    @property
    def terminal(self) -> float:
        return float(self.cumulative[-1])


def identity_cdf() -> CumulativeCurve:
    """CDF of the uniform density on [0, 1]."""
    return CumulativeCurve(np.array([0.0, 1.0]), np.array([0.0, 1.0]))


def sweep_boxcars(lo: np.ndarray, hi: np.ndarray, heights: np.ndarray,
                  dropped: int = 0) -> PiecewiseConstantDensity:
    """Sum rectangles of given heights over [lo, hi] into an exact step function.

    Endpoint sweep: breakpoints are the union of all interval endpoints,
    heights enter through a difference array and one cumulative sum, so
    the result is exact up to float addition, O((N + P) log N) overall.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    heights = np.asarray(heights, dtype=float)
    if lo.size == 0:
        return PiecewiseConstantDensity(np.array([0.0, 1.0]), np.array([0.0]), dropped)
    bp = np.unique(np.concatenate([lo, hi]))
    delta = np.zeros(len(bp))
    np.add.at(delta, np.searchsorted(bp, lo), heights)
    np.subtract.at(delta, np.searchsorted(bp, hi), heights)
    vals = np.cumsum(delta)[:-1]
    # cancellation can leave values a few ulp below zero
    np.maximum(vals, 0.0, out=vals)
    return PiecewiseConstantDensity(bp, vals, dropped)


def boxcar_intervals(blocks: Sequence["EvaluationBlock"], i: int,
                     epsilon: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-block (lo, hi, width + epsilon) for dimension i (1-based), in block order."""
    xa = np.array([b.xa[i - 1] for b in blocks])
    xb = np.array([b.xb[i - 1] for b in blocks])
    half = epsilon / 2.0
    lo = np.minimum(xa, xb) - half
    hi = np.maximum(xa, xb) + half
    return lo, hi, np.abs(xa - xb) + epsilon


def boxcar_contributions(blocks: Sequence["EvaluationBlock"], i: int, j: int,
                         params: AlphaEpsilon) -> PiecewiseConstantDensity:
    """Local sensitivity of output j to input i as an exact boxcar sum.

    Each block adds |yA_j - yAB(i)_j|^alpha spread uniformly over
    [min(xa_i, xb_i) - eps/2, max(xa_i, xb_i) + eps/2]; the divisor is
    the interval width |xa_i - xb_i| plus epsilon, so each boxcar
    integrates to exactly its numerator. Blocks are processed in
    ascending row order for reproducible summation.

    With a negative alpha, terms whose output difference is zero would
    be infinite; they are dropped and counted in dropped_terms.
    """
    if not blocks:
        raise DegenerateDensityError("no blocks to build a density from")
    blocks = sorted(blocks, key=lambda b: b.k)
    lo, hi, width = boxcar_intervals(blocks, i, params.epsilon)
    dy = np.abs(np.array([b.y_ab[i - 1, j - 1] - b.y_a[j - 1] for b in blocks]))
    return boxcars_from_arrays(lo, hi, width, dy, params.alpha)


def boxcars_from_arrays(lo: np.ndarray, hi: np.ndarray, width: np.ndarray,
                        dy: np.ndarray, alpha: float) -> PiecewiseConstantDensity:
    """Boxcar sum from precomputed interval arrays (the accumulator path)."""
    dropped = 0
    if alpha < 0:
        keep = dy > 0
        dropped = int(np.sum(~keep))
        lo, hi, width, dy = lo[keep], hi[keep], width[keep], dy[keep]
    with np.errstate(divide="ignore", invalid="ignore"):
        numer = dy ** alpha  # alpha = 0 gives 1 for every term, 0^0 included
    return sweep_boxcars(lo, hi, numer / width, dropped)


def cumulative_local(t: PiecewiseConstantDensity, vhat_j: float, n_rows: int) -> CumulativeCurve:
    """Integrate a local-sensitivity density and scale by 1/(2 N V̂_j).

    At alpha = 2 the terminal value reproduces the global total
    sensitivity index exactly: both are the same sum of squared
    differences, reorganized. A zero variance yields an undefined curve.
    """
    if vhat_j <= 0:
        return CumulativeCurve(t.breakpoints, np.zeros(len(t.breakpoints)), defined=False)
    masses = t.values * np.diff(t.breakpoints)
    cum = np.concatenate([[0.0], np.cumsum(masses)]) / (2.0 * n_rows * vhat_j)
    return CumulativeCurve(t.breakpoints, cum)


def sensitivity_density(t_alpha: PiecewiseConstantDensity,
                        t_zero: PiecewiseConstantDensity) -> PiecewiseConstantDensity:
    """Pointwise ratio t_alpha / t_zero, zero where t_zero is zero, unit integral.

    Dividing by the alpha = 0 counterpart removes the footprint of
    non-uniform sampling, leaving a density that reflects output
    behavior alone. Both inputs must come from the same blocks and
    dimension so their breakpoints coincide.
    """
    if len(t_alpha.breakpoints) != len(t_zero.breakpoints) or not np.array_equal(
            t_alpha.breakpoints, t_zero.breakpoints):
        raise ValueError("t_alpha and t_zero must share breakpoints (same blocks, dimension, epsilon)")
    if t_zero.integral() <= 0:
        raise DegenerateDensityError("sampling-density denominator is identically zero")
    ratio = np.divide(t_alpha.values, t_zero.values,
                      out=np.zeros_like(t_alpha.values), where=t_zero.values > 0)
    raw = PiecewiseConstantDensity(t_alpha.breakpoints, ratio, t_alpha.dropped_terms)
    return raw.normalized()


def resample_on(density: PiecewiseConstantDensity, breakpoints: np.ndarray) -> np.ndarray:
    """Heights of `density` on each interval of a refined breakpoint grid.

    The grid must contain all of the density's own breakpoints, so each
    target interval lies inside one source interval (or outside the
    support entirely); the representation stays exact.
    """
    idx = np.searchsorted(density.breakpoints, breakpoints[:-1], side="right") - 1
    inside = (idx >= 0) & (idx < len(density.values))
    out = np.zeros(len(breakpoints) - 1)
    out[inside] = density.values[idx[inside]]
    return out


def average_density(taus: Sequence[PiecewiseConstantDensity]) -> PiecewiseConstantDensity:
    """Plain average of densities, computed exactly on the merged breakpoint set."""
    if not taus:
        raise DegenerateDensityError("nothing to average")
    if len(taus) == 1:
        return taus[0]
    bp = np.unique(np.concatenate([t.breakpoints for t in taus]))
    vals = np.zeros(len(bp) - 1)
    for t in taus:
        vals += resample_on(t, bp)
    return PiecewiseConstantDensity(bp, vals / len(taus))


def mix_uniform(density: PiecewiseConstantDensity, weight: float) -> PiecewiseConstantDensity:
    """(1 - weight) * density + weight * Uniform[0, 1], exactly.

    Keeps every region of the unit interval reachable no matter how
    concentrated the input density is; weight = 0 returns the input
    extended to cover [0, 1].
    """
    if not 0 <= weight < 1:
        raise ValueError(f"weight must be in [0, 1), got {weight}")
    bp = np.unique(np.concatenate([density.breakpoints, [0.0, 1.0]]))
    vals = (1.0 - weight) * resample_on(density, bp)
    uniform = np.zeros(len(bp) - 1)
    inside = (bp[:-1] >= 0.0) & (bp[1:] <= 1.0)
    uniform[inside] = 1.0
    return PiecewiseConstantDensity(bp, vals + weight * uniform)


def cumulative_density(taubar: PiecewiseConstantDensity) -> CumulativeCurve:
    """CDF of a unit-integral density; renormalized so the final value is exactly 1."""
    masses = taubar.values * np.diff(taubar.breakpoints)
    cum = np.concatenate([[0.0], np.cumsum(masses)])
    if cum[-1] <= 0:
        raise DegenerateDensityError("cannot build a CDF from zero total mass")
    return CumulativeCurve(taubar.breakpoints, cum / cum[-1])


def inverse_cdf(curve: CumulativeCurve, u) -> np.ndarray | float:
    """Smallest x with curve(x) >= u, clamped to [0, 1].

    Exact on rising segments; on a flat (zero-density) plateau the left
    endpoint is returned, so no sample ever lands where the density
    vanishes. Accepts scalars or arrays.
    """
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    bp, cum = curve.breakpoints, curve.cumulative
    idx = np.searchsorted(cum, u_arr, side="left")
    idx = np.clip(idx, 0, len(cum) - 1)
    x = np.full(u_arr.shape, bp[0])
    seg = idx > 0
    i1 = idx[seg]
    i0 = i1 - 1
    rise = cum[i1] - cum[i0]
    safe = np.where(rise > 0, rise, 1.0)
    frac = np.clip((u_arr[seg] - cum[i0]) / safe, 0.0, 1.0)
    x[seg] = bp[i0] + frac * (bp[i1] - bp[i0])
    np.clip(x, 0.0, 1.0, out=x)
    if np.isscalar(u) or np.asarray(u).ndim == 0:
        return float(x[0])
    return x
