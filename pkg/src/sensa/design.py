"""A/B/A_Bi design construction and the per-coordinate transform.

Raw 2m-dimensional Sobol' points are split side-by-side into paired rows
(a, b); each row expands into m+2 evaluation requests: the a point, the
b point, and the m hybrids where coordinate i of a is swapped from b.
All coordinates live on [0, 1]; physical ranges are an affine relabeling
applied only at the evaluator boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import MalformedPointError
from .regional import CumulativeCurve, inverse_cdf


@dataclass(frozen=True)
class DesignRow:
    """One paired design row: a and b in [0,1]^m plus bookkeeping indices."""

    k: int  # global 1-based row index, unique and contiguous
    batch: int
    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class EvaluationRequest:
    """A single model evaluation: row k, matrix tag, and the input point.

    tag is "A", "B", or "AB:i" with 1-based i; for "AB:i" the point is
    the row's a with coordinate i replaced by b's coordinate i.
    """

    k: int
    tag: str
    x: np.ndarray


def build_design_rows(points: np.ndarray, first_k: int = 1, batch: int = 0) -> list[DesignRow]:
    """Split (N, 2m) points into N design rows, numbering from first_k."""
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return []
    if points.ndim != 2 or points.shape[1] % 2 != 0:
        raise MalformedPointError(f"expected (N, 2m) points, got shape {points.shape}")
    m = points.shape[1] // 2
    return [
        DesignRow(k=first_k + r, batch=batch, a=points[r, :m].copy(), b=points[r, m:].copy())
        for r in range(points.shape[0])
    ]


def hybrid_point(a: np.ndarray, b: np.ndarray, i: int) -> np.ndarray:
    """a with coordinate i (1-based) replaced by b's coordinate i."""
    if not 1 <= i <= len(a):
        raise IndexError(f"dimension index {i} out of range 1..{len(a)}")
    x = np.array(a, dtype=float)
    x[i - 1] = b[i - 1]
    return x


def evaluation_plan(rows: Sequence[DesignRow]) -> list[EvaluationRequest]:
    """Expand rows into N(m+2) requests in canonical order: per row A, B, AB:1..AB:m."""
    plan: list[EvaluationRequest] = []
    for row in rows:
        m = len(row.a)
        plan.append(EvaluationRequest(k=row.k, tag="A", x=np.array(row.a)))
        plan.append(EvaluationRequest(k=row.k, tag="B", x=np.array(row.b)))
        for i in range(1, m + 1):
            plan.append(EvaluationRequest(k=row.k, tag=f"AB:{i}", x=hybrid_point(row.a, row.b, i)))
    return plan


def transform_points(points: np.ndarray, curves: Sequence[CumulativeCurve | None]) -> np.ndarray:
    """Map raw 2m-dim points through per-dimension inverse CDFs.

    Coordinate l (1-based, l in 1..2m) is transformed by the curve for
    input i = 1 + (l-1 mod m), so the a-half and b-half of each point
    share the same m curves. A None curve leaves its coordinate as-is
    (uniform sampling for that input). Outputs are clamped to [0, 1].
    """
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return points.copy()
    m = points.shape[1] // 2
    if len(curves) != m:
        raise ValueError(f"expected {m} curves, got {len(curves)}")
    out = points.copy()
    for col in range(points.shape[1]):
        curve = curves[col % m]
        if curve is None:
            continue
        out[:, col] = inverse_cdf(curve, points[:, col])
    return out
