"""Global first-order and total sensitivity indices from paired designs.

The estimators are sums of squared differences between outputs at paired
design points (the Jansen forms): with yA, yB the outputs at the paired
rows and yAB(i) the output where coordinate i of A is swapped from B,

    V_j = (1/2N) sum |yA_j - yB_j|^2
    S_ij = 1 - sum |yB_j - yAB(i)_j|^2 / sum |yA_j - yB_j|^2
    T_ij =     sum |yA_j - yAB(i)_j|^2 / sum |yA_j - yB_j|^2

All sums run in ascending row order so results are reproducible across
runs and block permutations.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InsufficientDataError


@dataclass(frozen=True)
class EvaluationBlock:
    """One design row's full observation set.

    y_a and y_b are the n output vectors at the paired points xa, xb;
    y_ab is (m, n) with row i the output where coordinate i of xa was
    swapped from xb. uniform records whether the row was drawn without
    a density transform (identity sampling); batch is the producing
    batch number, 0 for ingested rows.
    """

    k: int
    xa: np.ndarray
    xb: np.ndarray
    y_a: np.ndarray
    y_b: np.ndarray
    y_ab: np.ndarray
    uniform: bool = True
    batch: int = 0

    def __post_init__(self):
        for name in ("xa", "xb", "y_a", "y_b", "y_ab"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        m, n = self.y_ab.shape
        if len(self.xa) != m or len(self.xb) != m:
            raise ValueError(f"xa/xb length {len(self.xa)} does not match y_ab rows {m}")
        if len(self.y_a) != n or len(self.y_b) != n:
            raise ValueError(f"y_a/y_b length {len(self.y_a)} does not match y_ab columns {n}")


@dataclass(frozen=True)
class SensitivityIndices:
    """First-order S and total T (both m x n), output variances V, sample count.

    Columns with zero variance carry NaN in S and T: the ratios are
    undefined there, and NaN marks that without raising. biased is set
    when any contributing block was drawn from a non-uniform density.
    """

    S: np.ndarray
    T: np.ndarray
    V: np.ndarray
    N: int
    biased: bool = False


def sorted_blocks(blocks: Iterable[EvaluationBlock]) -> list[EvaluationBlock]:
    return sorted(blocks, key=lambda b: b.k)


def _pair_sums(blocks: Sequence[EvaluationBlock]) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Canonical-order sums (sv, st, ss) over blocks; sv is (n,), st/ss are (m, n)."""
    blocks = sorted_blocks(blocks)
    if not blocks:
        raise InsufficientDataError("no evaluation blocks")
    y_a = np.stack([b.y_a for b in blocks])          # (N, n)
    y_b = np.stack([b.y_b for b in blocks])          # (N, n)
    y_ab = np.stack([b.y_ab for b in blocks])        # (N, m, n)
    sv = np.sum((y_a - y_b) ** 2, axis=0)
    st = np.sum((y_a[:, None, :] - y_ab) ** 2, axis=0)
    ss = np.sum((y_b[:, None, :] - y_ab) ** 2, axis=0)
    return sv, st, ss, len(blocks)


def estimate_variance(blocks: Sequence[EvaluationBlock]) -> np.ndarray:
    """Output variances V_j = (1/2N) sum_k |yA_j - yB_j|^2."""
    sv, _, _, n_rows = _pair_sums(blocks)
    return sv / (2.0 * n_rows)


def estimate_total(blocks: Sequence[EvaluationBlock]) -> np.ndarray:
    """Total sensitivity T (m x n); NaN columns where the output variance is zero."""
    sv, st, _, _ = _pair_sums(blocks)
    return _ratio(st, sv)


def estimate_first_order(blocks: Sequence[EvaluationBlock]) -> np.ndarray:
    """First-order sensitivity S (m x n); NaN columns where the output variance is zero.

    Not clamped: small negative values are estimator noise and are
    reported as-is so the bootstrap can quantify them.
    """
    sv, _, ss, _ = _pair_sums(blocks)
    return 1.0 - _ratio(ss, sv)


def _ratio(numer: np.ndarray, sv: np.ndarray) -> np.ndarray:
    out = np.full_like(numer, np.nan)
    ok = sv > 0
    out[:, ok] = numer[:, ok] / sv[ok]
    return out


def compute_indices(blocks: Sequence[EvaluationBlock], biased: bool | None = None) -> SensitivityIndices:
    """All three estimates in one pass over the blocks."""
    sv, st, ss, n_rows = _pair_sums(blocks)
    if biased is None:
        biased = any(not b.uniform for b in blocks)
    return SensitivityIndices(
        S=1.0 - _ratio(ss, sv),
        T=_ratio(st, sv),
        V=sv / (2.0 * n_rows),
        N=n_rows,
        biased=biased,
    )


@dataclass
class IndexAccumulator:
    """Running pair sums, updated block-by-block in arrival (= row) order.

    Mirrors the batch estimators exactly when blocks arrive in ascending
    row order; float addition order is then identical up to numpy's
    pairwise-vs-sequential difference, which stays within 1e-9 relative
    for realistic campaign sizes.
    """

    m: int
    n: int
    n_rows: int = 0
    sv: np.ndarray = field(default=None)
    st: np.ndarray = field(default=None)
    ss: np.ndarray = field(default=None)
    any_nonuniform: bool = False

    def __post_init__(self):
        if self.sv is None:
            self.sv = np.zeros(self.n)
        if self.st is None:
            self.st = np.zeros((self.m, self.n))
        if self.ss is None:
            self.ss = np.zeros((self.m, self.n))

    def add_block(self, block: EvaluationBlock):
        d_ab = block.y_ab  # (m, n)
        self.sv += (block.y_a - block.y_b) ** 2
        self.st += (block.y_a[None, :] - d_ab) ** 2
        self.ss += (block.y_b[None, :] - d_ab) ** 2
        self.n_rows += 1
        if not block.uniform:
            self.any_nonuniform = True

    def indices(self) -> SensitivityIndices:
        if self.n_rows == 0:
            raise InsufficientDataError("no evaluation blocks accumulated")
        return SensitivityIndices(
            S=1.0 - _ratio(self.ss, self.sv),
            T=_ratio(self.st, self.sv),
            V=self.sv / (2.0 * self.n_rows),
            N=self.n_rows,
            biased=self.any_nonuniform,
        )


def indices_to_csv(idx: SensitivityIndices) -> str:
    """Serialize indices as CSV, one row per (output, input), full precision.

    Floats are written with repr so parsing them back reproduces the
    in-memory values bit-for-bit.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["output", "input", "S", "T", "V", "biased"])
    m, n = idx.S.shape
    for j in range(n):
        for i in range(m):
            writer.writerow([j + 1, i + 1, repr(float(idx.S[i, j])), repr(float(idx.T[i, j])),
                             repr(float(idx.V[j])), idx.biased])
    return buf.getvalue()


def indices_from_csv(text: str) -> SensitivityIndices:
    """Parse the CSV emitted by indices_to_csv back into matrices."""
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise InsufficientDataError("empty indices CSV")
    m = max(int(r["input"]) for r in rows)
    n = max(int(r["output"]) for r in rows)
    S = np.full((m, n), np.nan)
    T = np.full((m, n), np.nan)
    V = np.full(n, np.nan)
    biased = False
    for r in rows:
        i, j = int(r["input"]) - 1, int(r["output"]) - 1
        S[i, j] = float(r["S"])
        T[i, j] = float(r["T"])
        V[j] = float(r["V"])
        biased = r["biased"] == "True"
    return SensitivityIndices(S=S, T=T, V=V, N=0, biased=biased)
