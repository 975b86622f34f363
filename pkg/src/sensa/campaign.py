"""The adaptive sampling loop and its durable state.

A campaign alternates between evaluating batches of design rows and
re-estimating where each input contributes most to output variance.
The first batch samples uniformly; every later batch pushes its raw
Sobol' points through the inverse CDF of the current average
sensitivity density per input, so evaluations concentrate where the
local contributions are largest. A small uniform exploration floor is
mixed into the sampling density (never into reported densities) so no
region of the input space becomes unreachable.

All steering (exponent changes, density overrides, ingestion) takes
effect at batch boundaries; a batch is committed atomically or not at
all.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .design import build_design_rows, evaluation_plan, transform_points
from .errors import (
    CampaignStateError,
    ConcurrentRunError,
    ConfigError,
    DegenerateDensityError,
    IngestError,
    InsufficientDataError,
    StateFormatError,
)
from .estimators import EvaluationBlock, IndexAccumulator, SensitivityIndices
from .evaluators import EvaluatorPool, ExternalEvaluatorSpec
from .models import builtin_evaluator
from .regional import (
    AlphaEpsilon,
    CumulativeCurve,
    PiecewiseConstantDensity,
    average_density,
    boxcars_from_arrays,
    cumulative_density,
    cumulative_local,
    mix_uniform,
    sensitivity_density,
)
from .sobol import SobolStream

STATE_SCHEMA = "sensa-state/1"

IDLE = "idle"
RUNNING = "running-batch"
PAUSED = "paused"
DONE = "done"


@dataclass(frozen=True)
class CampaignConfig:
    """Everything needed to reproduce a campaign from scratch.

    evaluator is a built-in model name ("synthetic", "ishigami",
    "first_input[:d]") or an ExternalEvaluatorSpec. input_ranges map the
    internal unit cube to physical units at the evaluator boundary.
    output_subset (1-based) restricts which outputs enter the average
    sensitivity density; exploration is the uniform mass fraction mixed
    into sampling densities.
    """

    m: int
    n: int
    batch_size: int = 10
    alpha: float = 2.0
    epsilon: float = 1e-4
    input_ranges: tuple[tuple[float, float], ...] = ()
    evaluator: str | ExternalEvaluatorSpec = "synthetic"
    output_subset: tuple[int, ...] | None = None
    max_batches: int | None = None
    exploration: float = 0.1

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ConfigError("m and n must be positive")
        if self.batch_size < 1:
            raise ConfigError(f"batch size must be >= 1, got {self.batch_size}")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if not np.isfinite(self.alpha):
            raise ConfigError("alpha must be finite")
        if not 0 <= self.exploration < 1:
            raise ConfigError("exploration must lie in [0, 1)")
        ranges = tuple((float(lo), float(hi)) for lo, hi in self.input_ranges)
        if not ranges:
            ranges = tuple((0.0, 1.0) for _ in range(self.m))
        if len(ranges) != self.m or any(lo >= hi for lo, hi in ranges):
            raise ConfigError("input_ranges needs m pairs with lo < hi")
        object.__setattr__(self, "input_ranges", ranges)
        if self.output_subset is not None:
            subset = tuple(int(j) for j in self.output_subset)
            if not subset or any(j < 1 or j > self.n for j in subset):
                raise ConfigError("output_subset indices must lie in 1..n")
            object.__setattr__(self, "output_subset", subset)

    def to_dict(self) -> dict:
        d = {
            "m": self.m, "n": self.n, "batch_size": self.batch_size,
            "alpha": self.alpha, "epsilon": self.epsilon,
            "input_ranges": [list(r) for r in self.input_ranges],
            "output_subset": list(self.output_subset) if self.output_subset else None,
            "max_batches": self.max_batches, "exploration": self.exploration,
        }
        if isinstance(self.evaluator, ExternalEvaluatorSpec):
            d["evaluator"] = {
                "command": list(self.evaluator.command),
                "m": self.evaluator.m, "n": self.evaluator.n,
                "handshake_timeout": self.evaluator.handshake_timeout,
                "eval_timeout": self.evaluator.eval_timeout,
                "pool_size": self.evaluator.pool_size,
            }
        else:
            d["evaluator"] = self.evaluator
        return d

    @staticmethod
    def from_dict(d: dict) -> "CampaignConfig":
        ev = d.get("evaluator", "synthetic")
        if isinstance(ev, dict):
            ev = ExternalEvaluatorSpec(
                command=tuple(ev["command"]), m=int(ev["m"]), n=int(ev["n"]),
                handshake_timeout=float(ev.get("handshake_timeout", 10.0)),
                eval_timeout=float(ev.get("eval_timeout", 60.0)),
                pool_size=int(ev.get("pool_size", 1)),
            )
        subset = d.get("output_subset")
        return CampaignConfig(
            m=int(d["m"]), n=int(d["n"]),
            batch_size=int(d.get("batch_size", 10)),
            alpha=float(d.get("alpha", 2.0)),
            epsilon=float(d.get("epsilon", 1e-4)),
            input_ranges=tuple(tuple(r) for r in d.get("input_ranges", [])),
            evaluator=ev,
            output_subset=tuple(subset) if subset else None,
            max_batches=d.get("max_batches"),
            exploration=float(d.get("exploration", 0.1)),
        )


@dataclass
class BatchPlan:
    """Everything frozen at batch start: rows, requests, physical inputs."""

    rows: list
    plan: list
    x_physical: np.ndarray
    uniform: bool
    alpha: float
    prior_status: str


class DimStore:
    """Per-dimension interval data, appended block-by-block.

    Holds, for each observed block, the epsilon-widened interval
    [lo, hi], its width + epsilon, and the |yA - yAB(i)| vector across
    outputs: everything a density rebuild needs without touching the
    block log.
    """

    def __init__(self, n: int):
        self.n = n
        self.lo: list[float] = []
        self.hi: list[float] = []
        self.width: list[float] = []
        self.dy: list[np.ndarray] = []

    def add_block(self, block: EvaluationBlock, i: int, epsilon: float):
        a, b = block.xa[i - 1], block.xb[i - 1]
        half = epsilon / 2.0
        self.lo.append(min(a, b) - half)
        self.hi.append(max(a, b) + half)
        self.width.append(abs(a - b) + epsilon)
        self.dy.append(np.abs(block.y_ab[i - 1] - block.y_a))

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (np.array(self.lo), np.array(self.hi), np.array(self.width),
                np.array(self.dy) if self.dy else np.empty((0, self.n)))


class Campaign:
    """Single-writer campaign state machine.

    Mutating methods must be called from one thread at a time; readers
    should snapshot under the caller's lock. Every mutation increments
    the version counter exactly once.
    """

    def __init__(self, config: CampaignConfig, probe_evaluator: bool = True):
        self.config = config
        self.blocks: list[EvaluationBlock] = []
        self.acc = IndexAccumulator(config.m, config.n)
        self.dim_stores = [DimStore(config.n) for _ in range(config.m)]
        self.sobol_index = 0
        self.alpha = config.alpha
        self.alpha_history: list[float] = []
        self.overrides: dict[int, PiecewiseConstantDensity] = {}
        self.status = IDLE
        self.version = 1
        self.batches_completed = 0
        self.ingested_count = 0
        self.log_path = None
        self._evaluator = None
        if probe_evaluator:
            self._get_evaluator()  # fail fast on a broken evaluator command

    # -- evaluator plumbing ------------------------------------------------

    def _get_evaluator(self):
        if self._evaluator is None:
            spec = self.config.evaluator
            if isinstance(spec, ExternalEvaluatorSpec):
                self._evaluator = EvaluatorPool(spec)
            else:
                self._evaluator = builtin_evaluator(spec)
            if self._evaluator.m != self.config.m or self._evaluator.n != self.config.n:
                ev_m, ev_n = self._evaluator.m, self._evaluator.n
                self.close()
                raise ConfigError(
                    f"evaluator is {ev_m} -> {ev_n} dimensional, campaign wants "
                    f"{self.config.m} -> {self.config.n}")
        return self._evaluator

    def close(self):
        if self._evaluator is not None:
            self._evaluator.close()
            self._evaluator = None

    def _to_physical(self, x_unit: np.ndarray) -> np.ndarray:
        ranges = np.array(self.config.input_ranges)
        return ranges[:, 0] + x_unit * (ranges[:, 1] - ranges[:, 0])

    # -- steering ----------------------------------------------------------

    def _bump(self):
        self.version += 1

    def set_alpha(self, alpha: float):
        """New exponent, effective from the next batch onward."""
        if not np.isfinite(alpha):
            raise ConfigError(f"alpha must be finite, got {alpha}")
        self.alpha = float(alpha)
        self._bump()

    def set_override(self, i: int, density: PiecewiseConstantDensity):
        """Pin dimension i's sampling density to a user-supplied shape."""
        if not 1 <= i <= self.config.m:
            raise ConfigError(f"dimension {i} out of range 1..{self.config.m}")
        if np.any(density.values < 0) or density.integral() <= 0:
            raise ConfigError("override density must be nonnegative with positive mass")
        self.overrides[i] = density.normalized()
        self._bump()

    def clear_override(self, i: int):
        self.overrides.pop(i, None)
        self._bump()

    def pause(self):
        if self.status == IDLE:
            self.status = PAUSED
        self._bump()

    def resume(self):
        if self.status == PAUSED:
            self.status = IDLE
        self._bump()

    # -- densities and indices ----------------------------------------------

    def indices(self) -> SensitivityIndices:
        return self.acc.indices()

    def alpha_epsilon(self, alpha: float | None = None) -> AlphaEpsilon:
        return AlphaEpsilon(self.alpha if alpha is None else alpha, self.config.epsilon)

    def _check_dims(self, i: int, j: int | None = None):
        if not 1 <= i <= self.config.m:
            raise ConfigError(f"dimension {i} out of range 1..{self.config.m}")
        if j is not None and not 1 <= j <= self.config.n:
            raise ConfigError(f"output {j} out of range 1..{self.config.n}")

    def tau(self, i: int, j: int, alpha: float | None = None) -> PiecewiseConstantDensity:
        """Sensitivity density of output j along input i, unit integral."""
        self._check_dims(i, j)
        lo, hi, width, dy = self.dim_stores[i - 1].arrays()
        if len(lo) == 0:
            raise InsufficientDataError("no evaluations yet")
        a = self.alpha if alpha is None else alpha
        t_alpha = boxcars_from_arrays(lo, hi, width, dy[:, j - 1], a)
        t_zero = boxcars_from_arrays(lo, hi, width, dy[:, j - 1], 0.0)
        return sensitivity_density(t_alpha, t_zero)

    def taubar(self, i: int, alpha: float | None = None) -> PiecewiseConstantDensity:
        """Average sensitivity density over the configured output subset.

        Outputs whose density is degenerate (no output variation along
        this input) carry no information and are skipped; if every
        output is degenerate the density falls back to uniform.
        """
        self._check_dims(i)
        lo, hi, width, dy = self.dim_stores[i - 1].arrays()
        if len(lo) == 0:
            raise InsufficientDataError("no evaluations yet")
        a = self.alpha if alpha is None else alpha
        outputs = self.config.output_subset or range(1, self.config.n + 1)
        t_zero = boxcars_from_arrays(lo, hi, width, np.ones(len(lo)), 0.0)
        taus = []
        for j in outputs:
            try:
                t_alpha = boxcars_from_arrays(lo, hi, width, dy[:, j - 1], a)
                taus.append(sensitivity_density(t_alpha, t_zero))
            except DegenerateDensityError:
                continue
        if not taus:
            return PiecewiseConstantDensity(np.array([0.0, 1.0]), np.array([1.0]))
        return average_density(taus)

    def cumulative_taubar(self, i: int) -> CumulativeCurve:
        return cumulative_density(self.taubar(i))

    def cumulative_output(self, i: int, j: int) -> CumulativeCurve:
        """Cumulative local sensitivity of output j along input i (terminal = T̂_ij)."""
        self._check_dims(i, j)
        lo, hi, width, dy = self.dim_stores[i - 1].arrays()
        if len(lo) == 0:
            raise InsufficientDataError("no evaluations yet")
        t = boxcars_from_arrays(lo, hi, width, dy[:, j - 1], 2.0)
        vhat = self.acc.indices().V[j - 1]
        return cumulative_local(t, vhat, self.acc.n_rows)

    def sampling_curve(self, i: int) -> CumulativeCurve | None:
        """CDF the next batch will sample dimension i from; None = identity.

        An override wins outright (its support is honored exactly);
        otherwise the average sensitivity density with the exploration
        floor mixed in. Before any data, sampling is uniform.
        """
        self._check_dims(i)
        if i in self.overrides:
            return cumulative_density(self.overrides[i])
        if not self.blocks:
            return None
        mixed = mix_uniform(self.taubar(i), self.config.exploration)
        return cumulative_density(mixed)

    # -- the batch loop ------------------------------------------------------

    def begin_batch(self) -> "BatchPlan":
        """Freeze sampling densities and draw the next batch's design points.

        The Sobol' cursor is not advanced yet: nothing durable changes
        until commit_batch, so an evaluator failure wastes no points.
        """
        if self.status == RUNNING:
            raise ConcurrentRunError("a batch is already executing")
        if self.status == DONE:
            raise CampaignStateError("campaign has reached max_batches")
        cfg = self.config
        curves = [self.sampling_curve(i) for i in range(1, cfg.m + 1)]
        stream = SobolStream(2 * cfg.m, index=self.sobol_index)
        pts = transform_points(stream.next(cfg.batch_size), curves)
        rows = build_design_rows(pts, first_k=self._next_k(), batch=self.batches_completed + 1)
        plan = evaluation_plan(rows)
        x_unit = np.stack([req.x for req in plan])
        batch_plan = BatchPlan(
            rows=rows, plan=plan,
            x_physical=self._to_physical(x_unit),
            uniform=all(c is None for c in curves),
            alpha=self.alpha,
            prior_status=self.status,
        )
        self.status = RUNNING
        self._bump()
        return batch_plan

    def commit_batch(self, batch_plan: "BatchPlan", y: np.ndarray):
        """Validate outputs and commit the batch atomically."""
        cfg = self.config
        y = np.asarray(y, dtype=float)
        try:
            if y.shape != (len(batch_plan.plan), cfg.n):
                raise ConfigError(f"evaluator returned shape {y.shape}, "
                                  f"expected {(len(batch_plan.plan), cfg.n)}")
            if not np.all(np.isfinite(y)):
                bad = batch_plan.plan[int(np.argwhere(~np.isfinite(y).all(axis=1))[0][0])]
                raise ConfigError(f"non-finite output for row {bad.k} tag {bad.tag}")
        except ConfigError:
            self.abort_batch(batch_plan)
            raise
        blocks = _blocks_from_plan(batch_plan.rows, batch_plan.plan, y, batch_plan.uniform)
        for block in blocks:
            self._absorb(block)
        self.sobol_index += cfg.batch_size
        self.batches_completed += 1
        self.alpha_history.append(batch_plan.alpha)
        if cfg.max_batches is not None and self.batches_completed >= cfg.max_batches:
            self.status = DONE
        else:
            self.status = PAUSED if batch_plan.prior_status == PAUSED else IDLE
        self._bump()
        self._log_blocks(blocks)

    def abort_batch(self, batch_plan: "BatchPlan"):
        """Roll the status back; the failed batch leaves no other trace."""
        self.status = batch_plan.prior_status
        self._bump()

    def run_batch(self):
        """Draw, evaluate, and commit one batch of M design rows.

        The Sobol' cursor and all accumulators advance only if every
        evaluation in the batch succeeds and is finite; an evaluator
        failure leaves the log exactly as it was.
        """
        evaluator = self._get_evaluator()
        batch_plan = self.begin_batch()
        try:
            y = evaluator.evaluate(batch_plan.x_physical)
        except Exception:
            self.abort_batch(batch_plan)
            raise
        self.commit_batch(batch_plan, y)
        return self

    def _next_k(self) -> int:
        return max((b.k for b in self.blocks), default=0) + 1

    def _absorb(self, block: EvaluationBlock):
        self.blocks.append(block)
        self.acc.add_block(block)
        for i in range(1, self.config.m + 1):
            self.dim_stores[i - 1].add_block(block, i, self.config.epsilon)

    # -- ingestion -----------------------------------------------------------

    def ingest(self, blocks: list[EvaluationBlock]):
        """Merge externally produced blocks as if they had been evaluated here."""
        seen = {b.k for b in self.blocks}
        incoming = set()
        for b in blocks:
            if b.y_ab.shape != (self.config.m, self.config.n):
                raise IngestError(f"block {b.k}: y_ab shape {b.y_ab.shape} does not match "
                                  f"({self.config.m}, {self.config.n})")
            if b.k in seen or b.k in incoming:
                raise IngestError(f"duplicate row index {b.k}")
            incoming.add(b.k)
        for b in blocks:
            self._absorb(b)
        self.ingested_count += len(blocks)
        self._bump()
        self._log_blocks(blocks)

    # -- observation ----------------------------------------------------------

    def total_evaluations(self) -> int:
        return len(self.blocks) * (self.config.m + 2)

    def samples(self, dims: tuple[int, int], limit: int = 1000) -> np.ndarray:
        """Most recent sampled points projected onto two dimensions, (K, 2)."""
        i1, i2 = dims
        for d in dims:
            if not 1 <= d <= self.config.m:
                raise ConfigError(f"dimension {d} out of range 1..{self.config.m}")
        pts = []
        for b in self.blocks[-(limit // 2 + 1):]:
            pts.append((b.xa[i1 - 1], b.xa[i2 - 1]))
            pts.append((b.xb[i1 - 1], b.xb[i2 - 1]))
        return np.array(pts[-limit:]) if pts else np.empty((0, 2))

    # -- persistence -----------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "schema": STATE_SCHEMA,
            "config": self.config.to_dict(),
            "version": self.version,
            "status": IDLE if self.status == RUNNING else self.status,
            "sobol_index": self.sobol_index,
            "batches_completed": self.batches_completed,
            "ingested_count": self.ingested_count,
            "alpha": self.alpha,
            "alpha_history": self.alpha_history,
            "overrides": {
                str(i): {"breakpoints": d.breakpoints.tolist(), "values": d.values.tolist()}
                for i, d in self.overrides.items()
            },
            "blocks": [_block_to_dict(b) for b in self.blocks],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str | bytes) -> "Campaign":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateFormatError(
                f"state file is not valid JSON at offset {exc.pos}: {exc.msg}") from exc
        if not isinstance(payload, dict) or payload.get("schema") != STATE_SCHEMA:
            raise StateFormatError(f"expected schema {STATE_SCHEMA!r}, "
                                   f"got {payload.get('schema')!r}")
        try:
            config = CampaignConfig.from_dict(payload["config"])
            campaign = Campaign(config, probe_evaluator=False)
            campaign.version = int(payload["version"])
            campaign.status = payload["status"]
            campaign.sobol_index = int(payload["sobol_index"])
            campaign.batches_completed = int(payload["batches_completed"])
            campaign.ingested_count = int(payload.get("ingested_count", 0))
            campaign.alpha = float(payload["alpha"])
            campaign.alpha_history = [float(a) for a in payload["alpha_history"]]
            for key, d in payload.get("overrides", {}).items():
                campaign.overrides[int(key)] = PiecewiseConstantDensity(
                    np.array(d["breakpoints"]), np.array(d["values"]))
            for bd in payload["blocks"]:
                campaign._absorb(_block_from_dict(bd))
        except (KeyError, TypeError, ValueError) as exc:
            raise StateFormatError(f"state file field error: {exc!r}") from exc
        return campaign

    def save(self, path: str):
        # write-then-rename so a crash never leaves a torn state file
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(self.to_json())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @staticmethod
    def load(path: str) -> "Campaign":
        with open(path, "r", encoding="utf-8") as fh:
            return Campaign.from_json(fh.read())

    # -- evaluation journal ------------------------------------------------------

    def _log_blocks(self, blocks: list[EvaluationBlock]):
        if not self.log_path:
            return
        with open(self.log_path, "a", encoding="utf-8") as fh:
            for b in blocks:
                for line in _block_to_log_lines(b):
                    fh.write(line + "\n")


def _blocks_from_plan(rows, plan, y: np.ndarray, uniform: bool) -> list[EvaluationBlock]:
    """Reassemble flat evaluation results into per-row blocks."""
    per_row = len(plan) // len(rows)
    m = len(rows[0].a)
    out = []
    for r, row in enumerate(rows):
        base = r * per_row
        out.append(EvaluationBlock(
            k=row.k, xa=row.a, xb=row.b,
            y_a=y[base], y_b=y[base + 1],
            y_ab=y[base + 2: base + 2 + m],
            uniform=uniform,
            batch=row.batch,
        ))
    return out


def _block_to_dict(b: EvaluationBlock) -> dict:
    return {
        "k": b.k, "batch": b.batch, "uniform": b.uniform,
        "xa": b.xa.tolist(), "xb": b.xb.tolist(),
        "y_a": b.y_a.tolist(), "y_b": b.y_b.tolist(), "y_ab": b.y_ab.tolist(),
    }


def _block_from_dict(d: dict) -> EvaluationBlock:
    return EvaluationBlock(
        k=int(d["k"]), xa=np.array(d["xa"]), xb=np.array(d["xb"]),
        y_a=np.array(d["y_a"]), y_b=np.array(d["y_b"]), y_ab=np.array(d["y_ab"]),
        uniform=bool(d.get("uniform", True)),
        batch=int(d.get("batch", 0)),
    )


def _block_to_log_lines(b: EvaluationBlock) -> list[str]:
    """One JSON line per evaluation request, A then B then each AB:i."""
    rows = [("A", b.xa, b.y_a), ("B", b.xb, b.y_b)]
    for i in range(b.y_ab.shape[0]):
        x = b.xa.copy()
        x[i] = b.xb[i]
        rows.append((f"AB:{i + 1}", x, b.y_ab[i]))
    lines = []
    for tag, x, y in rows:
        lines.append(json.dumps({
            "k": b.k, "tag": tag, "x": x.tolist(), "y": y.tolist(),
            "batch": b.batch,
            "uniform": b.uniform,
        }))
    return lines


def blocks_from_log_lines(lines, m: int, n: int) -> list[EvaluationBlock]:
    """Parse evaluation-log JSON lines back into complete blocks.

    Every row index must come with its full A, B, AB:1..AB:m record
    set; incomplete or inconsistent groups are rejected. The optional
    "uniform" field defaults to False: foreign data is assumed to come
    from an unknown, possibly non-uniform design.
    """
    groups: dict[int, dict[str, dict]] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            k, tag = int(rec["k"]), rec["tag"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise IngestError(f"line {lineno}: malformed log record: {exc}") from exc
        if tag in groups.setdefault(k, {}):
            raise IngestError(f"line {lineno}: duplicate tag {tag!r} for row {k}")
        groups[k][tag] = rec
    blocks = []
    want = ["A", "B"] + [f"AB:{i}" for i in range(1, m + 1)]
    for k in sorted(groups):
        recs = groups[k]
        missing = [t for t in want if t not in recs]
        if missing:
            raise IngestError(f"row {k}: missing records for tags {missing}")
        xa = np.array(recs["A"]["x"], dtype=float)
        xb_full = np.array(recs["B"]["x"], dtype=float)
        if len(xa) != m or len(xb_full) != m:
            raise IngestError(f"row {k}: expected {m}-dimensional inputs")
        y_ab = np.empty((m, n))
        for i in range(1, m + 1):
            y_i = np.array(recs[f"AB:{i}"]["y"], dtype=float)
            if len(y_i) != n:
                raise IngestError(f"row {k}: expected {n}-dimensional outputs")
            y_ab[i - 1] = y_i
        y_a = np.array(recs["A"]["y"], dtype=float)
        y_b = np.array(recs["B"]["y"], dtype=float)
        if len(y_a) != n or len(y_b) != n:
            raise IngestError(f"row {k}: expected {n}-dimensional outputs")
        blocks.append(EvaluationBlock(
            k=k, xa=xa, xb=xb_full, y_a=y_a, y_b=y_b, y_ab=y_ab,
            uniform=bool(recs["A"].get("uniform", False)),
            batch=int(recs["A"].get("batch", 0)),
        ))
    return blocks


def init_campaign(config: CampaignConfig) -> Campaign:
    """Fresh campaign; probes an external evaluator's handshake immediately."""
    return Campaign(config, probe_evaluator=True)
