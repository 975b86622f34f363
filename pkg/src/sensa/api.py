"""HTTP steering API around a single campaign.

One worker thread owns all mutations; request handlers read immutable
snapshots under a short lock and enqueue control commands. Commands are
acknowledged immediately with their queue position and take effect at
the next batch boundary. Clients poll GET /api/state and use the
version counter to decide when to refetch curves.
"""

from __future__ import annotations

import math
import queue
import threading
from contextlib import asynccontextmanager

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .bootstrap import BootstrapSpec, bootstrap_curves
from .campaign import DONE, Campaign, blocks_from_log_lines
from .errors import IngestError, SensaError
from .regional import PiecewiseConstantDensity, cumulative_density


class AlphaBody(BaseModel):
    value: float


class RunBody(BaseModel):
    batches: int = Field(ge=1)


class OverrideBody(BaseModel):
    dim: int
    breakpoints: list[float]
    values: list[float]


def _finite_or_none(v: float):
    return float(v) if math.isfinite(v) else None


def _matrix(arr: np.ndarray) -> list[list[float | None]]:
    return [[_finite_or_none(v) for v in row] for row in arr]


class CampaignService:
    """Single-writer worker plus a serialized command queue."""

    def __init__(self, campaign: Campaign, state_path: str | None = None):
        self.campaign = campaign
        self.state_path = state_path
        self.lock = threading.RLock()
        self.commands: queue.Queue = queue.Queue()
        self.remaining_batches = 0
        self.paused = False
        self.last_error: str | None = None
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    # -- lifecycle ---------------------------------------------------------

    def start(self):
        if self._thread is None:
            self._thread = threading.Thread(target=self._loop, daemon=True)
            self._thread.start()

    def stop(self):
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=10.0)
            self._thread = None
        self.campaign.close()

    # -- command intake ------------------------------------------------------

    def enqueue(self, *command) -> dict:
        self.commands.put(command)
        with self.lock:
            version = self.campaign.version
        return {"queued": True, "position": self.commands.qsize(), "version": version}

    # -- worker ----------------------------------------------------------------

    def _loop(self):
        while not self._stop.is_set():
            try:
                command = self.commands.get(timeout=0.05)
            except queue.Empty:
                command = None
            if command is not None:
                self._apply(command)
                continue  # drain steering commands before the next batch
            if self.remaining_batches > 0 and not self.paused:
                self._run_one()

    def _apply(self, command):
        kind, *args = command
        try:
            with self.lock:
                if kind == "alpha":
                    self.campaign.set_alpha(args[0])
                elif kind == "override":
                    self.campaign.set_override(args[0], args[1])
                elif kind == "clear_override":
                    self.campaign.clear_override(args[0])
                elif kind == "ingest":
                    self.campaign.ingest(args[0])
                elif kind == "pause":
                    self.paused = True
                    self.campaign.pause()
                elif kind == "resume":
                    self.paused = False
                    self.campaign.resume()
                elif kind == "run":
                    self.remaining_batches += args[0]
                self._save()
        except SensaError as exc:
            self.last_error = str(exc)

    def _run_one(self):
        try:
            evaluator = self.campaign._get_evaluator()
            with self.lock:
                if self.campaign.status == DONE:
                    self.remaining_batches = 0
                    return
                batch_plan = self.campaign.begin_batch()
        except SensaError as exc:
            self.last_error = str(exc)
            self.remaining_batches = 0
            return
        try:
            y = evaluator.evaluate(batch_plan.x_physical)
        except Exception as exc:
            with self.lock:
                self.campaign.abort_batch(batch_plan)
            self.last_error = str(exc)
            self.remaining_batches = 0
            return
        with self.lock:
            try:
                self.campaign.commit_batch(batch_plan, y)
                self.remaining_batches -= 1
                self._save()
            except SensaError as exc:
                self.last_error = str(exc)
                self.remaining_batches = 0

    def _save(self):
        if self.state_path:
            self.campaign.save(self.state_path)

    # -- snapshots ---------------------------------------------------------------

    def state_summary(self) -> dict:
        with self.lock:
            c = self.campaign
            summary = {
                "version": c.version,
                "status": c.status,
                "batches_completed": c.batches_completed,
                "total_evaluations": c.total_evaluations(),
                "ingested_blocks": c.ingested_count,
                "alpha": c.alpha,
                "alpha_history": list(c.alpha_history),
                "m": c.config.m,
                "n": c.config.n,
                "batch_size": c.config.batch_size,
                "epsilon": c.config.epsilon,
                "exploration": c.config.exploration,
                "max_batches": c.config.max_batches,
                "overridden_dims": sorted(c.overrides),
                "pending_commands": self.commands.qsize(),
                "remaining_batches": self.remaining_batches,
                "last_error": self.last_error,
                "indices": None,
            }
            if c.blocks:
                idx = c.indices()
                summary["indices"] = {
                    "S": _matrix(idx.S),
                    "T": _matrix(idx.T),
                    "V": [float(v) for v in idx.V],
                    "N": idx.N,
                    "biased": idx.biased,
                }
        return summary


def create_app(campaign: Campaign, state_path: str | None = None) -> FastAPI:
    service = CampaignService(campaign, state_path)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        service.start()
        yield
        service.stop()

    app = FastAPI(title="sensa", lifespan=lifespan)
    app.state.service = service

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        detail = [{"loc": list(e.get("loc", [])), "msg": str(e.get("msg", ""))}
                  for e in exc.errors()]
        return JSONResponse(status_code=400, content={"detail": detail})

    def check_dim(i: int):
        if not 1 <= i <= campaign.config.m:
            raise HTTPException(status_code=404,
                                detail=f"dimension {i} out of range 1..{campaign.config.m}")

    def check_output(j: int):
        if not 1 <= j <= campaign.config.n:
            raise HTTPException(status_code=404,
                                detail=f"output {j} out of range 1..{campaign.config.n}")

    @app.get("/api/state")
    def get_state():
        return service.state_summary()

    @app.get("/api/density/{i}")
    def get_density(i: int, output: int | None = None):
        check_dim(i)
        if output is not None:
            check_output(output)
        with service.lock:
            try:
                density = (service.campaign.taubar(i) if output is None
                           else service.campaign.tau(i, output))
                alpha = service.campaign.alpha
            except SensaError as exc:
                raise HTTPException(status_code=404, detail=str(exc))
        return {
            "dimension": i,
            "alpha": alpha,
            "epsilon": campaign.config.epsilon,
            "output": output,
            "breakpoints": density.breakpoints.tolist(),
            "values": density.values.tolist(),
        }

    @app.get("/api/cumulative/{i}")
    def get_cumulative(i: int, output: int | None = None):
        check_dim(i)
        if output is not None:
            check_output(output)
        with service.lock:
            try:
                if output is None:
                    curve = cumulative_density(service.campaign.taubar(i))
                else:
                    curve = service.campaign.cumulative_output(i, output)
            except SensaError as exc:
                raise HTTPException(status_code=404, detail=str(exc))
        return {
            "breakpoints": curve.breakpoints.tolist(),
            "cumulative": curve.cumulative.tolist(),
            "defined": curve.defined,
        }

    @app.get("/api/samples")
    def get_samples(dims: str, limit: int = 1000):
        try:
            parts = [int(p) for p in dims.split(",")]
        except ValueError:
            raise HTTPException(status_code=400, detail="dims must be two comma-separated ints")
        if len(parts) != 2:
            raise HTTPException(status_code=400, detail="dims must name exactly two dimensions")
        for d in parts:
            check_dim(d)
        if limit < 1:
            raise HTTPException(status_code=400, detail="limit must be positive")
        with service.lock:
            pts = service.campaign.samples((parts[0], parts[1]), limit=limit)
        return {"dims": parts, "points": pts.tolist()}

    @app.get("/api/bootstrap/{i}")
    def get_bootstrap(i: int, output: int, replicates: int = 25, seed: int = 0):
        check_dim(i)
        check_output(output)
        if replicates < 0 or replicates > 500:
            raise HTTPException(status_code=400, detail="replicates must be in 0..500")
        with service.lock:
            blocks = list(service.campaign.blocks)
            params = service.campaign.alpha_epsilon()
        if not blocks:
            raise HTTPException(status_code=404, detail="no evaluations yet")
        curves = bootstrap_curves(blocks, i, output, params,
                                  BootstrapSpec(replicates=replicates, seed=seed))
        return {
            "dimension": i,
            "output": output,
            "replicates": [
                {"breakpoints": c.breakpoints.tolist(), "cumulative": c.cumulative.tolist()}
                for c in curves
            ],
        }

    @app.post("/api/control/alpha")
    def post_alpha(body: AlphaBody):
        if not math.isfinite(body.value):
            raise HTTPException(status_code=400, detail="alpha must be finite")
        return service.enqueue("alpha", body.value)

    @app.post("/api/control/run")
    def post_run(body: RunBody):
        return service.enqueue("run", body.batches)

    @app.post("/api/control/pause")
    def post_pause():
        return service.enqueue("pause")

    @app.post("/api/control/resume")
    def post_resume():
        return service.enqueue("resume")

    @app.post("/api/control/override")
    def post_override(body: OverrideBody):
        if not 1 <= body.dim <= campaign.config.m:
            raise HTTPException(status_code=400,
                                detail=f"dim must lie in 1..{campaign.config.m}")
        try:
            density = PiecewiseConstantDensity(np.array(body.breakpoints), np.array(body.values))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if np.any(density.values < 0):
            raise HTTPException(status_code=400, detail="override values must be nonnegative")
        if density.integral() <= 0:
            raise HTTPException(status_code=400, detail="override must have positive total mass")
        return service.enqueue("override", body.dim, density)

    @app.delete("/api/control/override/{i}")
    def delete_override(i: int):
        if not 1 <= i <= campaign.config.m:
            raise HTTPException(status_code=400,
                                detail=f"dim must lie in 1..{campaign.config.m}")
        return service.enqueue("clear_override", i)

    @app.post("/api/ingest")
    async def post_ingest(request: Request):
        text = (await request.body()).decode("utf-8")
        try:
            blocks = blocks_from_log_lines(text.splitlines(),
                                           campaign.config.m, campaign.config.n)
        except IngestError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        with service.lock:
            existing = {b.k for b in service.campaign.blocks}
        dupes = sorted(existing.intersection(b.k for b in blocks))
        if dupes:
            raise HTTPException(status_code=400, detail=f"duplicate row indices: {dupes[:10]}")
        ack = service.enqueue("ingest", blocks)
        ack["blocks"] = len(blocks)
        return ack

    return app
