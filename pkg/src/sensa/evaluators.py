"""External model evaluation over a line-delimited JSON pipe.

A child process is spawned from a command line and spoken to over
stdin/stdout, one UTF-8 JSON object per line. Handshake: the engine
sends {"hello": {"m": int, "n": int}} and the child must answer
{"ready": true}. After that, each request is {"id": int, "x": [...]}
and each response {"id": int, "y": [...]}; responses may arrive in any
order and are matched by id.

Requests are written from a background thread while responses are read
with a select-based deadline on the raw pipe, so neither side can
deadlock on a full OS pipe buffer.
"""

from __future__ import annotations

import json
import os
import select
import shlex
import subprocess
import threading
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    EvaluationTimeoutError,
    EvaluatorCrashedError,
    ProtocolError,
)


@dataclass(frozen=True)
class ExternalEvaluatorSpec:
    """Command line plus declared dimensions and timeouts for a child evaluator."""

    command: tuple[str, ...]
    m: int
    n: int
    handshake_timeout: float = 10.0
    eval_timeout: float = 60.0
    pool_size: int = 1

    def __post_init__(self):
        if isinstance(self.command, str):
            object.__setattr__(self, "command", tuple(shlex.split(self.command)))
        else:
            object.__setattr__(self, "command", tuple(self.command))
        if self.handshake_timeout <= 0 or self.eval_timeout <= 0:
            raise ConfigError("timeouts must be positive")
        if self.pool_size < 1:
            raise ConfigError("pool size must be >= 1")


class ExternalEvaluator:
    """One child process handling requests serially. Not thread-safe itself."""

    def __init__(self, spec: ExternalEvaluatorSpec):
        self.spec = spec
        self.m = spec.m
        self.n = spec.n
        self._buf = b""
        self._next_id = 0
        try:
            self._proc = subprocess.Popen(
                spec.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                bufsize=0,
            )
        except OSError as exc:
            raise ConfigError(f"cannot start evaluator {spec.command!r}: {exc}") from exc
        self._handshake()

    def _handshake(self):
        hello = json.dumps({"hello": {"m": self.m, "n": self.n}}) + "\n"
        try:
            self._proc.stdin.write(hello.encode("utf-8"))
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            self._kill()
            raise ConfigError(f"evaluator closed its input during handshake: {exc}") from exc
        line = self._read_line(self.spec.handshake_timeout)
        if line is None:
            self._kill()
            raise ConfigError("evaluator did not answer the handshake in time")
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as exc:
            self._kill()
            raise ConfigError(f"bad handshake reply: {line!r}") from exc
        if reply.get("ready") is not True:
            self._kill()
            raise ConfigError(f"evaluator not ready: {reply!r}")

    def _read_line(self, timeout: float) -> str | None:
        """Next newline-terminated line from the child, or None on timeout.

        Reads the raw pipe fd so select() never races the buffering layer;
        returns None only when `timeout` elapses with no complete line.
        """
        fd = self._proc.stdout.fileno()
        while True:
            nl = self._buf.find(b"\n")
            if nl >= 0:
                line = self._buf[:nl]
                self._buf = self._buf[nl + 1:]
                return line.decode("utf-8")
            ready, _, _ = select.select([fd], [], [], timeout)
            if not ready:
                return None
            chunk = os.read(fd, 65536)
            if not chunk:
                raise EvaluatorCrashedError(
                    f"evaluator exited (code {self._proc.poll()}) with requests outstanding")
            self._buf += chunk

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Send one request per row of x, collect matching responses as (B, n)."""
        x = np.asarray(x, dtype=float)
        if x.ndim != 2 or x.shape[1] != self.m:
            raise ValueError(f"expected (B, {self.m}) inputs, got {x.shape}")
        ids = list(range(self._next_id, self._next_id + x.shape[0]))
        self._next_id += x.shape[0]
        payload = "".join(
            json.dumps({"id": rid, "x": [float(v) for v in row]}) + "\n"
            for rid, row in zip(ids, x)
        ).encode("utf-8")

        write_error: list[Exception] = []

        def write_all():
            try:
                self._proc.stdin.write(payload)
                self._proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:  # reader will see EOF and raise
                write_error.append(exc)

        writer = threading.Thread(target=write_all, daemon=True)
        writer.start()
        try:
            results = self._collect(set(ids))
        finally:
            writer.join(timeout=1.0)
        return np.array([results[rid] for rid in ids])

    def _collect(self, pending: set[int]) -> dict[int, list[float]]:
        results: dict[int, list[float]] = {}
        while pending:
            line = self._read_line(self.spec.eval_timeout)
            if line is None:
                raise EvaluationTimeoutError(
                    f"no response within {self.spec.eval_timeout}s; "
                    f"waiting on request id {min(pending)}")
            if not line.strip():
                continue
            try:
                reply = json.loads(line)
                rid = reply["id"]
                y = [float(v) for v in reply["y"]]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ProtocolError(f"malformed response line: {line!r}") from exc
            if rid not in pending:
                raise ProtocolError(f"response for unknown request id {rid}")
            if len(y) != self.n:
                raise ProtocolError(
                    f"response for id {rid} has {len(y)} outputs, expected {self.n}")
            results[rid] = y
            pending.discard(rid)
        return results

    def _kill(self):
        if self._proc.poll() is None:
            self._proc.kill()
        self._proc.wait()

    def close(self):
        try:
            if self._proc.poll() is None:
                self._proc.stdin.close()
                try:
                    self._proc.wait(timeout=2.0)
                except subprocess.TimeoutExpired:
                    self._kill()
        except OSError:
            self._kill()


class EvaluatorPool:
    """Fixed pool of child evaluators; batches are split across children.

    Each child handles its shard serially; shards run in parallel
    threads and results are reassembled in request order, so callers
    see one deterministic (B, n) array.
    """

    def __init__(self, spec: ExternalEvaluatorSpec):
        self.spec = spec
        self.m = spec.m
        self.n = spec.n
        self._children = [ExternalEvaluator(spec) for _ in range(spec.pool_size)]

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if len(self._children) == 1 or x.shape[0] <= 1:
            return self._children[0].evaluate(x)
        shards = np.array_split(np.arange(x.shape[0]), len(self._children))
        out = np.empty((x.shape[0], self.n))
        errors: list[Exception] = []

        def run(child, rows):
            try:
                out[rows] = child.evaluate(x[rows])
            except Exception as exc:
                errors.append(exc)

        threads = [
            threading.Thread(target=run, args=(child, rows), daemon=True)
            for child, rows in zip(self._children, shards) if len(rows)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        if errors:
            raise errors[0]
        return out

    def close(self):
        for child in self._children:
            child.close()
