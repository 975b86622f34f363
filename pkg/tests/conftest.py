import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

from sensa.design import build_design_rows, evaluation_plan
from sensa.estimators import EvaluationBlock
from sensa.models import ishigami_batch, synthetic_eval_batch
from sensa.sobol import sobol_points


def run_reference_design(batch_fn, m: int, n_rows: int, skip: int = 0) -> list[EvaluationBlock]:
    """Non-adaptive paired design evaluated in one shot (the oracle-side runner).

    Independent of the campaign machinery so campaign tests have a
    from-scratch path to compare against.
    """
    pts = sobol_points(2 * m, n_rows, skip=skip)
    rows = build_design_rows(pts, first_k=skip + 1)
    plan = evaluation_plan(rows)
    x = np.stack([req.x for req in plan])
    y = batch_fn(x)
    per_row = m + 2
    blocks = []
    for r, row in enumerate(rows):
        base = r * per_row
        blocks.append(EvaluationBlock(
            k=row.k, xa=row.a, xb=row.b,
            y_a=y[base], y_b=y[base + 1],
            y_ab=y[base + 2: base + 2 + m],
        ))
    return blocks


@pytest.fixture(scope="session")
def synthetic_1000():
    """N=1000 synthetic-model design plus its wall-clock evaluation time."""
    start = time.perf_counter()
    blocks = run_reference_design(synthetic_eval_batch, 3, 1000)
    elapsed = time.perf_counter() - start
    return blocks, elapsed


@pytest.fixture(scope="session")
def synthetic_100():
    return run_reference_design(synthetic_eval_batch, 3, 100)


@pytest.fixture(scope="session")
def ishigami_4096():
    return run_reference_design(ishigami_batch, 3, 4096)
