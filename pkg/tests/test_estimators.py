import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sensa.errors import InsufficientDataError
from sensa.estimators import (
    EvaluationBlock,
    IndexAccumulator,
    compute_indices,
    estimate_first_order,
    estimate_total,
    estimate_variance,
    indices_from_csv,
    indices_to_csv,
)
from sensa.models import first_input_batch

from conftest import run_reference_design


def _block(k, xa, xb, y_a, y_b, y_ab, **kw):
    return EvaluationBlock(k=k, xa=np.asarray(xa), xb=np.asarray(xb),
                           y_a=np.asarray(y_a), y_b=np.asarray(y_b),
                           y_ab=np.asarray(y_ab), **kw)


def test_single_row_hand_values():
    # sv = (0-2)^2 = 4, st = (0-1)^2 = 1, ss = (2-1)^2 = 1
    b = _block(1, [0.1], [0.9], [0.0], [2.0], [[1.0]])
    assert estimate_variance([b]).tolist() == [2.0]
    assert estimate_total([b]).tolist() == [[0.25]]
    assert estimate_first_order([b]).tolist() == [[0.75]]


def test_equal_pairs_give_zero_variance_and_nan_indices():
    b = _block(1, [0.2], [0.7], [3.0], [3.0], [[3.0]])
    assert estimate_variance([b]).tolist() == [0.0]
    assert np.isnan(estimate_total([b])).all()
    assert np.isnan(estimate_first_order([b])).all()


def test_pass_through_model_is_exact():
    blocks = run_reference_design(first_input_batch, 3, 256)
    idx = compute_indices(blocks)
    # y = x1: coordinate-swap cancellation makes these identities exact
    assert abs(idx.S[0, 0] - 1.0) < 1e-12
    assert abs(idx.T[0, 0] - 1.0) < 1e-12
    for i in (1, 2):
        assert abs(idx.S[i, 0]) < 1e-12
        assert abs(idx.T[i, 0]) < 1e-12


def test_empty_blocks_raise():
    with pytest.raises(InsufficientDataError):
        compute_indices([])
    acc = IndexAccumulator(m=2, n=1)
    with pytest.raises(InsufficientDataError):
        acc.indices()


@given(c_exp=st.integers(-3, 3), seed=st.integers(0, 100))
@settings(max_examples=25)
def test_scale_invariance_power_of_two(c_exp, seed):
    c = 2.0 ** c_exp
    rng = np.random.default_rng(seed)
    blocks = []
    for k in range(1, 9):
        y = rng.normal(size=(4, 2))
        blocks.append(_block(k, rng.random(2), rng.random(2),
                             y[0], y[1], y[2:]))
    scaled = [_block(b.k, b.xa, b.xb, c * b.y_a, c * b.y_b, c * b.y_ab)
              for b in blocks]
    a, s = compute_indices(blocks), compute_indices(scaled)
    # power-of-two scaling is exact in binary floats, so the ratios match bitwise
    assert np.array_equal(a.S, s.S)
    assert np.array_equal(a.T, s.T)
    assert np.array_equal(s.V, (c * c) * a.V)


@given(seed=st.integers(0, 200))
@settings(max_examples=25)
def test_block_order_does_not_matter(seed):
    rng = np.random.default_rng(seed)
    blocks = []
    for k in range(1, 13):
        y = rng.normal(size=(5, 3))
        blocks.append(_block(k, rng.random(3), rng.random(3),
                             y[0], y[1], y[2:]))
    shuffled = list(blocks)
    rng.shuffle(shuffled)
    a, b = compute_indices(blocks), compute_indices(shuffled)
    # summation is canonicalized by row index, so this is bitwise equal
    assert np.array_equal(a.S, b.S, equal_nan=True)
    assert np.array_equal(a.T, b.T, equal_nan=True)
    assert np.array_equal(a.V, b.V)


def test_accumulator_matches_batch_path(synthetic_100):
    blocks = synthetic_100
    acc = IndexAccumulator(m=3, n=3)
    for b in blocks:
        acc.add_block(b)
    inc = acc.indices()
    ref = compute_indices(blocks)
    assert inc.N == ref.N == 100
    assert np.allclose(inc.S, ref.S, rtol=1e-9, atol=1e-12)
    assert np.allclose(inc.T, ref.T, rtol=1e-9, atol=1e-12)
    assert np.allclose(inc.V, ref.V, rtol=1e-9, atol=1e-12)


# Brute-force oracle: population variance of the demonstration model over
# 1e5 points from default_rng(20240817), computed once and recorded.
MC_VARIANCE = np.array([3.6156, 7.6891, 1.2511])


def test_variance_tracks_monte_carlo_oracle(synthetic_1000):
    blocks, _ = synthetic_1000
    vhat = estimate_variance(blocks)
    assert np.all(np.abs(vhat - MC_VARIANCE) <= 0.10 * MC_VARIANCE)


def test_additive_model_interaction_gap_shrinks():
    """For y with no interactions T - S is pure estimator noise, so the
    gap's median over independent designs must not grow with N."""
    def additive(x):
        return (x[:, 0] + 2.0 * x[:, 1])[:, None]

    medians = []
    for n_rows in (256, 1024, 4096):
        gaps = []
        for s in range(10):
            blocks = run_reference_design(additive, 2, n_rows, skip=s * 5000)
            idx = compute_indices(blocks)
            gaps.append(np.max(np.abs(idx.T - idx.S)))
        medians.append(np.median(gaps))
    assert medians[0] >= medians[1] >= medians[2]
    assert medians[2] < 0.01


def test_biased_flag_from_uniform_markers():
    b1 = _block(1, [0.1, 0.2], [0.3, 0.4], [1.0], [2.0], [[3.0], [4.0]])
    b2 = _block(2, [0.5, 0.6], [0.7, 0.8], [1.5], [2.5], [[3.5], [4.5]], uniform=False)
    assert not compute_indices([b1]).biased
    assert compute_indices([b1, b2]).biased
    # explicit override wins over the per-block markers
    assert compute_indices([b1, b2], biased=False).biased is False


def test_csv_round_trip_exact(synthetic_100):
    idx = compute_indices(synthetic_100)
    back = indices_from_csv(indices_to_csv(idx))
    assert np.array_equal(idx.S, back.S, equal_nan=True)
    assert np.array_equal(idx.T, back.T, equal_nan=True)
    assert np.array_equal(idx.V, back.V)
    # N is not a CSV column, only the matrices and the bias flag survive
    assert back.biased == idx.biased


def test_csv_round_trip_with_nan_column():
    b = _block(1, [0.2, 0.3], [0.7, 0.8], [3.0, 1.0], [3.0, 2.0],
               [[3.0, 1.5], [3.0, 1.2]])
    idx = compute_indices([b])
    assert np.isnan(idx.S[:, 0]).all()  # first output is constant
    back = indices_from_csv(indices_to_csv(idx))
    assert np.array_equal(idx.S, back.S, equal_nan=True)
    assert np.array_equal(idx.T, back.T, equal_nan=True)


def test_csv_header_and_shape():
    b = _block(1, [0.1], [0.9], [0.0], [2.0], [[1.0]])
    text = indices_to_csv(compute_indices([b]))
    lines = text.strip().splitlines()
    assert lines[0] == "output,input,S,T,V,biased"
    assert len(lines) == 2  # one (output, input) pair
