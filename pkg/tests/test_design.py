import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from sensa.design import (
    build_design_rows,
    evaluation_plan,
    hybrid_point,
    transform_points,
)
from sensa.errors import MalformedPointError
from sensa.regional import CumulativeCurve


def test_split_point_m3():
    pts = np.array([[0.1, 0.2, 0.3, 0.6, 0.7, 0.8]])
    rows = build_design_rows(pts)
    assert len(rows) == 1
    assert rows[0].k == 1
    assert rows[0].a.tolist() == [0.1, 0.2, 0.3]
    assert rows[0].b.tolist() == [0.6, 0.7, 0.8]


def test_first_k_offset():
    pts = np.zeros((3, 4))
    rows = build_design_rows(pts, first_k=7)
    assert [r.k for r in rows] == [7, 8, 9]


def test_hybrid_point_swaps_one_coordinate():
    a = np.array([0.1, 0.2, 0.3])
    b = np.array([0.8, 0.9, 1.0])
    assert hybrid_point(a, b, 2).tolist() == [0.1, 0.9, 0.3]


def test_plan_one_row_m3():
    pts = np.array([[0.1, 0.2, 0.3, 0.6, 0.7, 0.8]])
    plan = evaluation_plan(build_design_rows(pts))
    assert [req.tag for req in plan] == ["A", "B", "AB:1", "AB:2", "AB:3"]
    assert plan[0].x.tolist() == [0.1, 0.2, 0.3]
    assert plan[1].x.tolist() == [0.6, 0.7, 0.8]
    # AB:2 takes coordinate 2 from B, the rest from A
    assert plan[3].x.tolist() == [0.1, 0.7, 0.3]


def test_plan_cardinality_m84():
    rows = build_design_rows(np.random.default_rng(0).random((10, 168)))
    plan = evaluation_plan(rows)
    assert len(plan) == 10 * (84 + 2)


@given(
    m=st.integers(1, 8),
    data=st.data(),
)
@settings(max_examples=30)
def test_hybrid_involution(m, data):
    a = data.draw(hnp.arrays(np.float64, (m,), elements=st.floats(0, 1)))
    b = data.draw(hnp.arrays(np.float64, (m,), elements=st.floats(0, 1)))
    i = data.draw(st.integers(1, m))
    # swapping coordinate i twice restores the original point
    once = hybrid_point(a, b, i)
    twice = hybrid_point(once, a, i)
    assert np.array_equal(twice, a)


@given(n=st.integers(0, 6), m=st.integers(1, 6))
@settings(max_examples=30)
def test_plan_counts(n, m):
    pts = np.random.default_rng(n * 31 + m).random((n, 2 * m))
    plan = evaluation_plan(build_design_rows(pts))
    assert len(plan) == n * (m + 2)
    tags = [req.tag for req in plan]
    assert tags[: m + 2] == ["A", "B"] + [f"AB:{i}" for i in range(1, m + 1)] if n else tags == []


def test_transform_identity():
    pts = np.random.default_rng(3).random((5, 6))
    out = transform_points(pts, [None, None, None])
    assert np.array_equal(out, pts)


def test_transform_applies_curve_per_input():
    # density 2 on [0.5, 1]: cdf breakpoints (0.5, 0.75, 1.0) -> (0, 0.5, 1)
    curve = CumulativeCurve(
        breakpoints=np.array([0.5, 0.75, 1.0]),
        cumulative=np.array([0.0, 0.5, 1.0]),
    )
    pts = np.full((1, 2), 0.5)
    out = transform_points(pts, [curve])
    # u = 0.5 maps to the density midpoint 0.75, in both the A and B half
    assert out[0].tolist() == [0.75, 0.75]


def test_transform_column_maps_to_curve_modulo_m():
    identity = None
    curve = CumulativeCurve(
        breakpoints=np.array([0.0, 1.0]), cumulative=np.array([0.0, 1.0]))
    half = CumulativeCurve(
        breakpoints=np.array([0.0, 0.5]), cumulative=np.array([0.0, 1.0]))
    pts = np.array([[0.4, 0.4, 0.4, 0.4]])
    out = transform_points(pts, [half, identity])
    # columns 0 and 2 belong to input 1, columns 1 and 3 to input 2
    assert out[0].tolist() == [0.2, 0.4, 0.2, 0.4]
    out2 = transform_points(pts, [identity, curve])
    assert out2[0].tolist() == [0.4, 0.4, 0.4, 0.4]


def test_malformed_points_rejected():
    with pytest.raises(MalformedPointError):
        build_design_rows(np.zeros((2, 5)))  # odd column count
    with pytest.raises(MalformedPointError):
        build_design_rows(np.zeros(6))  # not 2-d
