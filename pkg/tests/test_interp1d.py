import math
import random

import numpy as np
import pytest

from orderk import coordinates as co
from orderk import interp1d as i1
from orderk import io
from orderk.errors import (
    CoincidentEndpoints,
    DegenerateInput,
    EvenLength,
    InsufficientSamples,
    OrderOutOfRange,
    OutOfRange,
    SampleCollision,
)


def samples(xs, f):
    xs = np.asarray(xs, dtype=float)
    return i1.Samples1D.from_arrays(xs, f(xs))


# ------------------------------------------------------------ line identity


def test_property_line_three():
    assert i1.property_line((0, 1, 2)) == (1.0, 1.0)


def test_property_line_five():
    lhs, rhs = i1.property_line((0, 1, 2, 3, 4))
    assert lhs == 2 and rhs == pytest.approx(2, abs=1e-12)


def test_property_line_unsorted():
    lhs, rhs = i1.property_line((3, 0, 2, 4, 1))
    assert lhs == 2 and rhs == pytest.approx(lhs, abs=1e-12)


def test_property_line_random_permutations(rng):
    for _ in range(500):
        m = 2 * int(rng.integers(1, 10)) + 1
        xs = rng.normal(size=m) * 100
        lhs, rhs = i1.property_line(xs)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, np.abs(xs).max())


def test_property_line_errors():
    with pytest.raises(EvenLength):
        i1.property_line((0, 1, 2, 3))
    with pytest.raises(CoincidentEndpoints):
        i1.property_line((1, 5, 1))


# ------------------------------------------------------------ interpolants


def test_g1_midpoint_and_limit():
    s = samples([0, 1, 2.5, 4, 5, 7], lambda x: np.sin(x))
    assert i1.g1(3.25, s) == pytest.approx((s.ys[2] + s.ys[3]) / 2, abs=1e-15)
    assert i1.g1(2.5 + 1e-12, s) == pytest.approx(s.ys[2], abs=1e-10)
    assert i1.g1(2.5, s) == s.ys[2]


@pytest.mark.parametrize("fn", [i1.g1, i1.g2, i1.g3, i1.g2_raw, i1.g3_raw])
def test_reproduces_constants_and_lines(rng, fn):
    for _ in range(100):
        xs = np.sort(rng.random(int(rng.integers(6, 15))) * 10)
        a, b = rng.normal(size=2)
        x = float(xs[2] + (xs[3] - xs[2]) * rng.uniform(0.01, 0.99))
        assert abs(fn(x, samples(xs, lambda t: 0 * t + b)) - b) <= 1e-12 * max(1, abs(b))
        v = fn(x, samples(xs, lambda t: a * t + b))
        assert abs(v - (a * x + b)) <= 1e-12 * max(1.0, abs(a * x + b))


def test_g2_closed_form():
    xs = [0.0, 1.0, 2.0, 3.5, 4.0, 6.0]
    ys = [1.0, -2.0, 0.5, 3.0, 2.0, 7.0]
    s = i1.Samples1D.from_arrays(xs, ys)
    x = 2.7
    x1, x2, x3, x4 = xs[1:5]
    y1, y2, y3, y4 = ys[1:5]
    expect = (y1 * (x3 - x) + y2 * (x4 - x) + y3 * (x - x1) + y4 * (x - x2)) / (x4 - x1 + x3 - x2)
    assert i1.g2(x, s) == pytest.approx(expect, abs=1e-14)


@pytest.mark.parametrize("order,raw", [(1, False), (2, False), (2, True), (3, False), (3, True)])
def test_coefficients_convex(rng, order, raw):
    for _ in range(100):
        xs = np.sort(rng.random(8))
        x = float(xs[3] + (xs[4] - xs[3]) * rng.random())
        idx, w = i1.coefficients(x, samples(xs, np.cos), order, raw)
        assert len(idx) == 2 * order
        assert min(w) >= 0 and math.fsum(w) == pytest.approx(1, abs=1e-12)


def test_unsorted_samples_match_sorted(rng):
    xs = rng.random(9)
    s = samples(xs, np.exp)
    x = float(np.sort(xs)[4] * 0.5 + np.sort(xs)[5] * 0.5)
    for fn in (i1.g1, i1.g2, i1.g3):
        assert fn(x, s) == fn(x, s.sorted())


def test_derivation_identities(rng):
    for _ in range(200):
        xs = np.sort(rng.random(6) * 5)
        s = samples(xs, lambda t: rng.normal(size=t.shape))
        x = float(xs[2] + (xs[3] - xs[2]) * rng.random())
        res = i1.derivation_residuals(x, s)
        assert max(res.values()) <= 1e-12 * max(1, max(map(abs, s.ys)))


def test_region_coordinates_agree_with_closed_forms(rng):
    # inserting the query and taking its region coordinates gives the raw estimates
    for _ in range(50):
        xs = np.sort(rng.random(8))
        x = float(xs[3] + (xs[4] - xs[3]) * rng.uniform(0.05, 0.95))
        s = samples(xs, np.sin)
        for order, raw in ((1, False), (2, True), (3, True)):
            idx, w = i1.coefficients(x, s, order, raw)
            gw = co.generalized_weights_1d(list(xs) + [x], order, 8)
            assert sorted(gw.support) == idx
            for j, wj in zip(idx, w):
                assert gw[j] == pytest.approx(wj, abs=1e-12)


def test_limit_at_sample_need_not_match():
    # order-2 estimate approaching a sample from the right misses the sample value
    rng = random.Random(5)
    for _ in range(100):
        xs = sorted(rng.uniform(0, 10) for _ in range(6))
        s = i1.Samples1D(tuple(xs), tuple(x * x for x in xs))
        if abs(i1.g2(xs[2] + 1e-9, s) - s.ys[2]) > 1e-3:
            break
    else:
        pytest.fail("no witness found")
    assert abs(i1.g1(xs[2] + 1e-9, s) - s.ys[2]) < 1e-6


def test_errors():
    s = samples(range(6), lambda x: x * 1.0)
    with pytest.raises(SampleCollision):
        i1.g2(2.0, s)
    with pytest.raises(SampleCollision):
        i1.g3(2.0, s)
    with pytest.raises(OutOfRange):
        i1.g1(-1.0, s)
    with pytest.raises(InsufficientSamples):
        i1.g2(0.5, s)
    with pytest.raises(InsufficientSamples):
        i1.g3(1.5, samples(range(5), lambda x: x * 1.0))
    with pytest.raises(OrderOutOfRange):
        i1.coefficients(2.5, s, 4)
    with pytest.raises(ValueError):
        i1.Samples1D((0.0, 0.0), (1.0, 2.0))


def test_curve_fixture(data_dir):
    f = io.load_points(data_dir / "curve6.csv")
    s = i1.Samples1D(tuple(p[0] for p in f.points.points), f.values)
    rows = i1.curve(s, num=25)
    assert rows.shape == (25, 4)
    xs = sorted(s.xs)
    assert np.all((rows[:, 0] > xs[2]) & (rows[:, 0] < xs[3]))
    assert np.all(np.diff(rows[:, 0]) > 0)


def test_curve_line_is_flat(data_dir):
    f = io.load_points(data_dir / "line6.csv")
    s = i1.Samples1D(tuple(p[0] for p in f.points.points), f.values)
    rows = i1.curve(s, num=11)
    line = 2 * rows[:, 0] + 1
    for col in (1, 2, 3):
        assert np.max(np.abs(rows[:, col] - line)) <= 1e-12


# ------------------------------------------------------------ interleaving


def test_interleaving_uniform():
    assert i1.interleaving_check(range(10), 3)


def test_interleaving_random(rng):
    for _ in range(20):
        xs = rng.random(20)
        for k in range(2, 19):
            assert i1.interleaving_check(xs, k)


def test_interleaving_repeated_midpoints_are_fine():
    # arithmetic progressions repeat midpoints across orders, never between adjacent ones
    for k in range(2, 8):
        assert i1.interleaving_check(range(10), k)


def test_interleaving_degenerate():
    with pytest.raises(DegenerateInput):
        i1.interleaving_check([0, 1, 2, 2, 4, 5], 2)


def test_interleaving_order_range():
    with pytest.raises(OrderOutOfRange):
        i1.interleaving_check(range(6), 1)
    with pytest.raises(OrderOutOfRange):
        i1.interleaving_check(range(6), 5)
