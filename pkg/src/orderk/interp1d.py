"""Natural-neighbour interpolation on the line, orders 1 to 3.

With samples sorted as ``x0 < x1 < ... < x5`` around a query ``x2 < x < x3``:

* ``g1`` is the order-1 (Sibson) estimate: linear interpolation of
  ``(x2, y2)`` and ``(x3, y3)``;
* ``g2_raw`` / ``g3_raw`` are the region estimates from R_2 and R_3 alone;
* ``g2`` / ``g3`` fold the lower orders in, which turns the coefficients of
  the query-dependent terms into ``x - x_i`` / ``x_j - x`` forms.

Windows are chosen around the query; every coefficient set is nonnegative
and sums to one.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentEndpoints,
    DegenerateInput,
    EvenLength,
    InsufficientSamples,
    OrderOutOfRange,
    OutOfRange,
    SampleCollision,
)
from .voronoi import vertices_1d


@dataclass(frozen=True)
class Samples1D:
    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("xs and ys differ in length")
        if len(set(self.xs)) != len(self.xs):
            raise ValueError("sample abscissae must be distinct")

    @classmethod
    def from_arrays(cls, xs, ys) -> "Samples1D":
        return cls(tuple(float(x) for x in xs), tuple(float(y) for y in ys))

    def sorted(self) -> "Samples1D":
        order = sorted(range(len(self.xs)), key=self.xs.__getitem__)
        return Samples1D(tuple(self.xs[i] for i in order), tuple(self.ys[i] for i in order))

    def __len__(self):
        return len(self.xs)


def property_line(xs) -> tuple:
    """Both sides of the one-dimensional region identity.

    For ``2l + 1`` distinct reals (any order) returns ``(x_l, rhs)`` where::

        rhs = (sum_{i<l} x_i (x_{l+1+i} - x_{l+i})
               + sum_{i>l} x_i (x_{i-l} - x_{i-l-1})) / (x_{2l} - x_0)
    """
    xs = [float(x) for x in xs]
    m = len(xs)
    if m % 2 == 0:
        raise EvenLength(f"need an odd number of values, got {m}")
    ell = (m - 1) // 2
    span = xs[2 * ell] - xs[0]
    if span == 0:
        raise CoincidentEndpoints("first and last values coincide")
    terms = [xs[i] * (xs[ell + 1 + i] - xs[ell + i]) for i in range(ell)]
    terms += [xs[i] * (xs[i - ell] - xs[i - ell - 1]) for i in range(ell + 1, 2 * ell + 1)]
    return xs[ell], math.fsum(terms) / span


# ---------------------------------------------------------------------------
# Windows and coefficients


def _window(x: float, s: Samples1D, half: int):
    """Sorted samples plus the index of ``x2`` (last sample left of ``x``)."""
    ss = s.sorted()
    xs = ss.xs
    if x in xs:
        raise SampleCollision(f"query {x} coincides with a sample")
    right = bisect.bisect_left(xs, x)
    left = right - 1
    if left < 0 or right >= len(xs):
        raise OutOfRange(f"query {x} lies outside the sample range [{xs[0]}, {xs[-1]}]")
    if left - (half - 1) < 0 or right + (half - 1) >= len(xs):
        raise InsufficientSamples(
            f"order-{half} estimate needs {half} samples on each side of {x}"
        )
    return ss, left


def coefficients(x: float, s: Samples1D, order: int, raw: bool = False) -> tuple:
    """``(indices, weights)`` into the *sorted* samples for one estimate.

    ``order`` is 1, 2 or 3; ``raw`` selects the region-only estimate
    (``g2_raw``/``g3_raw``) instead of the folded one.
    """
    if order not in (1, 2, 3):
        raise OrderOutOfRange(f"closed forms exist for orders 1-3, got {order}")
    ss, i2 = _window(float(x), s, order)
    xs = ss.xs
    # window labels: xw[2] < x < xw[3]
    xw = {j: xs[i2 + j - 2] for j in range(3 - order, 3 + order)}
    idx = [i2 + j - 2 for j in range(3 - order, 3 + order)]
    if order == 1:
        d = xw[3] - xw[2]
        w = [(xw[3] - x) / d, (x - xw[2]) / d]
    elif order == 2 and raw:
        d = xw[4] - xw[1]
        w = [(xw[3] - x) / d, (xw[4] - xw[3]) / d, (xw[2] - xw[1]) / d, (x - xw[2]) / d]
    elif order == 2:
        d = xw[4] - xw[1] + xw[3] - xw[2]
        w = [(xw[3] - x) / d, (xw[4] - x) / d, (x - xw[1]) / d, (x - xw[2]) / d]
    elif raw:
        d = xw[5] - xw[0]
        w = [
            (xw[3] - x) / d,
            (xw[4] - xw[3]) / d,
            (xw[5] - xw[4]) / d,
            (xw[1] - xw[0]) / d,
            (xw[2] - xw[1]) / d,
            (x - xw[2]) / d,
        ]
    else:
        d = xw[5] - xw[0] + xw[4] - xw[1] + xw[3] - xw[2]
        w = [
            (xw[3] - x) / d,
            (xw[4] - x) / d,
            (xw[5] - x) / d,
            (x - xw[0]) / d,
            (x - xw[1]) / d,
            (x - xw[2]) / d,
        ]
    return idx, w


def _evaluate(x, s, order, raw=False):
    idx, w = coefficients(x, s, order, raw)
    ys = s.sorted().ys
    return math.fsum(wi * ys[i] for i, wi in zip(idx, w))


def g1(x: float, s: Samples1D) -> float:
    """Order-1 estimate (piecewise-linear); a sample abscissa returns its value."""
    x = float(x)
    if x in s.xs:
        return s.ys[s.xs.index(x)]
    return _evaluate(x, s, 1)


def g2_raw(x: float, s: Samples1D) -> float:
    return _evaluate(x, s, 2, raw=True)


def g2(x: float, s: Samples1D) -> float:
    return _evaluate(x, s, 2)


def g3_raw(x: float, s: Samples1D) -> float:
    return _evaluate(x, s, 3, raw=True)


def g3(x: float, s: Samples1D) -> float:
    return _evaluate(x, s, 3)


def derivation_residuals(x: float, s: Samples1D) -> dict:
    """How far the folded estimates are from their defining combinations.

    ``g2``: ``g2_raw + (x3-x2)/(x4-x1) g1 = (x4-x1+x3-x2)/(x4-x1) g2``;
    ``g3``: ``g3_raw + (x4-x1)/(x5-x0) g2_raw + (x3-x2)/(x5-x0) g1
    = (x5-x0+x4-x1+x3-x2)/(x5-x0) g3``.  Requires the order-3 window.
    """
    ss, i2 = _window(float(x), s, 3)
    xw = {j: ss.xs[i2 + j - 2] for j in range(6)}
    a, b, c = xw[5] - xw[0], xw[4] - xw[1], xw[3] - xw[2]
    v1, v2r, v2, v3r, v3 = g1(x, s), g2_raw(x, s), g2(x, s), g3_raw(x, s), g3(x, s)
    return {
        "g2": abs(v2r + c / b * v1 - (b + c) / b * v2),
        "g3": abs(v3r + b / a * v2r + c / a * v1 - (a + b + c) / a * v3),
    }


def curve(s: Samples1D, num: int = 101, gap: int | None = None) -> np.ndarray:
    """Rows ``(x, g1, g2, g3)`` sweeping the open gap ``(x2, x3)``.

    ``gap`` is the sorted index of the left end; by default the middle gap.
    """
    ss = s.sorted()
    n = len(ss)
    if n < 6:
        raise InsufficientSamples("a curve needs at least six samples")
    if gap is None:
        gap = n // 2 - 1
    lo, hi = ss.xs[gap], ss.xs[gap + 1]
    xs = np.linspace(lo, hi, num + 2)[1:-1]
    return np.array([(x, g1(x, ss), g2(x, ss), g3(x, ss)) for x in xs])


# ---------------------------------------------------------------------------
# Structure of the one-dimensional diagrams


def interleaving_check(s, k: int) -> bool:
    """Every bounded order-k cell holds exactly one order-(k-1) vertex and
    one order-(k+1) vertex strictly inside.

    Raises :class:`DegenerateInput` on repeated abscissae, which collapse
    cells to points.  With distinct values a vertex of order k-1 or k+1 can
    never land on an order-k vertex, so that case needs no separate test.
    """
    xs = sorted(float(x) for x in (s.xs if isinstance(s, Samples1D) else s))
    n = len(xs)
    repeats = sorted({a for a, b in zip(xs, xs[1:]) if a == b})
    if repeats:
        raise DegenerateInput(f"repeated abscissae {repeats}")
    if not 2 <= k <= n - 2:
        raise OrderOutOfRange(f"need 2 <= k <= n-2, got k={k}, n={n}")
    vk = vertices_1d(xs, k)
    lower, upper = vertices_1d(xs, k - 1), vertices_1d(xs, k + 1)
    for p, r in zip(vk, vk[1:]):
        if sum(p < v < r for v in lower) != 1 or sum(p < v < r for v in upper) != 1:
            return False
    return True
