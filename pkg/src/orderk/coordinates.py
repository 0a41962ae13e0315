"""Convex-combination identities built from order-k Voronoi areas.

* :func:`sibson_weights` - natural-neighbour coordinates of a site.
* :func:`aurenhammer_identity` - the per-cell identity balancing the
  order-(k-1) and order-(k+1) subdivisions of an order-k cell.
* :func:`generalized_weights` - coordinates of a site over its region R_k.
* quadrilateral helpers: diagonal point, area identity and the cotangent
  area ratio of the perpendicular bisector construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import geom_core as gc
from . import voronoi as vo
from .errors import (
    Collinear,
    DegenerateAngles,
    NonConvexQuad,
    OrderOutOfRange,
    OutsideTriangle,
    UnboundedCell,
    UnboundedRegion,
)


@dataclass
class WeightVector:
    """Sparse coefficients expressing site ``site`` through other sites."""

    entries: dict
    site: int
    k: int
    denominator: float = math.nan  # area (or length) the weights are relative to

    @property
    def total(self) -> float:
        return math.fsum(self.entries.values())

    @property
    def min(self) -> float:
        return min(self.entries.values(), default=0.0)

    @property
    def support(self) -> list:
        return sorted(j for j, w in self.entries.items() if w > 0)

    def __getitem__(self, j):
        return self.entries.get(j, 0.0)

    def combine(self, values) -> float:
        return math.fsum(w * values[j] for j, w in self.entries.items())

    def reconstruct(self, points) -> tuple:
        dim = len(points[0])
        return tuple(math.fsum(w * points[j][c] for j, w in self.entries.items()) for c in range(dim))

    def residual(self, points) -> float:
        """Distance between the reconstructed point and the site itself."""
        r = self.reconstruct(points)
        return math.dist(r, points[self.site])

    def is_convex(self, tol_sum: float = 1e-9, tol_neg: float = 1e-12) -> bool:
        return abs(self.total - 1.0) <= tol_sum and self.min >= -tol_neg


def _weights(acc: dict, denom: float, site: int, k: int) -> WeightVector:
    entries = {j: max(a / denom, 0.0) for j, a in sorted(acc.items()) if a > 0}
    return WeightVector(entries, site, k, denom)


def _cache_for(s, cache, bbox):
    if cache is not None:
        return cache
    return vo.CellCache(s, bbox)


# ---------------------------------------------------------------------------
# Order 1


def sibson_weights(s: gc.PointSet, site: int, cache: vo.CellCache | None = None, bbox=None) -> WeightVector:
    """Natural-neighbour coordinates: ``area(f({l, j}) & f({l})) / area(f({l}))``."""
    cache = _cache_for(s, cache, bbox)
    home = cache.get((site,))
    if not home or home.polygon.clipped:
        raise UnboundedCell(f"cell of site {site} is unbounded")
    acc = {}
    for j in range(s.n):
        if j == site:
            continue
        pair = cache.get((site, j))
        if pair:
            a = gc.intersection_area(pair.polygon, home.polygon)
            if a > 0:
                acc[j] = a
    return _weights(acc, home.area, site, 1)


def sibson_weights_removal(s: gc.PointSet, site: int, cache: vo.CellCache | None = None, bbox=None) -> WeightVector:
    """The same coordinates via the diagram of ``S - {l}``: area of each
    remaining site's cell inside the cell of ``l``."""
    cache = _cache_for(s, cache, bbox)
    home = cache.get((site,))
    if not home or home.polygon.clipped:
        raise UnboundedCell(f"cell of site {site} is unbounded")
    rest = s.without(site)
    acc = {}
    for jj in range(rest.n):
        c = vo.cell(rest, (jj,), cache.bbox)
        if c:
            a = gc.intersection_area(c.polygon, home.polygon)
            if a > 0:
                acc[jj if jj < site else jj + 1] = a
    return _weights(acc, home.area, site, 1)


# ---------------------------------------------------------------------------
# Per-cell identity


@dataclass
class CellIdentityReport:
    cell: vo.OrderKCell
    lhs_terms: list  # (site, area) over order-(k-1) pieces
    rhs_terms: list  # (site, area) over order-(k+1) pieces
    lhs_point: tuple
    rhs_point: tuple
    residual: float
    sites: tuple = field(repr=False, default=())

    @property
    def k(self) -> int:
        return self.cell.k

    @property
    def area(self) -> float:
        return self.cell.area

    @property
    def lhs_area(self) -> float:
        return math.fsum(a for _, a in self.lhs_terms)

    @property
    def rhs_area(self) -> float:
        return math.fsum(a for _, a in self.rhs_terms)

    def lhs_weights(self) -> dict:
        return {i: a / self.area for i, a in self.lhs_terms}

    def rhs_weights(self) -> dict:
        return {j: a / self.area for j, a in self.rhs_terms}


def _weighted_point(s, terms, denom):
    return (
        math.fsum(a * s[i][0] for i, a in terms) / denom,
        math.fsum(a * s[i][1] for i, a in terms) / denom,
    )


def aurenhammer_identity(s: gc.PointSet, k: int, cell: vo.OrderKCell, cache: vo.CellCache | None = None) -> CellIdentityReport:
    """Both sides of the per-cell identity for a bounded order-k cell."""
    if not 2 <= k <= s.n - 2:
        raise OrderOutOfRange(f"identity needs 2 <= k <= n-2, got k={k}, n={s.n}")
    if cell.k != k:
        raise OrderOutOfRange(f"cell has order {cell.k}, expected {k}")
    if not cell.bounded:
        raise UnboundedCell(f"cell {cell.owners} is unbounded")
    cache = _cache_for(s, cache, None)
    owners = set(cell.owners)
    lhs, rhs = [], []
    for i in cell.owners:
        sub = cache.get(tuple(sorted(owners - {i})))
        if sub:
            a = gc.intersection_area(sub.polygon, cell.polygon)
            if a > 0:
                lhs.append((i, a))
    for j in range(s.n):
        if j in owners:
            continue
        sup = cache.get(tuple(sorted(owners | {j})))
        if sup:
            a = gc.intersection_area(sup.polygon, cell.polygon)
            if a > 0:
                rhs.append((j, a))
    area = cell.area
    lp = _weighted_point(s, lhs, area)
    rp = _weighted_point(s, rhs, area)
    return CellIdentityReport(cell, lhs, rhs, lp, rp, math.dist(lp, rp), s.points)


def h_point(report: CellIdentityReport) -> tuple:
    """The common point of both sides (their average)."""
    (ax, ay), (bx, by) = report.lhs_point, report.rhs_point
    return 0.5 * (ax + bx), 0.5 * (ay + by)


def is_quadrilateral_cell(cell: vo.OrderKCell) -> bool:
    return len(cell.polygon) == 4 and len(cell.generators()) == 4


def diagonal_point(report: CellIdentityReport):
    """For a quadrilateral cell: the crossing of the two generator diagonals
    (lhs pair against rhs pair), or ``None`` if the cell does not qualify."""
    if not is_quadrilateral_cell(report.cell):
        return None
    if len(report.lhs_terms) != 2 or len(report.rhs_terms) != 2:
        return None
    pts = report.sites
    (i1, _), (i3, _) = report.lhs_terms
    (j2, _), (j4, _) = report.rhs_terms
    return gc.segment_intersection(pts[i1], pts[i3], pts[j2], pts[j4])


def side_geometry(report: CellIdentityReport) -> dict:
    """Residuals of the geometric reading of each side of the identity.

    A side with two terms puts H on the segment between its sites, splitting
    it in proportion to the areas; a side with three terms puts H inside the
    triangle of its sites with barycentric coordinates equal to the areas.
    Residuals are unitless (segment offsets are relative to its length).
    Keys are ``"lhs"``/``"rhs"``; sides of other sizes are omitted.
    """
    h = h_point(report)
    pts = report.sites
    out = {}
    for name, terms in (("lhs", report.lhs_terms), ("rhs", report.rhs_terms)):
        total = math.fsum(a for _, a in terms)
        if len(terms) == 2:
            (i, ai), (j, aj) = terms
            p, q = pts[i], pts[j]
            dx, dy = q[0] - p[0], q[1] - p[1]
            ll = dx * dx + dy * dy
            t = ((h[0] - p[0]) * dx + (h[1] - p[1]) * dy) / ll
            off = abs((h[0] - p[0]) * dy - (h[1] - p[1]) * dx) / ll
            out[name] = max(off, abs(t - aj / total))
        elif len(terms) == 3:
            (a, wa), (b, wb), (c, wc) = terms
            bary = barycentric_triangle(h, pts[a], pts[b], pts[c], tol=1e-9)
            out[name] = max(abs(x - w / total) for x, w in zip(bary, (wa, wb, wc)))
    return out


# ---------------------------------------------------------------------------
# Region coordinates


def generalized_weights(s: gc.PointSet, k: int, site: int, cache: vo.CellCache | None = None, bbox=None) -> WeightVector:
    """Coordinates of ``site`` over its bounded region R_k.

    Each cell ``f(P)`` of the region contributes, for every ``j`` outside
    ``P``, the area of ``f(P + {j}) & f(P)``; weights are these areas summed
    per ``j`` and divided by the region's area.  Works on the line as well,
    where areas are interval lengths.
    """
    if s.dim == 1:
        return generalized_weights_1d([p[0] for p in s.points], k, site)
    if not 1 <= k <= s.n - 2:
        raise OrderOutOfRange(f"region coordinates need 1 <= k <= n-2, got k={k}, n={s.n}")
    cache = _cache_for(s, cache, bbox)
    cells = vo.region_cells(s, k, site, cache)
    if not cells or not all(c.bounded for c in cells):
        raise UnboundedRegion(f"region R_{k}({site}) is unbounded")
    acc: dict = {}
    for c in cells:
        owners = set(c.owners)
        for j in range(s.n):
            if j in owners:
                continue
            sup = cache.get(tuple(sorted(owners | {j})))
            if sup:
                a = gc.intersection_area(sup.polygon, c.polygon)
                if a > 0:
                    acc[j] = acc.get(j, 0.0) + a
    denom = math.fsum(c.area for c in cells)
    return _weights(acc, denom, site, k)


def generalized_weights_1d(xs, k: int, site: int) -> WeightVector:
    """Region coordinates on the line from the midpoint structure of V_k.

    ``site`` indexes ``xs`` as given (which need not be sorted).
    """
    n = len(xs)
    if not 1 <= k <= n - 2:
        raise OrderOutOfRange(f"region coordinates need 1 <= k <= n-2, got k={k}, n={n}")
    order = sorted(range(n), key=lambda i: xs[i])
    rank = order.index(site)
    cells_k = [c for c in vo.cells_1d(xs, k) if rank in c[0]]
    if any(math.isinf(lo) or math.isinf(hi) for _, lo, hi in cells_k):
        raise UnboundedRegion(f"region R_{k}({site}) is unbounded")
    cells_k1 = vo.cells_1d(xs, k + 1)
    acc: dict = {}
    for owners, lo, hi in cells_k:
        own = set(owners)
        for owners1, lo1, hi1 in cells_k1:
            extra = set(owners1) - own
            if len(extra) != 1 or not own <= set(owners1):
                continue
            overlap = min(hi, hi1) - max(lo, lo1)
            if overlap > 0:
                j = order[extra.pop()]
                acc[j] = acc.get(j, 0.0) + overlap
    denom = math.fsum(hi - lo for _, lo, hi in cells_k)
    return _weights(acc, denom, site, k)


def induction_residual(s: gc.PointSet, k: int, site: int, cache: vo.CellCache | None = None) -> float:
    """Check of the inductive step linking R_{k-1} and R_k.

    Summing the per-cell identity over R_k and dropping the terms of
    ``site`` itself must give the order-(k-1) region sum.  Returns the
    distance between the two weighted point sums, divided by area(R_k).
    """
    if not 2 <= k <= s.n - 2:
        raise OrderOutOfRange(f"induction step needs 2 <= k <= n-2, got {k}")
    cache = _cache_for(s, cache, None)
    cells_k = vo.region_cells(s, k, site, cache)
    if not all(c.bounded for c in cells_k):
        raise UnboundedRegion(f"region R_{k}({site}) is unbounded")
    a_terms = []
    for c in cells_k:
        for i in c.owners:
            if i == site:
                continue
            sub = cache.get(tuple(sorted(set(c.owners) - {i})))
            if sub:
                a_terms.append((i, gc.intersection_area(sub.polygon, c.polygon)))
    b_terms = []
    for c in vo.region_cells(s, k - 1, site, cache):
        for j in range(s.n):
            if j in c.owners:
                continue
            sup = cache.get(tuple(sorted(set(c.owners) | {j})))
            if sup:
                # clipped in the opposite order to a_terms so the two sums are computed independently
                b_terms.append((j, gc.intersection_area(sup.polygon, c.polygon)))
    denom = math.fsum(c.area for c in cells_k)
    return math.dist(_weighted_point(s, a_terms, denom), _weighted_point(s, b_terms, denom))


# ---------------------------------------------------------------------------
# Triangles and quadrilaterals


def barycentric_triangle(p, a, b, c, tol: float = 1e-12) -> tuple:
    """Area coordinates of ``p`` in triangle ``abc``."""
    if gc.orient2d(a, b, c, gc.ROBUST) == 0:
        raise Collinear("triangle vertices are collinear")

    def signed(u, v, w):
        return 0.5 * ((v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]))

    total = signed(a, b, c)
    wa, wb, wc = signed(p, b, c) / total, signed(a, p, c) / total, signed(a, b, p) / total
    if min(wa, wb, wc) < -tol:
        raise OutsideTriangle(f"point {p!r} lies outside the triangle")
    return abs(wa), abs(wb), abs(wc)


def _check_convex_quad(q):
    signs = {gc.orient2d(q[i], q[(i + 1) % 4], q[(i + 2) % 4], gc.ROBUST) for i in range(4)}
    if len(signs) != 1 or 0 in signs:
        raise NonConvexQuad("vertices do not form a strictly convex quadrilateral in cyclic order")


def quad_identity(q1, q2, q3, q4, mode: str = gc.FLOAT):
    """The two area-weighted diagonal combinations of a convex quadrilateral.

    Returns ``(Q1*T234 + Q3*T124, Q2*T134 + Q4*T123)``, each divided by the
    quadrilateral's area; both equal the crossing of the diagonals.  In
    ``robust`` mode the arithmetic is rational and the results are
    :class:`fractions.Fraction` pairs.
    """
    q = (q1, q2, q3, q4)
    _check_convex_quad(q)
    if mode == gc.ROBUST:
        q = tuple(tuple(Fraction(c) for c in p) for p in q)

    def tri(u, v, w):
        d = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
        return abs(d) / 2

    q1, q2, q3, q4 = q
    t234, t124, t134, t123 = tri(q2, q3, q4), tri(q1, q2, q4), tri(q1, q3, q4), tri(q1, q2, q3)
    total = t123 + t134
    first = tuple((q1[c] * t234 + q3[c] * t124) / total for c in range(2))
    second = tuple((q2[c] * t134 + q4[c] * t123) / total for c in range(2))
    return first, second


def bisector_quad(q1, q2, q3, q4) -> dict:
    """Circumcenters ``C_ijl`` of the four site triples, keyed ``"123"`` etc."""
    q = {1: q1, 2: q2, 3: q3, 4: q4}
    return {
        key: gc.circumcenter(q[int(key[0])], q[int(key[1])], q[int(key[2])])
        for key in ("123", "124", "134", "234")
    }


def omitted_vertex(key: str) -> int:
    """1-based index of the site a circumcenter ``C_ijl`` does not pass through."""
    return ({1, 2, 3, 4} - {int(c) for c in key}).pop()


def circumcenter_triangles(q1, q2, q3, q4) -> list:
    """``(keys, area_c, area_q)`` for each triangle of three circumcenters.

    The circumcenter quadrilateral is affine to ``q1..q4`` with ``C_ijl``
    corresponding to the omitted vertex, so ``area_c = |r| * area_q`` where
    ``area_q`` is the triangle of the omitted vertices.
    """
    q = {1: q1, 2: q2, 3: q3, 4: q4}
    c = bisector_quad(q1, q2, q3, q4)
    out = []
    for keys in (("123", "124", "134"), ("123", "124", "234"), ("123", "134", "234"), ("124", "134", "234")):
        area_c = gc.triangle_area(*(c[k] for k in keys))
        area_q = gc.triangle_area(*(q[omitted_vertex(k)] for k in keys))
        out.append((keys, area_c, area_q))
    return out


def interior_angles(q) -> list:
    out = []
    for i in range(4):
        p, c, n = q[i - 1], q[i], q[(i + 1) % 4]
        u = (p[0] - c[0], p[1] - c[1])
        v = (n[0] - c[0], n[1] - c[1])
        out.append(math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1]))
    return out


def cot_ratio(q1, q2, q3, q4, eps: float = 1e-9) -> float:
    """``|(cot a + cot c)(cot b + cot d)| / 4`` over the interior angles."""
    q = (q1, q2, q3, q4)
    _check_convex_quad(q)
    ang = interior_angles(q)
    if any(a < eps or a > math.pi - eps for a in ang):
        raise DegenerateAngles("an interior angle is within eps of 0 or pi")
    cot = [math.cos(a) / math.sin(a) for a in ang]
    s13, s24 = cot[0] + cot[2], cot[1] + cot[3]
    if abs(s13) <= eps or abs(s24) <= eps:
        # opposite angles sum to pi: cocircular, the bisectors are concurrent
        raise DegenerateAngles("quadrilateral is cocircular; the bisector cell degenerates")
    return abs(0.25 * s13 * s24)


def quad_area_ratio(q1, q2, q3, q4, cell: gc.ConvexPolygon | None = None) -> tuple:
    """``(area(cell) / area(quad), cot formula)``.

    Without ``cell`` the cell is the perpendicular bisector construction,
    the quadrilateral of the four circumcenters.
    """
    r_formula = cot_ratio(q1, q2, q3, q4)
    if cell is None:
        c = bisector_quad(q1, q2, q3, q4)
        cell_area = gc.area((c["123"], c["124"], c["134"], c["234"]))
    else:
        cell_area = gc.area(cell)
    quad_area = gc.area((q1, q2, q3, q4))
    return cell_area / quad_area, r_formula
