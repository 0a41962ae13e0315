"""Planar primitives: bisectors, convex clipping, areas, circumcenters and
general-position predicates.

Points are plain tuples of floats.  Polygons are immutable
:class:`ConvexPolygon` values whose edges carry a provenance tag (the tag of
the half-plane that produced the edge), which is what lets the diagram code
tell bounded cells from ones that touched the construction box and find the
neighbour across each edge.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import Collinear, IdenticalPoints, OverlappingSegments

FLOAT = "float"
ROBUST = "robust"
MODES = (FLOAT, ROBUST)

EPS_REL = 1e-9
WIDTH_EPS = 1e-12  # thickness below this times the coordinate scale is noise
DEFAULT_BBOX_SCALE = 20.0
MAX_BBOX_SCALE = 1e6

_EPS = np.finfo(float).eps / 2
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERRBOUND = (10.0 + 96.0 * _EPS) * _EPS

Point = tuple


def default_mode(fallback: str = ROBUST) -> str:
    """Exactness mode, honouring the ``ORDERK_MODE`` environment override."""
    mode = os.environ.get("ORDERK_MODE", "").strip().lower()
    if mode in MODES:
        return mode
    return fallback


def _check_mode(mode):
    if mode is None:
        return default_mode()
    if mode not in MODES:
        raise ValueError(f"unknown exactness mode {mode!r}")
    return mode


# ---------------------------------------------------------------------------
# Point sets


@dataclass(frozen=True)
class PointSet:
    """Ordered labelled sites in R^1 or R^2."""

    points: tuple
    dim: int = 2
    labels: tuple | None = None

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.dim}")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point {p!r} does not have dimension {self.dim}")
            if not all(math.isfinite(c) for c in p):
                raise ValueError(f"point {p!r} has non-finite coordinates")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise ValueError("labels and points differ in length")

    @classmethod
    def from_coords(cls, coords, labels=None) -> "PointSet":
        arr = np.asarray(coords, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        pts = tuple(tuple(float(c) for c in row) for row in arr)
        return cls(pts, arr.shape[1], None if labels is None else tuple(labels))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(len(self.points), self.dim)

    @property
    def centroid(self) -> tuple:
        return tuple(float(c) for c in self.array.mean(axis=0))

    @property
    def diameter(self) -> float:
        a = self.array
        if len(a) < 2:
            return 0.0
        diff = a[:, None, :] - a[None, :, :]
        return float(np.sqrt((diff**2).sum(axis=-1)).max())

    def with_point(self, p) -> "PointSet":
        """A new set with ``p`` appended (index ``n``)."""
        labels = None if self.labels is None else self.labels + (str(self.n),)
        return PointSet(self.points + (tuple(float(c) for c in p),), self.dim, labels)

    def without(self, index: int) -> "PointSet":
        pts = self.points[:index] + self.points[index + 1 :]
        labels = None
        if self.labels is not None:
            labels = self.labels[:index] + self.labels[index + 1 :]
        return PointSet(pts, self.dim, labels)


# ---------------------------------------------------------------------------
# Half-planes and polygons


@dataclass(frozen=True)
class HalfPlane:
    """The closed set ``{x : normal . x <= offset}``."""

    normal: tuple
    offset: float
    tag: object = None

    def __post_init__(self):
        if self.normal[0] == 0 and self.normal[1] == 0:
            raise ValueError("half-plane normal must be nonzero")

    def value(self, p) -> float:
        return self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset

    def contains(self, p, tol: float = 0.0) -> bool:
        return self.value(p) <= tol


@dataclass(frozen=True)
class ConvexPolygon:
    """Counter-clockwise convex polygon.

    ``edge_tags[i]`` is the provenance of the edge from ``vertices[i]`` to
    ``vertices[i + 1]``; bounding-box edges carry tags ``("bbox", i)``.
    """

    vertices: tuple = ()
    clipped: bool = False
    edge_tags: tuple = field(default=(), compare=False)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    def __bool__(self):
        return not self.is_empty

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        return area(self)

    @property
    def centroid(self) -> tuple:
        return polygon_centroid(self)

    def halfplanes(self) -> list[HalfPlane]:
        """The supporting half-planes of the edges, tagged like the edges."""
        out = []
        m = len(self.vertices)
        tags = self.edge_tags or (None,) * m
        for i in range(m):
            a, b = self.vertices[i], self.vertices[(i + 1) % m]
            # interior lies to the left of a ccw edge
            nx, ny = b[1] - a[1], a[0] - b[0]
            norm = math.hypot(nx, ny)
            nx, ny = nx / norm, ny / norm
            out.append(HalfPlane((nx, ny), nx * a[0] + ny * a[1], tags[i]))
        return out


EMPTY = ConvexPolygon()


def is_bbox_tag(tag) -> bool:
    return isinstance(tag, tuple) and len(tag) == 2 and tag[0] == "bbox"


def rectangle(xmin, ymin, xmax, ymax, clipped=True) -> ConvexPolygon:
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("rectangle must have positive extent")
    verts = ((xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax))
    return ConvexPolygon(verts, clipped, tuple(("bbox", i) for i in range(4)))


def circumcenter_reach(s: PointSet) -> float:
    """Largest distance from the centroid to a circumcenter of three sites.

    Every vertex of every order-k diagram is such a circumcenter, so a box
    reaching this far never touches a bounded cell.
    """
    a = s.array
    if len(a) < 3:
        return 0.0
    tri = _combos(len(a), 3, None)
    p, q, r = a[tri[:, 0]], a[tri[:, 1]], a[tri[:, 2]]
    bx, by = q[:, 0] - p[:, 0], q[:, 1] - p[:, 1]
    cx, cy = r[:, 0] - p[:, 0], r[:, 1] - p[:, 1]
    d = 2.0 * (bx * cy - by * cx)
    ok = d != 0
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    with np.errstate(divide="ignore", invalid="ignore"):
        ux = p[:, 0] + (cy * b2 - by * c2) / d
        uy = p[:, 1] + (bx * c2 - cx * b2) / d
    if not ok.any():
        return 0.0
    c = a.mean(axis=0)
    return float(np.max(np.maximum(np.abs(ux[ok] - c[0]), np.abs(uy[ok] - c[1]))))


def bounding_box(s: PointSet, scale: float = DEFAULT_BBOX_SCALE, fit: bool = True) -> ConvexPolygon:
    """Axis-aligned square centred at the centroid.

    The side is ``scale * diameter``; with ``fit`` the square is grown (up to
    ``MAX_BBOX_SCALE`` diameters) until it strictly contains every
    circumcenter of three sites.
    """
    if s.dim != 2:
        raise ValueError("bounding box is only defined for planar sets")
    cx, cy = s.centroid
    diam = s.diameter or 1.0
    half = 0.5 * scale * diam
    if fit:
        reach = circumcenter_reach(s) * 1.05 + 0.5 * diam
        half = max(half, min(reach, 0.5 * MAX_BBOX_SCALE * diam))
    return rectangle(cx - half, cy - half, cx + half, cy + half)


def is_sliver(vertices, eps: float = WIDTH_EPS) -> bool:
    """True when a polygon is too thin to be told apart from rounding noise.

    Thickness is ``2 * area / perimeter``; a truly empty intersection comes
    out of clipping as a sliver whose thickness is a few ulps of the
    coordinates, while a small genuine polygon keeps its aspect ratio.
    """
    if len(vertices) < 3:
        return True
    a = area(vertices)
    per = math.fsum(math.dist(p, q) for p, q in zip(vertices, vertices[1:] + vertices[:1]))
    scale = max(max(abs(v[0]), abs(v[1])) for v in vertices) + per
    return a <= 0 or 2 * a / per <= eps * scale


def bbox_extent(bbox: ConvexPolygon) -> tuple:
    xs = [v[0] for v in bbox.vertices]
    ys = [v[1] for v in bbox.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def bisector(p, q, tag=None) -> HalfPlane:
    """Half-plane of points at least as close to ``p`` as to ``q``."""
    if len(p) != 2 or len(q) != 2:
        raise ValueError("bisector needs planar points")
    dx, dy = q[0] - p[0], q[1] - p[1]
    norm = math.hypot(dx, dy)
    if norm == 0:
        raise IdenticalPoints(f"bisector of identical points {p!r}")
    nx, ny = dx / norm, dy / norm
    mx, my = 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])
    return HalfPlane((nx, ny), nx * mx + ny * my, tag)


def signed_area(vertices: Sequence) -> float:
    m = len(vertices)
    if m < 3:
        return 0.0
    # shift to the first vertex to limit cancellation
    x0, y0 = vertices[0]
    acc = 0.0
    for i in range(1, m - 1):
        ax, ay = vertices[i][0] - x0, vertices[i][1] - y0
        bx, by = vertices[i + 1][0] - x0, vertices[i + 1][1] - y0
        acc += ax * by - ay * bx
    return 0.5 * acc


def area(p) -> float:
    """Shoelace area; the empty polygon has area 0."""
    if p is None:
        return 0.0
    verts = p.vertices if isinstance(p, ConvexPolygon) else p
    return abs(signed_area(verts))


def triangle_area(a, b, c) -> float:
    return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def polygon_centroid(p: ConvexPolygon) -> tuple:
    verts = p.vertices
    if not verts:
        raise ValueError("empty polygon has no centroid")
    x0, y0 = verts[0]
    cx = cy = a2 = 0.0
    for i in range(1, len(verts) - 1):
        ax, ay = verts[i][0] - x0, verts[i][1] - y0
        bx, by = verts[i + 1][0] - x0, verts[i + 1][1] - y0
        cr = ax * by - ay * bx
        a2 += cr
        cx += cr * (ax + bx)
        cy += cr * (ay + by)
    if a2 == 0:
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        return sum(xs) / len(xs), sum(ys) / len(ys)
    return x0 + cx / (3 * a2), y0 + cy / (3 * a2)


def point_in_polygon(pt, p: ConvexPolygon, tol: float = 0.0) -> bool:
    if p.is_empty:
        return False
    return all(h.value(pt) <= tol for h in p.halfplanes())


def interior_point(p: ConvexPolygon) -> tuple:
    """A point well inside ``p``: the centroid, or for slivers the centroid
    of the largest vertex triangle."""
    c = polygon_centroid(p)
    size = math.sqrt(area(p))
    if min(-h.value(c) for h in p.halfplanes()) > EPS_REL * size:
        return c
    best = max(itertools.combinations(p.vertices, 3), key=lambda t: triangle_area(*t))
    return (sum(v[0] for v in best) / 3, sum(v[1] for v in best) / 3)


# ---------------------------------------------------------------------------
# Clipping


_REL_TOL = 1e-13


def _clip(vertices, tags, hp: HalfPlane):
    """Sutherland-Hodgman step of a convex ring against one half-plane.

    Vertices within a magnitude-relative tolerance of the line count as on
    it, so no sliver edges are created.
    """
    nx, ny = hp.normal
    c = hp.offset
    ac = abs(c)
    d = []
    any_out = False
    for x, y in vertices:
        v = nx * x + ny * y - c
        tol = _REL_TOL * (abs(x) + abs(y) + ac)
        if -tol <= v <= tol:
            v = 0.0
        elif v > 0:
            any_out = True
        d.append(v)
    if not any_out:
        return vertices, tags
    out_v, out_t = [], []
    m = len(vertices)
    for i in range(m):
        j = (i + 1) % m
        di, dj = d[i], d[j]
        vi = vertices[i]
        if di <= 0:
            if dj > 0:
                if di == 0:
                    out_v.append(vi)
                    out_t.append(hp.tag)
                else:
                    out_v.append(vi)
                    out_t.append(tags[i])
                    t = di / (di - dj)
                    vj = vertices[j]
                    out_v.append((vi[0] + t * (vj[0] - vi[0]), vi[1] + t * (vj[1] - vi[1])))
                    out_t.append(hp.tag)
            else:
                out_v.append(vi)
                out_t.append(tags[i])
        elif dj < 0:
            t = di / (di - dj)
            vj = vertices[j]
            out_v.append((vi[0] + t * (vj[0] - vi[0]), vi[1] + t * (vj[1] - vi[1])))
            out_t.append(tags[i])
    return _tidy(out_v, out_t)


def _tidy(verts, tags):
    """Drop repeated and collinear vertices left behind by clipping."""
    if len(verts) < 3:
        return (), ()
    # repeated vertices: keep the later one and its outgoing tag
    v2, t2 = [], []
    m = len(verts)
    for i in range(m):
        a, b = verts[i], verts[(i + 1) % m]
        tol = _REL_TOL * (abs(a[0]) + abs(a[1]) + abs(b[0]) + abs(b[1]))
        if abs(a[0] - b[0]) <= tol and abs(a[1] - b[1]) <= tol:
            continue
        v2.append(a)
        t2.append(tags[i])
    changed = True
    while changed and len(v2) >= 3:
        changed = False
        m = len(v2)
        for i in range(m):
            p, c, n = v2[i - 1], v2[i], v2[(i + 1) % m]
            ux, uy = c[0] - p[0], c[1] - p[1]
            wx, wy = n[0] - c[0], n[1] - c[1]
            cross = ux * wy - uy * wx
            tol = _REL_TOL * (abs(c[0]) + abs(c[1]) + abs(p[0]) + abs(p[1]) + abs(n[0]) + abs(n[1]))
            if cross <= tol * (math.hypot(ux, uy) + math.hypot(wx, wy)):
                del v2[i]
                del t2[i]
                changed = True
                break
    if len(v2) < 3:
        return (), ()
    return tuple(v2), tuple(t2)


def line_intersection(h1: HalfPlane, h2: HalfPlane):
    """Intersection of the two boundary lines, or ``None`` if parallel."""
    (a1, b1), (a2, b2) = h1.normal, h2.normal
    det = a1 * b2 - a2 * b1
    if abs(det) <= 1e-12 * math.hypot(a1, b1) * math.hypot(a2, b2):
        return None
    return (h1.offset * b2 - h2.offset * b1) / det, (a1 * h2.offset - a2 * h1.offset) / det


def _refine(verts, tags, lines):
    """Recompute each vertex from the two lines supporting its edges.

    Clipping builds vertices by interpolating along long intermediate edges;
    intersecting the final supporting lines restores full local precision.
    """
    m = len(verts)
    out = list(verts)
    for i in range(m):
        h1, h2 = lines.get(tags[i - 1]), lines.get(tags[i])
        if h1 is None or h2 is None or h1 is h2:
            continue
        p = line_intersection(h1, h2)
        if p is None:
            continue
        v = verts[i]
        # only accept a nearby correction; a far one means a wrong pairing
        tol = 1e-6 * (abs(v[0]) + abs(v[1]) + 1.0)
        if abs(p[0] - v[0]) <= tol and abs(p[1] - v[1]) <= tol:
            out[i] = p
    return tuple(out)


def _finish(verts, tags, min_area, lines=None) -> ConvexPolygon:
    if len(verts) < 3:
        return EMPTY
    if lines:
        verts = _refine(verts, tags, lines)
    poly = ConvexPolygon(tuple(verts), any(is_bbox_tag(t) for t in tags), tuple(tags))
    if min_area is None:
        if is_sliver(poly.vertices):
            return EMPTY
    elif area(poly) <= min_area:
        return EMPTY
    return poly


def halfplane_intersection(
    hs: Sequence[HalfPlane], bbox: ConvexPolygon, min_area: float | None = None
) -> ConvexPolygon:
    """Clip ``bbox`` by every half-plane in turn.

    ``clipped`` is set iff a surviving edge comes from the box.  The result
    is :data:`EMPTY` when its area is at most ``min_area`` or, by default,
    when it is a noise sliver (see :func:`is_sliver`).
    """
    verts = bbox.vertices
    tags = bbox.edge_tags or tuple(("bbox", i) for i in range(len(verts)))
    lines = {h.tag: h for h in bbox.halfplanes()}
    for h in hs:
        verts, tags = _clip(verts, tags, h)
        if len(verts) < 3:
            return EMPTY
        if h.tag is not None:
            lines[h.tag] = h
    return _finish(verts, tags, min_area, lines)


def polygon_intersection(a: ConvexPolygon, b: ConvexPolygon, min_area: float | None = None) -> ConvexPolygon:
    """Convex intersection, computed by clipping the smaller polygon with the
    larger one's edges.

    By default noise slivers count as empty (see :func:`is_sliver`).
    """
    if a.is_empty or b.is_empty:
        return EMPTY
    area_a, area_b = area(a), area(b)
    if area_b < area_a:
        a, b = b, a
    verts, tags = a.vertices, a.edge_tags or (None,) * len(a)
    for h in b.halfplanes():
        verts, tags = _clip(verts, tags, h)
        if len(verts) < 3:
            return EMPTY
    return _finish(verts, tags, min_area)


def intersection_area(a: ConvexPolygon, b: ConvexPolygon) -> float:
    return area(polygon_intersection(a, b))


# ---------------------------------------------------------------------------
# Predicates


def _exact_orient(a, b, c) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (*a, *b, *c))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient2d(a, b, c, mode: str | None = None) -> int:
    """+1 if ``a, b, c`` turn counter-clockwise, -1 clockwise, 0 collinear.

    In ``robust`` mode the sign is exact (floating filter, rational fallback);
    in ``float`` mode a relative determinant below ``EPS_REL`` counts as 0.
    """
    mode = _check_mode(mode)
    left = (b[0] - a[0]) * (c[1] - a[1])
    right = (b[1] - a[1]) * (c[0] - a[0])
    det = left - right
    perm = abs(left) + abs(right)
    if mode == FLOAT:
        if abs(det) <= EPS_REL * perm:
            return 0
        return 1 if det > 0 else -1
    if abs(det) > _CCW_ERRBOUND * perm:
        return 1 if det > 0 else -1
    return _exact_orient(a, b, c)


def _incircle_terms(a, b, c, d):
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    perm = (
        (abs(bdx * cdy) + abs(cdx * bdy)) * alift
        + (abs(cdx * ady) + abs(adx * cdy)) * blift
        + (abs(adx * bdy) + abs(bdx * ady)) * clift
    )
    return det, perm


def _exact_incircle(a, b, c, d) -> int:
    a, b, c, d = ([Fraction(v) for v in p] for p in (a, b, c, d))
    det, _ = _incircle_terms(a, b, c, d)
    return (det > 0) - (det < 0)


def incircle(a, b, c, d, mode: str | None = None) -> int:
    """Sign of the in-circle determinant; positive when ``d`` is inside the
    circle through counter-clockwise ``a, b, c``; 0 when cocircular."""
    mode = _check_mode(mode)
    det, perm = _incircle_terms(a, b, c, d)
    if mode == FLOAT:
        if abs(det) <= EPS_REL * perm:
            return 0
        return 1 if det > 0 else -1
    if abs(det) > _ICC_ERRBOUND * perm:
        return 1 if det > 0 else -1
    return _exact_incircle(a, b, c, d)


def circumcenter(a, b, c) -> tuple:
    """Centre of the circle through three non-collinear points."""
    if orient2d(a, b, c, ROBUST) == 0:
        raise Collinear(f"points {a!r}, {b!r}, {c!r} are collinear")
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return a[0] + ux, a[1] + uy


def segment_intersection(a1, a2, b1, b2):
    """Intersection point of closed segments ``a1a2`` and ``b1b2``.

    Endpoint contact counts as an intersection.  Returns ``None`` when the
    segments miss; raises :class:`OverlappingSegments` for a collinear overlap
    of positive length.
    """
    rx, ry = a2[0] - a1[0], a2[1] - a1[1]
    sx, sy = b2[0] - b1[0], b2[1] - b1[1]
    qx, qy = b1[0] - a1[0], b1[1] - a1[1]
    denom = rx * sy - ry * sx
    scale = max(math.hypot(rx, ry) * math.hypot(sx, sy), 1e-300)
    if abs(denom) <= 1e-14 * scale:
        if abs(qx * ry - qy * rx) > 1e-14 * max(math.hypot(qx, qy) * math.hypot(rx, ry), 1e-300):
            return None  # parallel, distinct lines
        rr = rx * rx + ry * ry
        if rr == 0:
            return None
        t0 = (qx * rx + qy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = max(min(t0, t1), 0.0), min(max(t0, t1), 1.0)
        if hi < lo:
            return None
        if hi - lo > 1e-12:
            raise OverlappingSegments("collinear segments overlap")
        return (a1[0] + lo * rx, a1[1] + lo * ry)
    t = (qx * sy - qy * sx) / denom
    u = (qx * ry - qy * rx) / denom
    tol = 1e-12
    if -tol <= t <= 1 + tol and -tol <= u <= 1 + tol:
        t = min(max(t, 0.0), 1.0)
        return (a1[0] + t * rx, a1[1] + t * ry)
    return None


# ---------------------------------------------------------------------------
# General position


class Violation(NamedTuple):
    kind: str  # "coincident" | "collinear" | "cocircular"
    indices: tuple

    def __str__(self):
        return f"{self.kind}{list(self.indices)}"


def _combos(n, r, involving):
    if involving is None:
        return np.array(list(itertools.combinations(range(n), r)), dtype=int).reshape(-1, r)
    others = [i for i in range(n) if i != involving]
    rows = [tuple(sorted(c + (involving,))) for c in itertools.combinations(others, r - 1)]
    return np.array(rows, dtype=int).reshape(-1, r)


def validate_general_position(s: PointSet, mode: str | None = None, involving: int | None = None) -> list[Violation]:
    """List general-position violations (empty iff the set is generic).

    In the plane: coincident pairs, collinear triples, and cocircular
    quadruples (quadruples already containing a collinear triple or a
    coincident pair are not reported again).  On the line: coincident pairs
    only.  ``involving`` restricts the sweep to tuples containing that index,
    which is how a single inserted query is checked.
    """
    mode = _check_mode(mode)
    pts = s.array
    n = len(pts)
    out: list[Violation] = []
    tol_d = EPS_REL * (s.diameter or 1.0) if mode == FLOAT else 0.0

    bad_pairs = set()
    for i, j in _combos(n, 2, involving):
        if np.all(np.abs(pts[i] - pts[j]) <= tol_d):
            bad_pairs.add((int(i), int(j)))
            out.append(Violation("coincident", (int(i), int(j))))
    if s.dim == 1 or n < 3:
        return out

    def touches(idx):
        return any(p in bad_pairs for p in itertools.combinations(idx, 2))

    tri = _combos(n, 3, involving)
    bad_triples = set()
    if len(tri):
        a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
        left = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1])
        right = (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
        det, perm = left - right, np.abs(left) + np.abs(right)
        bound = (EPS_REL if mode == FLOAT else _CCW_ERRBOUND) * perm
        for r in np.nonzero(np.abs(det) <= bound)[0]:
            idx = tuple(int(v) for v in tri[r])
            if touches(idx):
                continue
            if mode == ROBUST and _exact_orient(*(s.points[v] for v in idx)) != 0:
                continue
            bad_triples.add(idx)
            out.append(Violation("collinear", idx))

    quad = _combos(n, 4, involving)
    if len(quad):
        a, b, c, d = (pts[quad[:, i]] for i in range(4))
        det, perm = _incircle_terms((a[:, 0], a[:, 1]), (b[:, 0], b[:, 1]), (c[:, 0], c[:, 1]), (d[:, 0], d[:, 1]))
        bound = (EPS_REL if mode == FLOAT else _ICC_ERRBOUND) * perm
        for r in np.nonzero(np.abs(det) <= bound)[0]:
            idx = tuple(int(v) for v in quad[r])
            if touches(idx) or any(t in bad_triples for t in itertools.combinations(idx, 3)):
                continue
            if mode == ROBUST and _exact_incircle(*(s.points[v] for v in idx)) != 0:
                continue
            out.append(Violation("cocircular", idx))
    return out
