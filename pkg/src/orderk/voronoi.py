"""Order-k Voronoi diagrams: cells, whole diagrams, regions of a site, and the
midpoint structure of the one-dimensional case.

A planar cell is built directly from its owner set ``P``: it is the box
clipped by the bisector half-planes ``H(t, u)`` for every owner ``t`` and
every non-owner ``u``.  Edge tags ``(t, u)`` record which bisector produced an
edge, so the neighbour across it has owners ``P - {t} + {u}``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import geom_core as gc
from .errors import BoundingBoxTooSmall, DegenerateInput, InvalidSubset, OrderOutOfRange

EXHAUSTIVE_LIMIT = 200_000


@dataclass(frozen=True)
class OrderKCell:
    owners: tuple
    polygon: gc.ConvexPolygon
    k: int

    @property
    def bounded(self) -> bool:
        return not self.polygon.clipped

    @property
    def area(self) -> float:
        return gc.area(self.polygon)

    def neighbours(self) -> list[tuple]:
        """Owner sets of the cells across each non-box edge."""
        out = []
        for tag in self.polygon.edge_tags:
            if gc.is_bbox_tag(tag) or tag is None:
                continue
            t, u = tag
            out.append(tuple(sorted(set(self.owners) - {t} | {u})))
        return out

    def generators(self) -> set:
        """Sites whose bisectors support an edge of the cell."""
        sites = set()
        for tag in self.polygon.edge_tags:
            if not gc.is_bbox_tag(tag) and tag is not None:
                sites.update(tag)
        return sites


@dataclass(frozen=True)
class OrderKDiagram:
    k: int
    cells: tuple
    bbox: gc.ConvexPolygon
    source: gc.PointSet = field(repr=False)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    @property
    def by_owners(self) -> dict:
        return {c.owners: c for c in self.cells}

    @property
    def total_area(self) -> float:
        return math.fsum(c.area for c in self.cells)

    def locate(self, pt):
        """The cell containing ``pt`` (boundary ties resolved arbitrarily)."""
        best, best_v = None, -math.inf
        for c in self.cells:
            v = min(-h.value(pt) for h in c.polygon.halfplanes())
            if v > best_v:
                best, best_v = c, v
        return best


@dataclass(frozen=True)
class Region:
    site: int
    k: int
    cells: tuple

    @property
    def total_area(self) -> float:
        return math.fsum(c.area for c in self.cells)

    @property
    def bounded(self) -> bool:
        return all(c.bounded for c in self.cells)

    @property
    def owner_sets(self) -> set:
        return {c.owners for c in self.cells}


# ---------------------------------------------------------------------------


def _check_planar(s: gc.PointSet):
    if s.dim != 2:
        raise ValueError("planar construction requires a 2-D point set")


def _check_order(s: gc.PointSet, k: int):
    if not 1 <= k <= s.n - 1:
        raise OrderOutOfRange(f"order k={k} outside 1..{s.n - 1}")


def _normalise_owners(s: gc.PointSet, owners, k: int | None) -> tuple:
    raw = [int(o) for o in owners]
    owners = tuple(sorted(set(raw)))
    if len(owners) != len(raw):
        raise InvalidSubset(f"owner set {tuple(raw)} repeats a site")
    if k is not None and len(owners) != k:
        raise InvalidSubset(f"owner set {owners} does not have size {k}")
    if any(o < 0 or o >= s.n for o in owners):
        raise InvalidSubset(f"owner set {owners} has an index outside 0..{s.n - 1}")
    return owners


def _truly_unbounded(s: gc.PointSet, owners: tuple) -> bool:
    """Whether the exact (unclipped) cell has a recession direction.

    The cone ``{d : (u - t) . d <= 0}`` is nontrivial iff the bisector normals
    leave an angular gap of at least pi.
    """
    pts = s.points
    out = [u for u in range(s.n) if u not in owners]
    angles = sorted(
        math.atan2(pts[u][1] - pts[t][1], pts[u][0] - pts[t][0]) for t in owners for u in out
    )
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    gaps.append(angles[0] + 2 * math.pi - angles[-1])
    return max(gaps) >= math.pi - 1e-12


def cell(s: gc.PointSet, owners, bbox: gc.ConvexPolygon | None = None, k: int | None = None):
    """The order-``|owners|`` cell of ``owners``, or :data:`geom_core.EMPTY`.

    Raises :class:`BoundingBoxTooSmall` if a cell that is bounded in the plane
    reaches the box.
    """
    _check_planar(s)
    owners = _normalise_owners(s, owners, k)
    k = len(owners)
    _check_order(s, k)
    if bbox is None:
        bbox = gc.bounding_box(s)
    pts = s.points
    out = [u for u in range(s.n) if u not in owners]
    pairs = sorted(
        ((t, u) for t in owners for u in out),
        key=lambda tu: (pts[tu[0]][0] - pts[tu[1]][0]) ** 2 + (pts[tu[0]][1] - pts[tu[1]][1]) ** 2,
    )
    # nearest bisectors first: the polygon shrinks early, which is faster and
    # keeps interpolated vertices short-range
    hs = [gc.bisector(pts[t], pts[u], (t, u)) for t, u in pairs]
    poly = gc.halfplane_intersection(hs, bbox)
    if poly.is_empty:
        return gc.EMPTY
    if poly.clipped and not _truly_unbounded(s, owners):
        raise BoundingBoxTooSmall(
            f"bounded cell {owners} reaches the bounding box; increase the box scale"
        )
    return OrderKCell(owners, poly, k)


class CellCache:
    """Memoised cell construction for one point set and box."""

    def __init__(self, s: gc.PointSet, bbox: gc.ConvexPolygon | None = None):
        _check_planar(s)
        self.s = s
        self.bbox = bbox if bbox is not None else gc.bounding_box(s)
        self._cells: dict = {}

    def get(self, owners):
        key = tuple(sorted(owners))
        try:
            return self._cells[key]
        except KeyError:
            c = cell(self.s, key, self.bbox)
            self._cells[key] = c
            return c

    def diagram(self, k: int) -> OrderKDiagram:
        d = build_diagram(self.s, k, self.bbox, check=False, cache=self)
        return d


def _exhaustive(s, k, bbox, cache):
    cells = []
    get = cache.get if cache is not None else (lambda o: cell(s, o, bbox))
    for owners in combinations(range(s.n), k):
        c = get(owners)
        if c:
            cells.append(c)
    return cells


def _seeds(s, k, bbox):
    """k-nearest owner sets at the order-1 vertices, sites and box corners."""
    arr = s.array
    probes = [tuple(v) for v in arr]
    probes.extend(bbox.vertices)
    for o in range(s.n):
        c1 = cell(s, (o,), bbox)
        if c1:
            probes.extend(c1.polygon.vertices)
    seeds = []
    for p in probes:
        d = ((arr - np.asarray(p)) ** 2).sum(axis=1)
        seeds.append(tuple(sorted(int(i) for i in np.argsort(d, kind="stable")[:k])))
    return seeds


def _flood_fill(s, k, bbox, cache):
    get = cache.get if cache is not None else (lambda o: cell(s, o, bbox))
    found = {}
    seen = set()
    queue = deque(_seeds(s, k, bbox))
    while queue:
        owners = queue.popleft()
        if owners in seen:
            continue
        seen.add(owners)
        c = get(owners)
        if not c:
            continue
        found[owners] = c  # duplicates merge on the owner key
        for nb in c.neighbours():
            if nb not in seen:
                queue.append(nb)
    return [found[o] for o in sorted(found)]


def build_diagram(
    s: gc.PointSet,
    k: int,
    bbox: gc.ConvexPolygon | None = None,
    method: str = "auto",
    check: bool = True,
    mode: str | None = None,
    cache: CellCache | None = None,
) -> OrderKDiagram:
    """All nonempty order-``k`` cells of ``s`` inside ``bbox``.

    ``method`` is ``"exhaustive"`` (every k-subset), ``"flood"`` (walk the
    cell adjacency graph from seed owner sets) or ``"auto"``, which is
    exhaustive while ``C(n, k)`` stays below :data:`EXHAUSTIVE_LIMIT`.
    """
    _check_planar(s)
    _check_order(s, k)
    if check:
        bad = gc.validate_general_position(s, mode)
        if bad:
            raise DegenerateInput(
                "point set is not in general position: " + ", ".join(map(str, bad[:5])), bad
            )
    if bbox is None:
        bbox = cache.bbox if cache is not None else gc.bounding_box(s)
    if method == "auto":
        method = "exhaustive" if comb(s.n, k) <= EXHAUSTIVE_LIMIT else "flood"
    if method == "exhaustive":
        cells = _exhaustive(s, k, bbox, cache)
    elif method == "flood":
        cells = _flood_fill(s, k, bbox, cache)
    else:
        raise ValueError(f"unknown construction method {method!r}")
    return OrderKDiagram(k, tuple(cells), bbox, s)


def region_cells(s: gc.PointSet, k: int, site: int, cache: CellCache) -> tuple:
    """Cells of V_k owning ``site``, enumerating only subsets that contain it."""
    others = [i for i in range(s.n) if i != site]
    cells = []
    for rest in combinations(others, k - 1):
        c = cache.get(rest + (site,))
        if c:
            cells.append(c)
    return tuple(cells)


def region(
    s: gc.PointSet,
    k: int,
    site: int,
    bbox: gc.ConvexPolygon | None = None,
    cache: CellCache | None = None,
    check: bool = True,
    mode: str | None = None,
) -> Region:
    """R_k(site): the union of order-k cells that have ``site`` as an owner."""
    _check_planar(s)
    _check_order(s, k)
    if not 0 <= site < s.n:
        raise InvalidSubset(f"site index {site} outside 0..{s.n - 1}")
    if check:
        bad = gc.validate_general_position(s, mode)
        if bad:
            raise DegenerateInput("point set is not in general position", bad)
    if cache is None:
        cache = CellCache(s, bbox)
    return Region(site, k, region_cells(s, k, site, cache))


def contained_in_union(poly: gc.ConvexPolygon, parts, rel_tol: float = 1e-9) -> bool:
    """Whether a convex polygon is covered by pairwise-disjoint convex parts."""
    a = gc.area(poly)
    if a == 0:
        return True
    covered = math.fsum(gc.intersection_area(poly, p) for p in parts)
    return covered >= a * (1 - rel_tol)


def region_nesting_check(
    s: gc.PointSet,
    site: int,
    kmax: int,
    bbox: gc.ConvexPolygon | None = None,
    cache: CellCache | None = None,
) -> bool:
    """True iff R_{k-1}(site) is covered by R_k(site) for every 2 <= k <= kmax."""
    if cache is None:
        cache = CellCache(s, bbox)
    prev = region(s, 1, site, cache=cache, check=False)
    for k in range(2, min(kmax, s.n - 1) + 1):
        cur = region(s, k, site, cache=cache, check=False)
        parts = [c.polygon for c in cur.cells]
        if not all(contained_in_union(c.polygon, parts) for c in prev.cells):
            return False
        prev = cur
    return True


# ---------------------------------------------------------------------------
# One dimension


def _sorted_values(s) -> list:
    if isinstance(s, gc.PointSet):
        if s.dim != 1:
            raise ValueError("expected a 1-D point set")
        xs = [p[0] for p in s.points]
    else:
        xs = [float(x) for x in s]
    return sorted(xs)


def vertices_1d(s, k: int) -> list:
    """Vertices of V_k on the line: ``(x_i + x_{i+k}) / 2`` in ascending order."""
    xs = _sorted_values(s)
    n = len(xs)
    if not 1 <= k <= n - 1:
        raise OrderOutOfRange(f"order k={k} outside 1..{n - 1}")
    return [(xs[i] + xs[i + k]) / 2 for i in range(n - k)]


def cells_1d(s, k: int) -> list:
    """Order-k cells on the line as ``(owners, lo, hi)``.

    ``owners`` index the *sorted* values; the two end cells are unbounded
    (``lo = -inf`` or ``hi = inf``).
    """
    xs = _sorted_values(s)
    n = len(xs)
    v = vertices_1d(xs, k)
    out = [(tuple(range(k)), -math.inf, v[0])]
    for i in range(len(v) - 1):
        out.append((tuple(range(i + 1, i + 1 + k)), v[i], v[i + 1]))
    out.append((tuple(range(n - k, n)), v[-1], math.inf))
    return out
