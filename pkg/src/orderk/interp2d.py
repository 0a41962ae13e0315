"""Natural-neighbour interpolation of scattered planar data.

The query is appended to the sites and expressed through its region
coordinates; the estimate is the same combination of the known values.
Order 1 is classical Sibson interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import geom_core as gc
from . import voronoi as vo
from .coordinates import WeightVector, generalized_weights
from .errors import DegenerateInsertion, OrderkError, OrderOutOfRange, UnboundedRegion


@dataclass(frozen=True)
class ScatterData:
    sites: gc.PointSet
    values: tuple

    def __post_init__(self):
        if self.sites.dim != 2:
            raise ValueError("scatter data must be planar")
        if len(self.values) != self.sites.n:
            raise ValueError("one value per site is required")

    @classmethod
    def from_arrays(cls, xy, values) -> "ScatterData":
        return cls(gc.PointSet.from_coords(xy), tuple(float(v) for v in values))


@dataclass
class InterpolationResult:
    value: float
    weights: WeightVector
    k: int
    query: tuple

    @property
    def support(self) -> list:
        return self.weights.support


class Interpolator:
    """Interpolates one query point at several orders, sharing its cells."""

    def __init__(self, data: ScatterData, q, mode: str | None = None, bbox_scale: float = gc.DEFAULT_BBOX_SCALE):
        self.data = data
        self.query = (float(q[0]), float(q[1]))
        self.augmented = data.sites.with_point(self.query)
        bad = gc.validate_general_position(self.augmented, mode, involving=data.sites.n)
        if bad:
            raise DegenerateInsertion(
                f"query {self.query} breaks general position: " + ", ".join(map(str, bad[:5])), bad
            )
        self.cache = vo.CellCache(self.augmented, gc.bounding_box(self.augmented, bbox_scale))

    def __call__(self, k: int) -> InterpolationResult:
        n_aug = self.augmented.n
        if not 1 <= k <= n_aug - 2:
            raise OrderOutOfRange(f"order k={k} outside 1..{n_aug - 2} for {n_aug - 1} sites")
        try:
            w = generalized_weights(self.augmented, k, n_aug - 1, self.cache)
        except UnboundedRegion:
            raise UnboundedRegion(
                f"order-{k} region of query {self.query} is unbounded (is it outside the convex hull?)"
            ) from None
        return InterpolationResult(w.combine(self.data.values), w, k, self.query)


def interpolate(data: ScatterData, q, k: int = 1, mode: str | None = None) -> InterpolationResult:
    """Order-``k`` natural-neighbour estimate at ``q``."""
    return Interpolator(data, q, mode)(k)


def interpolate_multi(data: ScatterData, q, klist, mode: str | None = None) -> list:
    """One result per order; a failing order yields its exception in place."""
    try:
        interp = Interpolator(data, q, mode)
    except OrderkError as exc:
        return [exc for _ in klist]
    out = []
    for k in klist:
        try:
            out.append(interp(k))
        except OrderkError as exc:
            out.append(exc)
    return out


def natural_neighbours(data: ScatterData, q, mode: str | None = None) -> list:
    """Sites whose order-1 cells (without the query) overlap the query's cell."""
    interp = Interpolator(data, q, mode)
    home = interp.cache.get((data.sites.n,))
    out = []
    for j in range(data.sites.n):
        c = vo.cell(data.sites, (j,), interp.cache.bbox)
        if c and gc.intersection_area(c.polygon, home.polygon) > 0:
            out.append(j)
    return out


__all__ = [
    "ScatterData",
    "InterpolationResult",
    "Interpolator",
    "interpolate",
    "interpolate_multi",
    "natural_neighbours",
]
