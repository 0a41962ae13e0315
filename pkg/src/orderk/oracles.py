"""Brute-force references that share no code with the clipping path.

Everything here works on raw coordinates with numpy: grid points are
labelled by their k nearest sites, and areas are estimated by counting.
"""

from __future__ import annotations

import numpy as np


def knearest(sites: np.ndarray, queries: np.ndarray, k: int) -> np.ndarray:
    """Indices of the ``k`` nearest sites of each query, nearest first."""
    sites = np.asarray(sites, dtype=float)
    queries = np.atleast_2d(np.asarray(queries, dtype=float))
    d = ((queries[:, None, :] - sites[None, :, :]) ** 2).sum(axis=-1)
    if k < sites.shape[0]:
        part = np.argpartition(d, k - 1, axis=1)[:, :k]
    else:
        part = np.tile(np.arange(sites.shape[0]), (len(queries), 1))
    order = np.take_along_axis(d, part, axis=1).argsort(axis=1, kind="stable")
    return np.take_along_axis(part, order, axis=1)


def grid_points(window, size: int) -> tuple:
    """Cell-centre grid over ``(xmin, ymin, xmax, ymax)``; returns
    ``(points, cell_area)``."""
    xmin, ymin, xmax, ymax = window
    hx, hy = (xmax - xmin) / size, (ymax - ymin) / size
    xs = xmin + hx * (np.arange(size) + 0.5)
    ys = ymin + hy * (np.arange(size) + 0.5)
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    return np.column_stack([gx.ravel(), gy.ravel()]), hx * hy


def grid_ranks(sites, window, size: int, kmax: int, chunk: int = 250_000) -> tuple:
    """Nearest-site ranks (``size**2`` x ``kmax``) on a grid, and the cell area."""
    pts, cell_area = grid_points(window, size)
    out = np.empty((len(pts), kmax), dtype=np.int32)
    for a in range(0, len(pts), chunk):
        out[a : a + chunk] = knearest(sites, pts[a : a + chunk], kmax)
    return out, cell_area


def region_area_from_ranks(ranks: np.ndarray, cell_area: float, site: int, k: int) -> float:
    """Measure of ``{x : site among the k nearest}`` on the grid."""
    return float((ranks[:, :k] == site).any(axis=1).sum()) * cell_area


def region_area_table(ranks: np.ndarray, cell_area: float, n: int) -> np.ndarray:
    """``table[site, k-1]``: grid measure of R_k(site) for every site and k."""
    counts = np.stack([np.bincount(ranks[:, r], minlength=n) for r in range(ranks.shape[1])], axis=1)
    return np.cumsum(counts, axis=1) * cell_area


def _inside_convex(vertices, pts: np.ndarray) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    inside = np.ones(len(pts), dtype=bool)
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        cross = (b[0] - a[0]) * (pts[:, 1] - a[1]) - (b[1] - a[1]) * (pts[:, 0] - a[0])
        inside &= cross >= 0
    return inside


def monte_carlo_area(vertices, samples: int, rng: np.random.Generator, chunk: int = 500_000) -> float:
    """Hit-or-miss area estimate of a counter-clockwise convex polygon."""
    v = np.asarray(vertices, dtype=float)
    lo, hi = v.min(axis=0), v.max(axis=0)
    hits = 0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        pts = lo + (hi - lo) * rng.random((m, 2))
        hits += int(_inside_convex(v, pts).sum())
        done += m
    return float(np.prod(hi - lo)) * hits / samples


def ownership_disagreement(cells, sites, window, size: int) -> float:
    """Fraction of grid points whose brute-force k-nearest set differs from
    the owners of the cell containing them.

    ``cells`` is an iterable of ``(owners, vertices)``; grid points covered by
    no cell count as disagreements.
    """
    cells = list(cells)
    k = len(cells[0][0])
    pts, _ = grid_points(window, size)
    ranks = np.sort(knearest(sites, pts, k), axis=1)
    assigned = np.full(len(pts), -1, dtype=np.int64)
    owners_arr = np.array([sorted(o) for o, _ in cells])
    for ci, (_, verts) in enumerate(cells):
        v = np.asarray(verts, dtype=float)
        lo, hi = v.min(axis=0), v.max(axis=0)
        cand = np.nonzero(
            (pts[:, 0] >= lo[0]) & (pts[:, 0] <= hi[0]) & (pts[:, 1] >= lo[1]) & (pts[:, 1] <= hi[1])
        )[0]
        if len(cand) == 0:
            continue
        inside = cand[_inside_convex(v, pts[cand])]
        assigned[inside] = ci
    ok = assigned >= 0
    match = np.zeros(len(pts), dtype=bool)
    match[ok] = (owners_arr[assigned[ok]] == ranks[ok]).all(axis=1)
    return float(1.0 - match.mean())
