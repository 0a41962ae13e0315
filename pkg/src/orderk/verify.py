"""The verification suite behind ``orderk verify``.

Each check records its worst residual against a fixed tolerance; residuals
of point reconstructions are divided by the set diameter.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import coordinates as co
from . import geom_core as gc
from . import interp1d as i1
from . import oracles
from . import voronoi as vo
from .errors import DegenerateInput, OrderkError, UnboundedCell, UnboundedRegion
from .io import VerificationReport

TOL_IDENTITY = 1e-9
TOL_EXACT = 1e-12
TOL_TILING = 1e-6
TOL_ORACLE = 1e-2


def random_point_set(n: int, rng: np.random.Generator, mode: str = gc.ROBUST, dim: int = 2) -> gc.PointSet:
    """Uniform points in the unit square (or interval), redrawn until generic."""
    while True:
        s = gc.PointSet.from_coords(rng.random((n, dim)))
        if not gc.validate_general_position(s, mode):
            return s


def random_convex_quad(rng: np.random.Generator, min_angle: float = 0.05):
    """Four points of the unit square in convex position, counter-clockwise,
    with every interior angle in ``[min_angle, pi - min_angle]`` and not
    cocircular."""
    while True:
        p = rng.random((4, 2))
        c = p.mean(axis=0)
        p = p[np.argsort(np.arctan2(p[:, 1] - c[1], p[:, 0] - c[0]))]
        q = [tuple(map(float, r)) for r in p]
        try:
            co.cot_ratio(*q, eps=min_angle)
        except OrderkError:
            continue
        return q


# ---------------------------------------------------------------------------


def check_planar_set(report: VerificationReport, s: gc.PointSet, kmax: int, grid: int | None = None, mode: str | None = None):
    """Run every planar check on one point set, accumulating into ``report``."""
    bad = gc.validate_general_position(s, mode)
    gp = report.check("general_position", 0)
    if bad:
        gp.skip("; ".join(map(str, bad[:5])))
        return False
    gp.add(0)
    n = s.n
    diam = s.diameter
    cache = vo.CellCache(s)
    kmax = min(kmax, n - 2)

    tiling = report.check("tiling", TOL_TILING)
    adjacency = report.check("adjacent_cells_differ_by_one", 0)
    flood = report.check("flood_fill_agrees", 0)
    box_area = gc.area(cache.bbox)
    diagrams = {}
    for k in range(1, min(kmax + 1, n - 1) + 1):
        d = cache.diagram(k)
        diagrams[k] = d
        tiling.add(abs(d.total_area - box_area) / box_area)
        for c in d:
            for nb in c.neighbours():
                adjacency.add(0 if len(set(nb) ^ set(c.owners)) == 2 and nb in d.by_owners else 1)
        fl = vo.build_diagram(s, k, cache.bbox, method="flood", check=False, cache=cache)
        flood.add(0 if {c.owners for c in fl} == set(d.by_owners) else 1)

    sib = report.check("sibson_reconstruction", TOL_IDENTITY)
    sib_sum = report.check("sibson_weight_sum", TOL_IDENTITY)
    removal = report.check("sibson_removal_equivalence", TOL_EXACT)
    for site in range(n):
        try:
            w = co.sibson_weights(s, site, cache)
        except UnboundedCell:
            continue
        sib.add(w.residual(s.points) / diam)
        sib_sum.add(max(abs(w.total - 1), -w.min))
        w2 = co.sibson_weights_removal(s, site, cache)
        removal.add(max(abs(w[j] - w2[j]) for j in range(n)))

    aur = report.check("aurenhammer_residual", TOL_IDENTITY)
    part = report.check("aurenhammer_partition", TOL_IDENTITY)
    diag = report.check("quad_cell_diagonal_point", TOL_IDENTITY)
    side = report.check("h_point_side_geometry", TOL_IDENTITY)
    for k in range(2, kmax + 1):
        for c in diagrams[k]:
            if not c.bounded:
                continue
            r = co.aurenhammer_identity(s, k, c, cache)
            aur.add(r.residual / diam)
            part.add(max(abs(r.lhs_area - r.area), abs(r.rhs_area - r.area)) / r.area)
            dp = co.diagonal_point(r)
            if dp is not None:
                diag.add(math.dist(dp, co.h_point(r)) / diam)
            for v in co.side_geometry(r).values():
                side.add(v)

    gen = report.check("generalized_reconstruction", TOL_IDENTITY)
    gen_sum = report.check("generalized_weight_sum", TOL_IDENTITY)
    gen1 = report.check("generalized_k1_matches_sibson", TOL_EXACT)
    ind = report.check("induction_step", TOL_IDENTITY)
    nest = report.check("region_nesting", 0)
    mono = report.check("region_area_increasing", 0)
    for site in range(n):
        areas = []
        for k in range(1, kmax + 1):
            try:
                w = co.generalized_weights(s, k, site, cache)
            except UnboundedRegion:
                break
            areas.append(w.denominator)
            gen.add(w.residual(s.points) / diam)
            gen_sum.add(max(abs(w.total - 1), -w.min))
            if k == 1:
                ws = co.sibson_weights(s, site, cache)
                gen1.add(max(abs(w[j] - ws[j]) for j in range(n)))
            else:
                ind.add(co.induction_residual(s, k, site, cache) / diam)
        mono.add(0 if all(b > a for a, b in zip(areas, areas[1:])) else 1)
        nest.add(0 if vo.region_nesting_check(s, site, kmax, cache=cache) else 1)

    if grid:
        _oracle_checks(report, s, kmax, grid, cache)
    return True


def _oracle_checks(report, s, kmax, grid, cache):
    """Compare region areas with a brute-force grid labelling.

    Bounded regions are compared whole on a grid fitted to them; every
    region, bounded or not, is also compared inside a fixed window around
    the sites.
    """
    orc = report.check("oracle_region_area", TOL_ORACLE)
    win = report.check("oracle_windowed_region_area", TOL_ORACLE)
    a = s.array
    regions = [vo.region(s, k, site, cache=cache, check=False) for k in range(1, kmax + 1) for site in range(s.n)]
    bounded = [r for r in regions if r.bounded]
    if bounded:
        verts = np.array([v for r in bounded for c in r.cells for v in c.polygon.vertices])
        lo, hi = verts.min(axis=0), verts.max(axis=0)
        ranks, cell_area = oracles.grid_ranks(a, (lo[0], lo[1], hi[0], hi[1]), grid, kmax)
        table = oracles.region_area_table(ranks, cell_area, s.n)
        for r in bounded:
            orc.add(abs(table[r.site, r.k - 1] - r.total_area) / r.total_area)
    lo, hi = a.min(axis=0), a.max(axis=0)
    half = max(hi - lo) / 2 + 0.25 * s.diameter
    c = (lo + hi) / 2
    window = (c[0] - half, c[1] - half, c[0] + half, c[1] + half)
    box = gc.rectangle(*window)
    ranks, cell_area = oracles.grid_ranks(a, window, grid, kmax)
    table = oracles.region_area_table(ranks, cell_area, s.n)
    for r in regions:
        inside = math.fsum(gc.intersection_area(c.polygon, box) for c in r.cells)
        win.add(abs(table[r.site, r.k - 1] - inside) / inside)


def check_quads(report: VerificationReport, rng: np.random.Generator, count: int):
    eq = report.check("quad_diagonal_identity", TOL_EXACT)
    cot = report.check("quad_cot_ratio", TOL_IDENTITY)
    tri = report.check("quad_circumcenter_triangles", TOL_IDENTITY)
    for _ in range(count):
        q = random_convex_quad(rng)
        p6, p7 = co.quad_identity(*q)
        h = gc.segment_intersection(q[0], q[2], q[1], q[3])
        eq.add(max(math.dist(p6, h), math.dist(p7, h)))
        rm, rf = co.quad_area_ratio(*q)
        cot.add(abs(rm - rf) / max(1.0, rf))
        for _, area_c, area_q in co.circumcenter_triangles(*q):
            tri.add(abs(area_c - rf * area_q) / max(area_c, rf * area_q))


def check_line(report: VerificationReport, rng: np.random.Generator, trials: int):
    prop = report.check("line_identity", TOL_EXACT)
    for _ in range(trials):
        m = 2 * int(rng.integers(1, 8)) + 1
        xs = rng.normal(size=m) * 10
        lhs, rhs = i1.property_line(xs)
        prop.add(abs(lhs - rhs) / max(1.0, np.abs(xs).max()))

    lem = report.check("line_vertex_interleaving", 0)
    rep = report.check("line_interpolants_reproduce_linear", TOL_EXACT)
    der = report.check("line_interpolant_derivation", TOL_EXACT)
    for _ in range(max(1, trials // 10)):
        n = int(rng.integers(6, 51))
        xs = np.sort(rng.random(n) * 10)
        for k in range(2, n - 1):
            try:
                lem.add(0 if i1.interleaving_check(xs, k) else 1)
            except DegenerateInput:
                pass
        a, b = rng.normal(size=2)
        samples = i1.Samples1D.from_arrays(xs, a * xs + b)
        lo, hi = xs[2], xs[-3]
        x = float(lo + (hi - lo) * rng.random())
        try:
            vals = (i1.g1(x, samples), i1.g2(x, samples), i1.g3(x, samples))
            scale = max(1.0, abs(a * x + b))
            rep.add(max(abs(v - (a * x + b)) for v in vals) / scale)
            der.add(max(i1.derivation_residuals(x, samples).values()) / scale)
        except OrderkError:
            pass


def _planar_job(args):
    s, kmax, grid, mode = args
    part = VerificationReport()
    ok = check_planar_set(part, s, kmax, grid, mode)
    return part, ok


def run_suite(
    sets,
    kmax: int = 4,
    seed: int = 0,
    grid: int | None = None,
    quads: int = 100,
    line_trials: int = 200,
    mode: str | None = None,
    workers: int = 1,
) -> VerificationReport:
    """Verify every set in ``sets`` plus seeded quadrilateral and 1-D checks.

    With ``workers > 1`` the planar sets are checked in separate processes;
    partial reports are merged in input order, so the result does not
    depend on the worker count.
    """
    sets = [s for s in sets if s.dim == 2]
    report = VerificationReport(meta={"kmax": kmax, "seed": seed, "grid": grid, "sets": len(sets)})
    jobs = [(s, kmax, grid, mode) for s in sets]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_planar_job, jobs))
    else:
        results = [_planar_job(j) for j in jobs]
    degenerate = 0
    for part, ok in results:
        report.merge(part)
        degenerate += not ok
    report.meta["degenerate_sets"] = degenerate
    rng = np.random.default_rng(seed)
    check_quads(report, rng, quads)
    check_line(report, rng, line_trials)
    return report
