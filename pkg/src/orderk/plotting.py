"""Matplotlib figures for diagrams, regions, 1-D curves and reports.

Everything renders through the Agg backend, and SVG output is made
byte-reproducible by fixing the id salt and dropping the date stamp.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

from . import geom_core as gc  # noqa: E402

PALETTE = plt.get_cmap("tab20").colors
REGION_COLOURS = ("#2c7bb6", "#abd9e9", "#fdae61", "#d7191c", "#7b3294", "#008837")
STATUS_COLOURS = {"pass": "#1a9850", "fail": "#d73027", "skip": "#999999"}


def owner_colour(owners) -> tuple:
    """Stable palette entry for an owner set."""
    key = ",".join(str(i) for i in sorted(owners)).encode()
    return PALETTE[int(hashlib.sha1(key).hexdigest(), 16) % len(PALETTE)]


def view_window(s: gc.PointSet, margin: float = 0.6) -> tuple:
    """Square around the sites, ``margin`` diameters beyond their extent."""
    a = s.array
    lo, hi = a.min(axis=0), a.max(axis=0)
    c = (lo + hi) / 2
    half = max(hi - lo) / 2 + margin * s.diameter
    return (c[0] - half, c[1] - half, c[0] + half, c[1] + half)


def _new_axes(size=(6, 6)):
    fig, ax = plt.subplots(figsize=size)
    return fig, ax


def _draw_sites(ax, s: gc.PointSet, highlight=None):
    a = s.array
    ax.plot(a[:, 0], a[:, 1], "o", color="black", ms=3, zorder=5)
    for i, (x, y) in enumerate(s.points):
        label = s.labels[i] if s.labels is not None else str(i)
        weight = "bold" if i == highlight else "normal"
        ax.annotate(label, (x, y), xytext=(3, 3), textcoords="offset points", fontsize=8, weight=weight, zorder=6)


def _frame(ax, window):
    xmin, ymin, xmax, ymax = window
    ax.set_xlim(xmin, xmax)
    ax.set_ylim(ymin, ymax)
    ax.set_aspect("equal")


def plot_diagram(diagram, window=None, owner_labels: bool = True):
    """Cells filled by owner set and labelled with their owners."""
    s = diagram.source
    window = window or view_window(s)
    view = gc.rectangle(*window)
    fig, ax = _new_axes()
    for c in diagram.cells:
        verts = np.asarray(c.polygon.vertices)
        ax.add_patch(
            PolygonPatch(verts, closed=True, facecolor=owner_colour(c.owners), edgecolor="#333333", lw=0.6, alpha=0.85)
        )
        if owner_labels:
            visible = gc.polygon_intersection(c.polygon, view)
            if visible:
                x, y = gc.interior_point(visible)
                ax.text(x, y, ",".join(map(str, c.owners)), fontsize=6, ha="center", va="center", color="#222222")
    _draw_sites(ax, s)
    _frame(ax, window)
    ax.set_title(f"order-{diagram.k} diagram, {len(diagram)} cells")
    return fig


def plot_regions(regions, s: gc.PointSet, window=None):
    """Nested regions of one site, largest order drawn first."""
    window = window or view_window(s)
    fig, ax = _new_axes()
    handles = []
    for r in sorted(regions, key=lambda r: -r.k):
        colour = REGION_COLOURS[(r.k - 1) % len(REGION_COLOURS)]
        for c in r.cells:
            ax.add_patch(PolygonPatch(np.asarray(c.polygon.vertices), closed=True, facecolor=colour, edgecolor=colour, lw=0.4))
        handles.append(plt.Rectangle((0, 0), 1, 1, color=colour, label=f"k={r.k}"))
    site = regions[0].site if regions else None
    _draw_sites(ax, s, highlight=site)
    _frame(ax, window)
    ax.legend(handles=handles[::-1], loc="upper right", fontsize=8)
    ax.set_title(f"regions of site {site}")
    return fig


def plot_curve(rows, samples=None):
    """The three 1-D estimates over one gap, with the samples as markers."""
    rows = np.asarray(rows)
    fig, ax = _new_axes((7, 4))
    for col, name in zip((1, 2, 3), ("g1", "g2", "g3")):
        ax.plot(rows[:, 0], rows[:, col], label=name, lw=1.2)
    if samples is not None:
        ax.plot(samples.xs, samples.ys, "ko", ms=4, label="samples")
    ax.set_xlabel("x")
    ax.legend(fontsize=8)
    return fig


def plot_report(report):
    """Worst residual per check against its tolerance, log scale."""
    checks = [c for c in report.checks if c.status != "skip"]
    floor = 1e-18
    fig, ax = plt.subplots(figsize=(7, 0.3 * max(len(checks), 4) + 1))
    y = np.arange(len(checks))
    vals = [max(c.max_residual, floor) for c in checks]
    ax.barh(y, vals, color=[STATUS_COLOURS[c.status] for c in checks])
    ax.plot([max(c.tolerance, floor) for c in checks], y, "k|", ms=10, label="tolerance")
    ax.set_yticks(y, [c.name for c in checks], fontsize=7)
    ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("max residual")
    ax.set_title(f"verification: {report.status}")
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    return fig


def save_figure(fig, path) -> Path:
    """Write ``fig`` (format from the suffix) and close it."""
    path = Path(path)
    with matplotlib.rc_context({"svg.hashsalt": "orderk", "svg.fonttype": "path"}):
        metadata = {"Date": None} if path.suffix.lower() == ".svg" else None
        fig.savefig(path, metadata=metadata)
    plt.close(fig)
    return path
