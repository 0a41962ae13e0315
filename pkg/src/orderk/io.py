"""Point-set files, diagram dumps and verification reports.

Point sets are CSV with ``#`` header lines::

    # dim: 2
    # n: 3
    # columns: x,y,value
    # labels: A,B,C
    0.0,0.0,1.5
    1.0,0.0,2.0
    0.25,0.75,0.5

``value`` is optional.  The same fields in a JSON object (``dim``, ``n``,
``points``, optional ``values`` and ``labels``) are accepted too.  Floats are
written with ``repr`` so files round-trip bit-exactly.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ParseError
from .geom_core import PointSet, bbox_extent

REPORT_COLUMNS = ("name", "status", "max_residual", "tolerance", "count", "note")


@dataclass
class PointSetFile:
    points: PointSet
    values: tuple | None = None

    @property
    def dim(self) -> int:
        return self.points.dim


def _float(text: str, where: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"{where}: {text!r} is not a number") from None
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value {text!r}")
    return v


def parse_csv(text: str, source: str = "<string>") -> PointSetFile:
    header = {}
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if ":" in body:
                key, _, val = body.partition(":")
                header[key.strip().lower()] = val.strip()
            continue
        cells = next(csv.reader([stripped]))
        rows.append([_float(c.strip(), f"{source}:{lineno}") for c in cells])
    if "columns" in header:
        columns = [c.strip().lower() for c in header["columns"].split(",")]
    else:
        columns = None
    if "dim" in header:
        try:
            dim = int(header["dim"])
        except ValueError:
            raise ParseError(f"{source}: bad dim {header['dim']!r}") from None
    elif columns is not None:
        dim = len([c for c in columns if c != "value"])
    elif rows:
        dim = 2 if len(rows[0]) >= 2 else 1
    else:
        raise ParseError(f"{source}: empty point set without a dim header")
    if dim not in (1, 2):
        raise ParseError(f"{source}: dim must be 1 or 2, got {dim}")
    has_value = columns is not None and "value" in columns
    width = dim + (1 if has_value else 0)
    if columns is None and rows and len(rows[0]) == dim + 1:
        has_value, width = True, dim + 1
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"{source}: row {i + 1} has {len(r)} fields, expected {width}")
    labels = None
    if "labels" in header:
        labels = tuple(x.strip() for x in header["labels"].split(","))
    return _assemble(
        [r[:dim] for r in rows],
        [r[dim] for r in rows] if has_value else None,
        labels,
        dim,
        int(header["n"]) if "n" in header else None,
        source,
    )


def _assemble(points, values, labels, dim, n, source) -> PointSetFile:
    if n is not None and n != len(points):
        raise ParseError(f"{source}: header says n={n} but {len(points)} rows were read")
    if labels is not None and len(labels) != len(points):
        raise ParseError(f"{source}: {len(labels)} labels for {len(points)} points")
    try:
        ps = PointSet(tuple(tuple(float(c) for c in p) for p in points), dim, labels)
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None
    return PointSetFile(ps, None if values is None else tuple(float(v) for v in values))


def parse_json(text: str, source: str = "<string>") -> PointSetFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or "points" not in obj:
        raise ParseError(f"{source}: expected an object with a 'points' field")
    pts = [p if isinstance(p, list) else [p] for p in obj["points"]]
    dim = int(obj.get("dim", len(pts[0]) if pts else 2))
    for i, p in enumerate(pts):
        if len(p) != dim:
            raise ParseError(f"{source}: point {i} does not have dimension {dim}")
    labels = tuple(obj["labels"]) if obj.get("labels") is not None else None
    values = obj.get("values")
    if values is not None and len(values) != len(pts):
        raise ParseError(f"{source}: {len(values)} values for {len(pts)} points")
    return _assemble(pts, values, labels, dim, obj.get("n"), source)


def load_points(path) -> PointSetFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json(text, str(path))
    return parse_csv(text, str(path))


def format_csv(f: PointSetFile) -> str:
    s = f.points
    columns = ["x", "y"][: s.dim]
    if f.values is not None:
        columns.append("value")
    lines = [f"# dim: {s.dim}", f"# n: {s.n}", f"# columns: {','.join(columns)}"]
    if s.labels is not None:
        lines.append(f"# labels: {','.join(s.labels)}")
    for i, p in enumerate(s.points):
        row = [repr(c) for c in p]
        if f.values is not None:
            row.append(repr(f.values[i]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def format_json(f: PointSetFile) -> str:
    s = f.points
    obj = {"dim": s.dim, "n": s.n, "points": [list(p) for p in s.points]}
    if f.values is not None:
        obj["values"] = list(f.values)
    if s.labels is not None:
        obj["labels"] = list(s.labels)
    return json.dumps(obj, indent=2) + "\n"


def save_points(f: PointSetFile, path) -> None:
    path = Path(path)
    text = format_json(f) if path.suffix.lower() == ".json" else format_csv(f)
    path.write_text(text)


# ---------------------------------------------------------------------------
# Diagrams


def diagram_to_dict(diagram) -> dict:
    s = diagram.source
    return {
        "k": diagram.k,
        "n": s.n,
        "bbox": list(bbox_extent(diagram.bbox)),
        "cells": [
            {
                "owners": list(c.owners),
                "bounded": c.bounded,
                "area": c.area,
                "vertices": [list(v) for v in c.polygon.vertices],
            }
            for c in diagram.cells
        ],
    }


def region_to_dict(region) -> dict:
    return {
        "site": region.site,
        "k": region.k,
        "bounded": region.bounded,
        "area": region.total_area,
        "cells": [
            {"owners": list(c.owners), "bounded": c.bounded, "area": c.area, "vertices": [list(v) for v in c.polygon.vertices]}
            for c in region.cells
        ],
    }


# ---------------------------------------------------------------------------
# Verification reports


@dataclass
class Check:
    name: str
    tolerance: float
    max_residual: float = 0.0
    count: int = 0
    skipped: str | None = None
    failures: int = 0

    def add(self, residual: float) -> None:
        self.count += 1
        if not residual <= self.tolerance:  # NaN counts as a failure
            self.failures += 1
        if math.isnan(residual) or residual > self.max_residual:
            self.max_residual = residual

    def skip(self, reason: str) -> None:
        self.skipped = reason

    @property
    def status(self) -> str:
        if self.skipped is not None and self.count == 0:
            return "skip"
        return "pass" if self.failures == 0 else "fail"


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def check(self, name: str, tolerance: float) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name, tolerance)
        self.checks.append(c)
        return c

    def merge(self, other: "VerificationReport") -> None:
        """Fold ``other``'s checks into this report, keeping first-seen order."""
        for oc in other.checks:
            c = self.check(oc.name, oc.tolerance)
            c.count += oc.count
            c.failures += oc.failures
            if oc.max_residual != oc.max_residual or oc.max_residual > c.max_residual:
                c.max_residual = oc.max_residual
            if oc.skipped is not None and c.skipped is None:
                c.skipped = oc.skipped

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "meta": self.meta,
            "checks": [dict(asdict(c), status=c.status) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for c in self.checks:
            w.writerow([c.name, c.status, repr(c.max_residual), repr(c.tolerance), c.count, c.skipped or ""])
        return buf.getvalue()

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = []
        for c in self.checks:
            if c.status == "skip":
                lines.append(f"{c.status.upper():4}  {c.name:<{width}}  skipped: {c.skipped}")
            else:
                lines.append(
                    f"{c.status.upper():4}  {c.name:<{width}}  max={c.max_residual:.3e}"
                    f"  tol={c.tolerance:.0e}  n={c.count}"
                )
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"
