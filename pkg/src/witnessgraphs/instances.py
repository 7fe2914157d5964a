"""Instance files and deterministic generators.

An instance file is a small JSON document naming vertices, witnesses, the
declared position class, optional metadata, and optional sidecar geometry
(disks or squares a construction promises about the points).  Coordinates
are serialized as exact rational strings, so files round-trip losslessly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import DegenerateInputError, InstanceParseError
from .geometry import (
    Disk,
    Point2,
    PointConfig,
    PositionClass,
    Square,
    certify_position,
    convex_hull,
    point,
)
from . import stabbing

FORMAT_VERSION = 1


def _scalar_str(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _parse_scalar(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceParseError(f"bad coordinate {s!r}: {exc}") from exc


def _parse_points(rows, label) -> tuple[Point2, ...]:
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise InstanceParseError(f"{label} entry {row!r} is not an [x, y] pair")
        out.append(Point2(_parse_scalar(row[0]), _parse_scalar(row[1])))
    return tuple(out)


@dataclass(frozen=True)
class InstanceFile:
    """A point configuration plus provenance and optional sidecar geometry."""

    config: PointConfig
    metadata: dict = field(default_factory=dict)
    disks: tuple[Disk, ...] = ()
    squares: tuple[Square, ...] = ()

    def to_text(self) -> str:
        doc = {
            "format": FORMAT_VERSION,
            "position_class": self.config.position_class.value,
            "vertices": [[_scalar_str(p.x), _scalar_str(p.y)] for p in self.config.vertices],
            "witnesses": [[_scalar_str(p.x), _scalar_str(p.y)] for p in self.config.witnesses],
        }
        if self.metadata:
            doc["metadata"] = self.metadata
        if self.disks:
            doc["disks"] = [
                [_scalar_str(d.center.x), _scalar_str(d.center.y), _scalar_str(d.radius_sq)]
                + ([_scalar_str(d.radius)] if d.radius is not None else [])
                for d in self.disks
            ]
        if self.squares:
            doc["squares"] = [
                [_scalar_str(s.corner.x), _scalar_str(s.corner.y), _scalar_str(s.side)]
                for s in self.squares
            ]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "InstanceFile":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceParseError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InstanceParseError("top level is not an object")
        try:
            pc = PositionClass(doc.get("position_class", "none"))
        except ValueError as exc:
            raise InstanceParseError(f"unknown position class: {exc}") from exc
        vertices = _parse_points(doc.get("vertices", []), "vertices")
        witnesses = _parse_points(doc.get("witnesses", []), "witnesses")
        config = PointConfig(vertices, witnesses, pc)
        disks = tuple(
            Disk(
                Point2(_parse_scalar(r[0]), _parse_scalar(r[1])),
                _parse_scalar(r[2]),
                _parse_scalar(r[3]) if len(r) > 3 else None,
            )
            for r in doc.get("disks", [])
        )
        squares = tuple(
            Square(Point2(_parse_scalar(r[0]), _parse_scalar(r[1])), _parse_scalar(r[2]))
            for r in doc.get("squares", [])
        )
        meta = doc.get("metadata", {})
        if not isinstance(meta, dict):
            raise InstanceParseError("metadata is not an object")
        return cls(config, meta, disks, squares)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "InstanceFile":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InstanceParseError(f"cannot read {path}: {exc}") from exc
        return cls.from_text(text)


# -- random generators -------------------------------------------------------

_COORD = 10**6


def _sample_delaunay(rng: random.Random, nv: int, nw: int, coord: int) -> PointConfig:
    for _ in range(10_000):
        seen = set()
        while len(seen) < nv + nw:
            seen.add((rng.randint(-coord, coord), rng.randint(-coord, coord)))
        pts = sorted(seen)
        rng.shuffle(pts)
        cfg = PointConfig(
            tuple(point(x, y) for x, y in pts[:nv]),
            tuple(point(x, y) for x, y in pts[nv:]),
            PositionClass.GENERAL_DELAUNAY,
        )
        ok, _ = certify_position(cfg)
        if ok:
            return cfg
    raise DegenerateInputError("could not sample a certified configuration")


def _sample_axis(rng: random.Random, nv: int, nw: int, coord: int) -> PointConfig:
    n = nv + nw
    xs = rng.sample(range(-coord, coord), n)
    ys = rng.sample(range(-coord, coord), n)
    pts = [point(x, y) for x, y in zip(xs, ys)]
    return PointConfig(tuple(pts[:nv]), tuple(pts[nv:]), PositionClass.GENERAL_AXIS)


def gen_random(
    n_vertices: int,
    n_witnesses: int,
    seed: int,
    position_class: PositionClass = PositionClass.GENERAL_DELAUNAY,
    coord: int = _COORD,
) -> InstanceFile:
    """Uniform integer points, resampled until the position class certifies."""
    rng = random.Random(seed)
    if position_class is PositionClass.GENERAL_AXIS:
        cfg = _sample_axis(rng, n_vertices, n_witnesses, coord)
    elif position_class is PositionClass.GENERAL_DELAUNAY:
        cfg = _sample_delaunay(rng, n_vertices, n_witnesses, coord)
    else:
        raise DegenerateInputError("random generator needs a real position class")
    return InstanceFile(cfg, {"generator": "random", "seed": seed})


def gen_convex(n: int, seed: int, coord: int = _COORD) -> InstanceFile:
    """n certified points in strictly convex position (no witnesses)."""
    rng = random.Random(seed)
    for _ in range(10_000):
        angles = sorted(rng.sample(range(4 * coord), n))
        pts = []
        for a in angles:
            # rational point near the circle of radius `coord`
            t = Fraction(a, 4 * coord) * 4 - 2  # tan of half-angle in [-2, 2)
            den = 1 + t * t
            pts.append(point((coord * (1 - t * t)) / den, (2 * coord * t) / den))
        pts = [Point2(Fraction(round(p.x)), Fraction(round(p.y))) for p in pts]
        if len(set(pts)) != n or len(convex_hull(pts)) != n:
            continue
        cfg = PointConfig(tuple(pts), (), PositionClass.GENERAL_DELAUNAY)
        ok, _ = certify_position(cfg)
        if ok:
            return InstanceFile(cfg, {"generator": "convex", "seed": seed})
    raise DegenerateInputError("could not sample a convex configuration")


def gen_grid(rows: int, cols: int, seed: int) -> InstanceFile:
    """Jittered grid, resampled until it certifies (a true grid never would)."""
    rng = random.Random(seed)
    step = 1000
    for _ in range(10_000):
        pts = [
            point(
                c * step + rng.randint(-step // 4, step // 4),
                r * step + rng.randint(-step // 4, step // 4),
            )
            for r in range(rows)
            for c in range(cols)
        ]
        if len(set(pts)) != rows * cols:
            continue
        cfg = PointConfig(tuple(pts), (), PositionClass.GENERAL_DELAUNAY)
        ok, _ = certify_position(cfg)
        if ok:
            return InstanceFile(cfg, {"generator": "grid", "seed": seed})
    raise DegenerateInputError("could not sample a certified grid")


# -- structured constructions ------------------------------------------------


def gen_uniqueness_gadget(values: Sequence[int]) -> InstanceFile:
    """Distinctness testing as a square-graph instance.

    Value x_i becomes the point (x_i - i/(10n), x_i + i/(10n)) and the lone
    witness sits at the origin, below and left of every point.  Equal values
    yield a slope -1 pair whose square catches the witness; distinct integer
    values only yield positive-slope pairs.  The graph is empty iff the
    values are pairwise distinct.  Values are shifted up front so the origin
    stays strictly left and below (a common shift preserves distinctness).
    """
    vals = [int(v) for v in values]
    if not vals:
        raise DegenerateInputError("need at least one value")
    n = len(vals)
    lift = max(0, 1 - min(vals))
    pts = []
    for i, v in enumerate(vals, start=1):
        off = Fraction(i, 10 * n)
        pts.append(Point2(v + lift - off, v + lift + off))
    cfg = PointConfig(tuple(pts), (point(0, 0),), PositionClass.GENERAL_AXIS)
    return InstanceFile(cfg, {"generator": "uniqueness_gadget", "values": vals})


def gen_necklace(n: int) -> InstanceFile:
    cfg, disks = stabbing.gen_necklace(n)
    return InstanceFile(cfg, {"generator": "necklace", "n": n}, disks=tuple(disks))


def gen_square_rows(t: int) -> InstanceFile:
    cfg, squares = stabbing.gen_square_rows(t)
    return InstanceFile(cfg, {"generator": "square_rows", "t": t}, squares=tuple(squares))


# A 13-vertex graph that is not 1-tough: removing the four ring vertices
# (indices 4..7) leaves the four outer corners isolated plus the center
# cluster, five components from a four-vertex cut.  Realized by witnessing
# every vertex and adding one witness outside each hull side, which kills
# the four hull edges; each corner then hangs off its ring vertex only.
_FIGURE1_VERTICES = (
    (1025, 1024), (1012, -1010), (-1037, -1034), (-1033, 1008),
    (664, 621), (632, -618), (-640, -631), (-621, 660),
    (10, -19), (79, 23), (-60, 42), (46, -41), (-27, -43),
)
_FIGURE1_EXTRA_WITNESSES = ((1039, 0), (19, -1043), (-1044, 5), (18, 1036))
FIGURE1_CUT = (4, 5, 6, 7)


def gen_figure1() -> InstanceFile:
    """Witness-Delaunay drawing of a graph no plain Delaunay graph matches."""
    verts = tuple(point(x, y) for x, y in _FIGURE1_VERTICES)
    wits = verts + tuple(point(x, y) for x, y in _FIGURE1_EXTRA_WITNESSES)
    cfg = PointConfig(verts, wits, PositionClass.GENERAL_DELAUNAY)
    return InstanceFile(cfg, {"generator": "figure1", "cut": list(FIGURE1_CUT)})
