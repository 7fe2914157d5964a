"""Exact planar geometry over the rationals.

Coordinates are ``fractions.Fraction`` throughout the public API.  Hot loops
scale a whole configuration to integers once (``scale_to_integers``) and run
on the kernel; nothing in the package ever rounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

from . import kernel
from .errors import CollinearBaseError, DegenerateInputError

ExactScalar = Fraction


def parse_scalar(value) -> Fraction:
    """Exact scalar from int, Fraction, or string ("3", "-7/2", "1.25")."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"no exact interpretation for {type(value).__name__}: {value!r}")


class Point2(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point2:
    return Point2(parse_scalar(x), parse_scalar(y))


def dist_sq(a: Point2, b: Point2) -> Fraction:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2((a.x + b.x) / 2, (a.y + b.y) / 2)


@dataclass(frozen=True)
class Disk:
    """Closed disk given by exact center and squared radius."""

    center: Point2
    radius_sq: Fraction
    radius: Fraction | None = None  # set when the radius itself is rational

    @classmethod
    def from_radius(cls, center: Point2, radius) -> "Disk":
        r = parse_scalar(radius)
        return cls(center, r * r, r)

    def side(self, p: Point2) -> int:
        """-1 strictly inside, 0 on the boundary, +1 strictly outside."""
        d = dist_sq(self.center, p)
        return (d > self.radius_sq) - (d < self.radius_sq)


@dataclass(frozen=True)
class Square:
    """Closed axis-parallel square: lowest corner plus side length."""

    corner: Point2
    side: Fraction

    def interval_x(self) -> tuple[Fraction, Fraction]:
        return self.corner.x, self.corner.x + self.side

    def interval_y(self) -> tuple[Fraction, Fraction]:
        return self.corner.y, self.corner.y + self.side

    def contains(self, p: Point2, strict: bool = False) -> bool:
        x0, x1 = self.interval_x()
        y0, y1 = self.interval_y()
        if strict:
            return x0 < p.x < x1 and y0 < p.y < y1
        return x0 <= p.x <= x1 and y0 <= p.y <= y1

    def on_boundary(self, p: Point2) -> bool:
        return self.contains(p) and not self.contains(p, strict=True)


class PositionClass(enum.Enum):
    GENERAL_DELAUNAY = "general_delaunay"  # no 3 collinear, no 4 cocircular
    GENERAL_AXIS = "general_axis"  # all x distinct, all y distinct
    NONE = "none"


@dataclass(frozen=True)
class PointConfig:
    """A vertex set and a witness set; the same point may appear in both.

    Within each list points must be distinct.  ``position_class`` is a claim,
    checked by ``certify_position`` (generators certify before publishing).
    """

    vertices: tuple[Point2, ...]
    witnesses: tuple[Point2, ...] = ()
    position_class: PositionClass = PositionClass.NONE

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "witnesses", tuple(self.witnesses))
        for name, pts in (("vertices", self.vertices), ("witnesses", self.witnesses)):
            seen: dict[Point2, int] = {}
            for i, p in enumerate(pts):
                if p in seen:
                    raise DegenerateInputError(
                        f"repeated point in {name}", (seen[p], i)
                    )
                seen[p] = i

    def union_points(self) -> list[Point2]:
        """Vertices then witnesses, with shared points listed once."""
        out = list(self.vertices)
        vset = set(self.vertices)
        out.extend(w for w in self.witnesses if w not in vset)
        return out


def scale_to_integers(points: Sequence[Point2]) -> tuple[list[tuple[int, int]], int]:
    """Common-denominator integer coordinates: point * scale, exactly."""
    denoms = 1
    for p in points:
        denoms = lcm(denoms, p.x.denominator, p.y.denominator)
    out = []
    for p in points:
        out.append((int(p.x * denoms), int(p.y * denoms)))
    return out, denoms


def orient2d(a: Point2, b: Point2, c: Point2) -> int:
    """+1 left turn, -1 right turn, 0 collinear."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> int:
    """+1 iff d lies strictly inside the circle through a, b, c.

    Independent of the orientation of (a, b, c); collinear base raises.
    """
    o = orient2d(a, b, c)
    if o == 0:
        raise CollinearBaseError((a, b, c))
    adx = a.x - d.x
    ady = a.y - d.y
    bdx = b.x - d.x
    bdy = b.y - d.y
    cdx = c.x - d.x
    cdy = c.y - d.y
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (
        adx * (bdy * cd - cdy * bd)
        - ady * (bdx * cd - cdx * bd)
        + ad * (bdx * cdy - cdx * bdy)
    )
    det *= o
    return (det > 0) - (det < 0)


def circumcenter(a: Point2, b: Point2, c: Point2) -> Point2:
    if orient2d(a, b, c) == 0:
        raise CollinearBaseError((a, b, c))
    d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y))
    aa = a.x * a.x + a.y * a.y
    bb = b.x * b.x + b.y * b.y
    cc = c.x * c.x + c.y * c.y
    ux = aa * (b.y - c.y) + bb * (c.y - a.y) + cc * (a.y - b.y)
    uy = aa * (c.x - b.x) + bb * (a.x - c.x) + cc * (b.x - a.x)
    return Point2(ux / d, uy / d)


def circumdisk(a: Point2, b: Point2, c: Point2) -> Disk:
    z = circumcenter(a, b, c)
    return Disk(z, dist_sq(z, a))


def convex_hull(points: Sequence[Point2]) -> list[int]:
    """Indices of the strict convex hull, counterclockwise.

    Collinear boundary points are excluded.  Requires distinct points.
    """
    n = len(points)
    order = sorted(range(n), key=lambda i: points[i])
    if n == 1:
        return [order[0]]
    if n == 2:
        return order

    def chain(idxs):
        out: list[int] = []
        for i in idxs:
            while (
                len(out) >= 2
                and orient2d(points[out[-2]], points[out[-1]], points[i]) <= 0
            ):
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear
        return [order[0], order[-1]]
    return hull


@dataclass
class DelaunayTriangulation:
    """Exact Delaunay triangulation plus adjacency queries."""

    points: tuple[Point2, ...]
    _tri: object = field(repr=False)

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for a, b, c in self._tri.triangles():
            m = min(a, b, c)
            while a != m:
                a, b, c = b, c, a
            out.append((a, b, c))
        out.sort()
        return out

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for a, b, c in self._tri.triangles():
            out.add((a, b) if a < b else (b, a))
            out.add((b, c) if b < c else (c, b))
            out.add((a, c) if a < c else (c, a))
        return out

    def hull(self) -> list[int]:
        return self._tri.hull()

    def neighbors_cycle(self, v: int) -> tuple[list[int], bool]:
        return self._tri.neighbors_cycle(v)


def delaunay_triangulate(points: Sequence[Point2]) -> DelaunayTriangulation:
    """Delaunay triangulation; raises DegenerateInputError on any tie.

    Needs at least 3 points, not all collinear, all distinct.
    """
    pts = tuple(points)
    ints, _ = scale_to_integers(pts)
    px = [p[0] for p in ints]
    py = [p[1] for p in ints]
    tri = kernel.build_delaunay(px, py)
    if tri.had_tie:
        raise DegenerateInputError("cocircular or collinear tie during triangulation")
    return DelaunayTriangulation(pts, tri)


def certify_position(
    config: PointConfig, position_class: PositionClass | None = None
) -> tuple[bool, tuple | None]:
    """Check the configuration against a position class.

    Returns (True, None) or (False, (kind, offending points)).  The check
    runs over the deduplicated union of vertices and witnesses.
    """
    cls = position_class if position_class is not None else config.position_class
    if cls is PositionClass.NONE:
        return True, None
    pts = config.union_points()
    ints, _ = scale_to_integers(pts)
    px = [p[0] for p in ints]
    py = [p[1] for p in ints]
    if cls is PositionClass.GENERAL_DELAUNAY:
        bad = kernel.certify_delaunay(px, py)
    elif cls is PositionClass.GENERAL_AXIS:
        bad = kernel.certify_axis(px, py)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown position class {cls}")
    if bad is None:
        return True, None
    kind, idxs = bad
    return False, (kind, tuple(pts[i] for i in idxs))
