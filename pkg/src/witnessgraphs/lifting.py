"""Lifted-plane geometry: witness polyhedron, level structure, line queries.

A witness w = (a, b) lifts to the plane z = 2ax + 2by - a^2 - b^2, the
tangent plane of the paraboloid z = x^2 + y^2 at the point above w.  The
convex solid of points on or above every lifted plane encodes nearness: its
lower boundary over (x, y) sits at |(x, y)|^2 minus the squared distance to
the nearest witness, so boundary facets project exactly onto the witnesses'
Voronoi cells.  Line queries against the solid therefore answer empty-disk
questions in exact arithmetic.

Two query backends share one result format and must agree exactly:

* ``BruteForceOracle`` scans every plane on every query.
* ``Hierarchy`` keeps nested witness subsets (each level drops a low-degree
  independent set of the level's Delaunay triangulation) and refines coarse
  answers by lazy constraint discovery, locating violated planes through
  nearest-witness walks instead of scans.

The unbounded solid is stored clipped to a square box strictly larger than
every Voronoi vertex the inputs can produce; vertices created by the box are
flagged so callers can tell real features from clip artifacts.  Queries are
answered for the true unbounded solid; the box only shapes stored polygons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Callable, NamedTuple, Sequence

from . import kernel
from .counters import bump
from .errors import DegenerateInputError, WitnessGraphError
from .geometry import (
    ExactScalar,
    Point2,
    convex_hull,
    dist_sq,
    midpoint,
    orient2d,
    parse_scalar,
    scale_to_integers,
)

MISS = "MISS"
HIT = "HIT"
TANGENT = "TANGENT"
COPLANAR = "COPLANAR"
UNBOUNDED = "UNBOUNDED"

CONTACT_POINT = "POINT"
CONTACT_SEGMENT = "SEGMENT"
CONTACT_RAY = "RAY"
CONTACT_NONE = "NONE"

_BOX_TAGS = (("box", 0), ("box", 1), ("box", 2), ("box", 3))
_DEGREE_CAP = 11
_COARSE_SIZE = 8


class Point3(NamedTuple):
    x: ExactScalar
    y: ExactScalar
    z: ExactScalar


class Ray3(NamedTuple):
    base: Point3
    direction: Point3


@dataclass(frozen=True)
class LiftedPlane:
    """The plane z = 2ax + 2by - a^2 - b^2 for the source point (a, b)."""

    a: ExactScalar
    b: ExactScalar

    def height_at(self, x, y) -> ExactScalar:
        return 2 * self.a * x + 2 * self.b * y - self.a * self.a - self.b * self.b

    def lift(self, p: Point2) -> Point3:
        return Point3(p.x, p.y, self.height_at(p.x, p.y))


@dataclass(frozen=True)
class Line3:
    """Directed line base + t * direction."""

    base: Point3
    direction: Point3

    def at(self, t) -> Point3:
        b, d = self.base, self.direction
        return Point3(b.x + t * d.x, b.y + t * d.y, b.z + t * d.z)


@dataclass(frozen=True)
class LineHit:
    """Result of intersecting a directed line with the solid.

    ``t_enter``/``t_exit`` bound the parameter interval on or above every
    plane; ``None`` means the corresponding side is infinite.  Witness tuples
    name every plane passing through the respective endpoint.  For MISS all
    fields are cleared so results compare equal across backends.
    """

    kind: str
    t_enter: ExactScalar | None
    t_exit: ExactScalar | None
    enter_point: Point3 | None
    exit_point: Point3 | None
    enter_witnesses: tuple[int, ...]
    exit_witnesses: tuple[int, ...]
    coplanar_witnesses: tuple[int, ...]


@dataclass(frozen=True)
class ContactResult:
    """First contact of a translating line within a query plane.

    POINT: unique contact vertex.  SEGMENT: contact along a bounded edge
    (point/point2 are its lexicographically sorted endpoints).  RAY: the
    objective is attained but the contact face is unbounded; ``rays`` holds
    it.  NONE: the intersection is unbounded in the translation direction;
    ``rays`` holds the boundary edges bracketing the escape.
    """

    kind: str
    point: Point3 | None
    point2: Point3 | None
    rays: tuple[Ray3, ...]


@dataclass(frozen=True)
class Facet:
    plane: LiftedPlane
    ring: tuple[int, ...]  # vertex ids, counterclockwise seen from above


@dataclass(frozen=True)
class ConvexPolyhedron:
    """The solid above all lifted witness planes, clipped to a square box.

    ``facets[k]`` belongs to ``witnesses[k]`` and projects onto its Voronoi
    cell intersected with the box.  ``vertex_on_box[v]`` flags clip
    artifacts; real vertices lie on at least three facet planes.  ``edges``
    maps a sorted vertex-id pair to the facets sharing that edge.
    """

    witnesses: tuple[Point2, ...]
    planes: tuple[LiftedPlane, ...]
    facets: tuple[Facet, ...]
    vertices: tuple[Point3, ...]
    vertex_on_box: tuple[bool, ...]
    edges: dict
    box: ExactScalar
    scale: int
    scaled: tuple[tuple[int, int], ...]


# -- input coercion ----------------------------------------------------------


def _as_point(p) -> Point2:
    if isinstance(p, Point2):
        return p
    return Point2(parse_scalar(p[0]), parse_scalar(p[1]))


def _as_point3(p) -> Point3:
    if isinstance(p, Point3):
        return p
    return Point3(parse_scalar(p[0]), parse_scalar(p[1]), parse_scalar(p[2]))


def _as_line(line) -> Line3:
    if not isinstance(line, Line3):
        base, direction = line
        line = Line3(_as_point3(base), _as_point3(direction))
    d = line.direction
    if d.x == 0 and d.y == 0 and d.z == 0:
        raise ValueError("line direction must be nonzero")
    return line


# -- exact convex clipping ---------------------------------------------------


def _box_ring(box):
    ring = [Point2(-box, -box), Point2(box, -box), Point2(box, box), Point2(-box, box)]
    return ring, list(_BOX_TAGS)


def _is_box_tag(tag) -> bool:
    return isinstance(tag, tuple)


def _clip_ring(ring, tags, a, b, c, new_tag):
    """Clip a convex CCW ring to the half-plane a*x + b*y <= c.

    ``tags[i]`` labels the edge ring[i] -> ring[i+1]; edges created on the
    clip line get ``new_tag``.  Vertices exactly on the line are kept.
    """
    bump("lifting.clip")
    vals = [a * q.x + b * q.y - c for q in ring]
    if all(v <= 0 for v in vals):
        return ring, tags
    m = len(ring)
    out_q: list[Point2] = []
    out_t: list[object] = []

    def emit(q, t):
        if out_q and out_q[-1] == q:
            out_t[-1] = t
            return
        out_q.append(q)
        out_t.append(t)

    for i in range(m):
        j = (i + 1) % m
        vi, vj = vals[i], vals[j]
        if vi <= 0:
            emit(ring[i], tags[i])
            if vj > 0:
                s = vi / (vi - vj)
                x = ring[i].x + s * (ring[j].x - ring[i].x)
                y = ring[i].y + s * (ring[j].y - ring[i].y)
                emit(Point2(x, y), new_tag)
        elif vj <= 0:
            s = vi / (vi - vj)
            x = ring[i].x + s * (ring[j].x - ring[i].x)
            y = ring[i].y + s * (ring[j].y - ring[i].y)
            emit(Point2(x, y), tags[i])
    if len(out_q) >= 2 and out_q[0] == out_q[-1]:
        out_q.pop()
        out_t.pop()
    if len(out_q) < 3:
        return [], []
    return out_q, out_t


def _canon_ring(ring, tags):
    """Drop collinear ring vertices so the representation is order-invariant.

    A dropped vertex joins two edges on one support line, which always carry
    the same tag; anything else means two constraints share a line.
    """
    ring = list(ring)
    tags = list(tags)
    i = 0
    while len(ring) >= 3 and i < len(ring):
        m = len(ring)
        if orient2d(ring[(i - 1) % m], ring[i], ring[(i + 1) % m]) == 0:
            if tags[(i - 1) % m] != tags[i]:
                raise WitnessGraphError("collinear ring edges from distinct sources")
            del ring[i]
            del tags[i]
            i = 0
        else:
            i += 1
    return ring, tags


def _cell_ring(center: Point2, pts, ids, box):
    """Region of points at least as close to ``center`` as to every pts[i].

    Clipped to the box; edge tags name the witness index (or box side) whose
    bisector supports the edge.  Witnesses equal to ``center`` contribute no
    constraint.
    """
    ring, tags = _box_ring(box)
    for i in sorted(ids):
        w = pts[i]
        if w == center:
            continue
        a = 2 * (w.x - center.x)
        b = 2 * (w.y - center.y)
        c = w.x * w.x + w.y * w.y - center.x * center.x - center.y * center.y
        ring, tags = _clip_ring(ring, tags, a, b, c, i)
        if not ring:
            raise WitnessGraphError("cell clipped away entirely")
    return _canon_ring(ring, tags)


def _query_box(scaled, scale, p: Point2):
    """Box bound covering every Voronoi vertex formed by witnesses and p."""
    d = lcm(scale, p.x.denominator, p.y.denominator)
    f = d // scale
    mi = max(1, abs(int(p.x * d)), abs(int(p.y * d)))
    for q in scaled:
        mi = max(mi, abs(q[0]) * f, abs(q[1]) * f)
    return Fraction(16 * mi**3 + 16, d)


# -- polyhedron construction -------------------------------------------------


def _assemble(pts, ints, scale, box) -> ConvexPolyhedron:
    n = len(pts)
    planes = tuple(LiftedPlane(p.x, p.y) for p in pts)
    if n <= 3:
        nbrs = [[j for j in range(n) if j != k] for k in range(n)]
    else:
        tri = kernel.build_delaunay([q[0] for q in ints], [q[1] for q in ints])
        if tri.had_tie:
            raise DegenerateInputError("tie while triangulating witnesses")
        nbrs = [tri.neighbors_cycle(v)[0] for v in range(n)]
    vmap: dict[Point2, int] = {}
    vertices: list[Point3] = []
    on_box: list[bool] = []
    facets: list[Facet] = []
    edges: dict[tuple[int, int], list[int]] = {}
    for k in range(n):
        ring, _tags = _cell_ring(pts[k], pts, nbrs[k], box)
        if len(ring) < 3:
            raise WitnessGraphError("witness cell degenerated while clipping")
        pl = planes[k]
        vids = []
        for q in ring:
            vid = vmap.get(q)
            if vid is None:
                vid = len(vertices)
                vmap[q] = vid
                vertices.append(pl.lift(q))
                on_box.append(abs(q.x) == box or abs(q.y) == box)
            elif vertices[vid].z != pl.height_at(q.x, q.y):
                raise WitnessGraphError("facet planes disagree at a shared vertex")
            vids.append(vid)
        facets.append(Facet(pl, tuple(vids)))
        m = len(vids)
        for i in range(m):
            a, b = vids[i], vids[(i + 1) % m]
            key = (a, b) if a < b else (b, a)
            edges.setdefault(key, []).append(k)
    return ConvexPolyhedron(
        witnesses=tuple(pts),
        planes=planes,
        facets=tuple(facets),
        vertices=tuple(vertices),
        vertex_on_box=tuple(on_box),
        edges={k: tuple(v) for k, v in edges.items()},
        box=box,
        scale=scale,
        scaled=tuple(tuple(q) for q in ints),
    )


def build_lifted_polyhedron(witnesses: Sequence) -> ConvexPolyhedron:
    """Intersection of the upper half-spaces of all lifted witness planes.

    Witnesses must be pairwise distinct with no collinear triple and no
    cocircular quadruple; violations raise DegenerateInputError.  Needs at
    least two witnesses; two and three are handled as explicit geometry.
    """
    pts = tuple(_as_point(w) for w in witnesses)
    n = len(pts)
    if n < 2:
        raise ValueError("need at least 2 witnesses")
    ints, scale = scale_to_integers(pts)
    if n == 2:
        bad = ("duplicate", (0, 1)) if ints[0] == ints[1] else None
    else:
        bad = kernel.certify_delaunay([q[0] for q in ints], [q[1] for q in ints])
    if bad is not None:
        raise DegenerateInputError(
            f"witnesses not in general position ({bad[0]})", bad[1]
        )
    mi = max(1, max(abs(c) for q in ints for c in q))
    box = Fraction(16 * mi**3 + 16, scale)
    return _assemble(pts, ints, scale, box)


def plane_section(poly: ConvexPolyhedron, p) -> list[Point2]:
    """Projected polygon of (query plane for p) intersected with the solid.

    Equals the cell of p in the Voronoi diagram of witnesses plus p, clipped
    to a box sized for p's coordinates.
    """
    pt = _as_point(p)
    qbox = _query_box(poly.scaled, poly.scale, pt)
    ring, _ = _cell_ring(pt, poly.witnesses, range(len(poly.witnesses)), qbox)
    return ring


# -- hierarchy ----------------------------------------------------------------


@dataclass
class Level:
    ids: tuple[int, ...]
    dt: object  # kernel triangulation of the level's scaled points, or None
    local_of: dict
    base: ConvexPolyhedron  # the full solid; level solids assemble on demand
    cached: ConvexPolyhedron | None = None

    def solid(self) -> ConvexPolyhedron:
        if self.cached is None:
            if len(self.ids) == len(self.base.witnesses):
                self.cached = self.base
            else:
                pts = tuple(self.base.witnesses[i] for i in self.ids)
                ints = [self.base.scaled[i] for i in self.ids]
                self.cached = _assemble(pts, ints, self.base.scale, self.base.box)
        return self.cached


def _independent_low_degree(tri, m) -> set[int]:
    degs = [len(tri.neighbors_cycle(v)[0]) for v in range(m)]
    blocked = bytearray(m)
    drop: set[int] = set()
    for v in sorted(range(m), key=lambda v: (degs[v], v)):
        if degs[v] > _DEGREE_CAP:
            break
        if blocked[v]:
            continue
        drop.add(v)
        for u in tri.neighbors_cycle(v)[0]:
            blocked[u] = 1
    return drop


def _make_level(poly: ConvexPolyhedron, ids) -> Level:
    ints = [poly.scaled[i] for i in ids]
    dt = None
    if len(ids) > _COARSE_SIZE:
        dt = kernel.build_delaunay([q[0] for q in ints], [q[1] for q in ints])
        if dt.had_tie:
            raise DegenerateInputError("tie while triangulating a level")
    return Level(tuple(ids), dt, {g: l for l, g in enumerate(ids)}, poly)


def hierarchy_build(poly: ConvexPolyhedron):
    """Nested levels for sublinear line queries; level 0 is the full solid.

    Each level removes an independent set of vertices of degree at most 11
    from the level's Delaunay triangulation and rebuilds the smaller solid,
    stopping at 8 witnesses.  The constructed depth is checked against the
    claimed logarithmic bound.
    """
    n = len(poly.witnesses)
    ids = tuple(range(n))
    levels = [_make_level(poly, ids)]
    while len(levels[-1].ids) > _COARSE_SIZE:
        lvl = levels[-1]
        drop = _independent_low_degree(lvl.dt, len(lvl.ids))
        if not drop:
            raise WitnessGraphError("hierarchy thinning stalled")
        ids = tuple(g for l, g in enumerate(lvl.ids) if l not in drop)
        levels.append(_make_level(poly, ids))
    depth = len(levels)
    limit = max(6, 4 * n.bit_length())
    if n <= 10**4:
        limit = min(limit, 40)
    if depth > limit:
        raise WitnessGraphError(
            f"hierarchy depth {depth} exceeds bound {limit} for {n} witnesses"
        )
    return Hierarchy(poly, tuple(levels), tuple(convex_hull(poly.witnesses)))


# -- shared query plumbing -----------------------------------------------------


def _hline(scale, line: Line3):
    """Integer homogenization of a line, moved into the scaled frame.

    Scaling the plane by ``scale`` scales lifted z by its square.  Returns
    integer 3-vectors B, D and positive integers lb, mu such that the scaled
    line is traced by (B + t*D)/lb and the caller's parameter is t*mu/lb.
    Against a scaled witness (a, b) the on-or-above constraint becomes the
    all-integer al*t + be >= 0 with
      al = Dz - 2a*Dx - 2b*Dy,  be = Bz - 2a*Bx - 2b*By + (a*a + b*b)*lb.
    """
    o = line.base
    d = line.direction
    bx = o.x * scale
    by = o.y * scale
    bz = o.z * scale * scale
    dx = d.x * scale
    dy = d.y * scale
    dz = d.z * scale * scale
    lb = lcm(bx.denominator, by.denominator, bz.denominator)
    mu = lcm(dx.denominator, dy.denominator, dz.denominator)
    B = (int(bx * lb), int(by * lb), int(bz * lb))
    D = (int(dx * mu), int(dy * mu), int(dz * mu))
    return B, D, lb, mu


def _bound_t(bound, lb, mu):
    # (num, den) bound in homogenized parameters back to the caller's t
    if bound is None:
        return None
    return Fraction(bound[0] * mu, bound[1] * lb)


def _make_miss() -> LineHit:
    return LineHit(MISS, None, None, None, None, (), (), ())


def _make_hit(line, lo, hi, lo_ws, hi_ws, cop) -> LineHit:
    cop_t = tuple(sorted(cop))
    if cop_t:
        kind = COPLANAR
    elif lo is None:
        kind = UNBOUNDED
    elif hi is not None and lo == hi:
        kind = TANGENT
    else:
        kind = HIT
    # endpoint sets list every plane through the point: coplanar planes pass
    # through both, and at a tangency the two bounding families coincide
    ew = set(lo_ws) | set(cop) if lo is not None else set()
    xw = set(hi_ws) | set(cop) if hi is not None else set()
    if lo is not None and lo == hi:
        ew = xw = ew | xw
    return LineHit(
        kind,
        lo,
        hi,
        line.at(lo) if lo is not None else None,
        line.at(hi) if hi is not None else None,
        tuple(sorted(ew)),
        tuple(sorted(xw)),
        cop_t,
    )


def _frac_sqrt(f):
    if f < 0:
        return None
    a = isqrt(f.numerator)
    b = isqrt(f.denominator)
    if a * a == f.numerator and b * b == f.denominator:
        return Fraction(a, b)
    return None


def _contact_args(plane, direction):
    if isinstance(plane, LiftedPlane):
        p = Point2(plane.a, plane.b)
    else:
        p = _as_point(plane)
    dx = parse_scalar(direction[0])
    dy = parse_scalar(direction[1])
    if dx == 0 and dy == 0:
        raise ValueError("translation direction must be nonzero")
    return p, (dx, dy)


class _Violated(Exception):
    def __init__(self, witness):
        self.witness = witness


def _prim3(plane: LiftedPlane, dx, dy) -> Point3:
    l = lcm(dx.denominator, dy.denominator)
    ax = int(dx * l)
    ay = int(dy * l)
    g = gcd(abs(ax), abs(ay))
    ax //= g
    ay //= g
    return Point3(Fraction(ax), Fraction(ay), 2 * plane.a * ax + 2 * plane.b * ay)


def _ray_key(r: Ray3):
    return (*r.base, *r.direction)


def _contact_walk(ring, tags, start, step, p, pts, plane, box, probe) -> Ray3:
    """Follow box edges away from the contact run to the first witness edge.

    That edge is an unbounded true edge of the cell (it crosses the box), so
    it yields one bounding ray.  ``probe`` vets every vertex stepped onto.
    """
    n = len(ring)
    i = start
    for _ in range(n + 1):
        et = tags[i] if step > 0 else tags[(i - 1) % n]
        j = (i + step) % n
        if _is_box_tag(et):
            probe(ring[j])
            i = j
            continue
        near = ring[i]
        far = ring[j]
        probe(far)
        if abs(far.x) == box or abs(far.y) == box:
            base2 = midpoint(p, pts[et])  # edge crosses the box twice: no
            # finite endpoint exists, anchor the ray at the bisector midpoint
        else:
            base2 = far
        d = _prim3(plane, near.x - far.x, near.y - far.y)
        return Ray3(plane.lift(base2), d)
    raise WitnessGraphError("contact walk found no witness edge")


def _contact_from_ring(p, pts, d2, box, ring, tags, prober) -> ContactResult:
    plane = LiftedPlane(p.x, p.y)

    def probe(q):
        if prober is None:
            return
        w = prober(q)
        if w is not None:
            raise _Violated(w)

    def on_box(q):
        return abs(q.x) == box or abs(q.y) == box

    dx, dy = d2
    n = len(ring)
    vals = [dx * q.x + dy * q.y for q in ring]
    best = min(vals)
    flags = [v == best for v in vals]
    if all(flags):
        raise WitnessGraphError("objective constant over the contact ring")
    start = next(i for i in range(n) if flags[i] and not flags[i - 1])
    run = [start]
    while flags[(run[-1] + 1) % n]:
        run.append((run[-1] + 1) % n)
    if len(run) != sum(flags):
        raise WitnessGraphError("contact run is not contiguous")
    e_a = ring[run[0]]
    e_b = ring[run[-1]]
    probe(e_a)
    if len(run) > 1:
        probe(e_b)
    escape = False
    if len(run) == 1:
        if on_box(e_a):
            escape = True
        else:
            return ContactResult(CONTACT_POINT, plane.lift(e_a), None, ())
    else:
        inner = [tags[run[k]] for k in range(len(run) - 1)]
        box_inner = [_is_box_tag(t) for t in inner]
        if all(box_inner):
            escape = True
        elif any(box_inner):
            raise WitnessGraphError("contact run mixes box and witness edges")
        else:
            if len(set(inner)) != 1:
                raise WitnessGraphError("contact run spans multiple planes")
            w = inner[0]
            a_box, b_box = on_box(e_a), on_box(e_b)
            if not a_box and not b_box:
                p1, p2 = sorted((e_a, e_b))
                return ContactResult(
                    CONTACT_SEGMENT, plane.lift(p1), plane.lift(p2), ()
                )
            if a_box and b_box:
                # contact face is a full line; anchor at the bisector midpoint
                base = plane.lift(midpoint(p, pts[w]))
                u, v = sorted((e_a, e_b))
                d = _prim3(plane, v.x - u.x, v.y - u.y)
                dneg = Point3(-d.x, -d.y, -d.z)
                rays = tuple(sorted((Ray3(base, d), Ray3(base, dneg)), key=_ray_key))
                return ContactResult(CONTACT_RAY, base, None, rays)
            interior, outer = (e_a, e_b) if not a_box else (e_b, e_a)
            base = plane.lift(interior)
            d = _prim3(plane, outer.x - interior.x, outer.y - interior.y)
            return ContactResult(CONTACT_RAY, base, None, (Ray3(base, d),))
    if not escape:  # pragma: no cover - every branch above returns or escapes
        raise WitnessGraphError("unclassified contact")
    r1 = _contact_walk(ring, tags, run[-1], +1, p, pts, plane, box, probe)
    r2 = _contact_walk(ring, tags, run[0], -1, p, pts, plane, box, probe)
    rays = tuple(sorted({r1, r2}, key=_ray_key))
    return ContactResult(CONTACT_NONE, None, None, rays)


# -- query backends ------------------------------------------------------------


class BruteForceOracle:
    """Reference backend: every query is answered by scanning all planes."""

    def __init__(self, witnesses):
        if isinstance(witnesses, ConvexPolyhedron):
            witnesses = witnesses.witnesses
        self.witnesses = tuple(_as_point(w) for w in witnesses)
        if len(self.witnesses) < 2:
            raise ValueError("need at least 2 witnesses")
        self.planes = tuple(LiftedPlane(w.x, w.y) for w in self.witnesses)
        ints, scale = scale_to_integers(self.witnesses)
        self.scaled = tuple(tuple(q) for q in ints)
        self.scale = scale
        self._norms = tuple(a * a + b * b for a, b in self.scaled)

    def shoot_line(self, line) -> LineHit:
        line = _as_line(line)
        bump("lifting.line_query")
        B, D, lb, mu = _hline(self.scale, line)
        lo = hi = None  # (num, den) with den > 0
        lo_ws: list[int] = []
        hi_ws: list[int] = []
        cop: list[int] = []
        for i, (a, b) in enumerate(self.scaled):
            bump("lifting.line_scan")
            al = D[2] - 2 * a * D[0] - 2 * b * D[1]
            be = B[2] - 2 * a * B[0] - 2 * b * B[1] + self._norms[i] * lb
            if al == 0:
                if be == 0:
                    cop.append(i)
                elif be < 0:
                    return _make_miss()
                continue
            if al > 0:
                if lo is None or -be * lo[1] > lo[0] * al:
                    lo, lo_ws = (-be, al), [i]
                elif -be * lo[1] == lo[0] * al:
                    lo_ws.append(i)
            else:
                if hi is None or be * hi[1] < hi[0] * -al:
                    hi, hi_ws = (be, -al), [i]
                elif be * hi[1] == hi[0] * -al:
                    hi_ws.append(i)
        if lo is not None and hi is not None and lo[0] * hi[1] > hi[0] * lo[1]:
            return _make_miss()
        return _make_hit(
            line, _bound_t(lo, lb, mu), _bound_t(hi, lb, mu), lo_ws, hi_ws, cop
        )

    def first_contact(self, plane, direction) -> ContactResult:
        p, d2 = _contact_args(plane, direction)
        bump("lifting.contact_query")
        qbox = _query_box(self.scaled, self.scale, p)
        ring, tags = _cell_ring(p, self.witnesses, range(len(self.witnesses)), qbox)
        return _contact_from_ring(p, self.witnesses, d2, qbox, ring, tags, None)


class Hierarchy:
    """Query structure over nested witness subsets; built by hierarchy_build."""

    def __init__(self, poly: ConvexPolyhedron, levels, hull):
        self.poly = poly
        self.levels = levels  # levels[0] is the full polyhedron
        self.hull = hull  # counterclockwise hull of the witnesses
        self.witnesses = poly.witnesses
        self.planes = poly.planes
        self.scale = poly.scale
        self._windex = {w: i for i, w in enumerate(poly.witnesses)}
        self._norms = tuple(a * a + b * b for a, b in poly.scaled)

    # nearest-witness machinery

    def _nearest_h(self, lvl: Level, X, Y, W, seed: int):
        """Tied-nearest level witnesses to the point (X, Y)/W, W > 0.

        Walks the level triangulation greedily to a distance-minimal vertex
        (in a Delaunay triangulation a strict local minimum is the true
        nearest), then floods its tied component: tied-nearest witnesses are
        consecutive on an empty circle, hence Delaunay-connected.  All
        comparisons are on integer squared-distance numerators.
        """
        bump("lifting.nearest")
        pts = self.poly.scaled

        def d2(g):
            ex = X - W * pts[g][0]
            ey = Y - W * pts[g][1]
            return ex * ex + ey * ey

        if lvl.dt is None:
            best = None
            out: list[int] = []
            for g in lvl.ids:
                v = d2(g)
                if best is None or v < best:
                    best, out = v, [g]
                elif v == best:
                    out.append(g)
            return out
        dt = lvl.dt
        ids = lvl.ids
        cur = lvl.local_of.get(seed, 0)
        curd = d2(ids[cur])
        while True:
            nxt = None
            for nb in dt.neighbors_cycle(cur)[0]:
                v = d2(ids[nb])
                if v < curd:
                    curd, nxt = v, nb
            if nxt is None:
                break
            bump("lifting.nn_step")
            cur = nxt
        comp = {cur}
        stack = [cur]
        while stack:
            v = stack.pop()
            for nb in dt.neighbors_cycle(v)[0]:
                if nb not in comp and d2(ids[nb]) == curd:
                    comp.add(nb)
                    stack.append(nb)
        return sorted(ids[v] for v in comp)

    def _coplanar_ids(self, line: Line3):
        # A plane contains the line iff its source point solves one linear
        # and one quadratic equation; at most two rational solutions exist.
        d = line.direction
        o = line.base
        if d.x == 0 and d.y == 0:
            return ()
        r2 = o.x * o.x + o.y * o.y - o.z
        if r2 < 0:
            return ()
        den = 4 * (d.x * d.x + d.y * d.y)
        p0x = 2 * d.x * d.z / den
        p0y = 2 * d.y * d.z / den
        vx, vy = -d.y, d.x
        ex = p0x - o.x
        ey = p0y - o.y
        qa = vx * vx + vy * vy
        qb = vx * ex + vy * ey
        qc = ex * ex + ey * ey - r2
        root = _frac_sqrt(qb * qb - qa * qc)
        if root is None:
            return ()
        out = []
        for sgn in (1,) if root == 0 else (1, -1):
            t = (-qb + sgn * root) / qa
            idx = self._windex.get(Point2(p0x + t * vx, p0y + t * vy))
            if idx is not None:
                out.append(idx)
        return tuple(sorted(out))

    def _descend(self, lvl: Level, B, D, lb, cf, t, side: int, seed: int):
        """Tighten one interval endpoint against a level's witnesses.

        side +1 lowers an upper endpoint, -1 raises a lower one.  t is a
        (num, den > 0) parameter on the homogenized line.  Returns (t,
        binding witnesses, new seed), or None when the feasible interval is
        provably empty.  Each witness can bind at most once over the whole
        query, so iteration is finite.
        """
        for _ in range(len(self.witnesses) + 2):
            tn, td = t
            X = B[0] * td + tn * D[0]
            Y = B[1] * td + tn * D[1]
            binders = self._nearest_h(lvl, X, Y, lb * td, seed)
            w = binders[0]
            al, be = cf(w)
            if al * tn + be * td >= 0:
                # the nearest witness's plane holds, so the point is on or
                # above the whole envelope
                return t, binders, w
            if side > 0:
                if al >= 0:
                    return None
                t2 = (be, -al)
                if not t2[0] * td < tn * t2[1]:
                    raise WitnessGraphError("descent failed to progress")
            else:
                if al <= 0:
                    return None
                t2 = (-be, al)
                if not t2[0] * td > tn * t2[1]:
                    raise WitnessGraphError("descent failed to progress")
            bump("lifting.descent_step")
            t = t2
            seed = w
        raise WitnessGraphError("descent iteration bound exceeded")

    def shoot_line(self, line) -> LineHit:
        line = _as_line(line)
        bump("lifting.line_query")
        cop = self._coplanar_ids(line)
        B, D, lb, mu = _hline(self.scale, line)
        norms = self._norms
        lvl0 = self.levels[0]
        if D[0] == 0 and D[1] == 0:
            # vertical line: one envelope evaluation settles everything
            binders = self._nearest_h(lvl0, B[0], B[1], lb, lvl0.ids[0])
            u = Point2(line.base.x, line.base.y)
            env = self.planes[binders[0]].height_at(u.x, u.y)
            t = (env - line.base.z) / line.direction.z
            if line.direction.z > 0:
                return _make_hit(line, t, None, binders, [], cop)
            return _make_hit(line, None, t, [], binders, cop)
        smin = smax = None
        wmin = wmax = -1
        for i in self.hull:
            a, b = self.poly.scaled[i]
            s = 2 * (D[0] * a + D[1] * b)
            if smin is None or s < smin:
                smin, wmin = s, i
            if smax is None or s > smax:
                smax, wmax = s, i
        unb_lo = D[2] <= smin  # no plane rises against the direction
        unb_hi = D[2] >= smax
        scan = set(self.levels[-1].ids)
        if not unb_lo:
            scan.add(wmin)
        if not unb_hi:
            scan.add(wmax)
        lo = hi = None  # (num, den) with den > 0
        lo_ws: list[int] = []
        hi_ws: list[int] = []
        cf_cache: dict[int, tuple] = {}
        scaled = self.poly.scaled

        def cf(i):
            r = cf_cache.get(i)
            if r is None:
                a, b = scaled[i]
                r = cf_cache[i] = (
                    D[2] - 2 * a * D[0] - 2 * b * D[1],
                    B[2] - 2 * a * B[0] - 2 * b * B[1] + norms[i] * lb,
                )
            return r

        for i in sorted(scan):
            al, be = cf(i)
            if al == 0:
                if be < 0:
                    return _make_miss()
                continue
            if al > 0:
                if lo is None or -be * lo[1] > lo[0] * al:
                    lo, lo_ws = (-be, al), [i]
                elif -be * lo[1] == lo[0] * al:
                    lo_ws.append(i)
            else:
                if hi is None or be * hi[1] < hi[0] * -al:
                    hi, hi_ws = (be, -al), [i]
                elif be * hi[1] == hi[0] * -al:
                    hi_ws.append(i)
        if lo is not None and hi is not None and lo[0] * hi[1] > hi[0] * lo[1]:
            return _make_miss()
        seed = wmin if wmin >= 0 else self.levels[-1].ids[0]
        for lvl in self.levels[-2::-1]:
            if hi is not None:
                r = self._descend(lvl, B, D, lb, cf, hi, +1, seed)
                if r is None:
                    return _make_miss()
                hi, hi_ws, seed = r
            if lo is not None:
                r = self._descend(lvl, B, D, lb, cf, lo, -1, seed)
                if r is None:
                    return _make_miss()
                lo, lo_ws, seed = r
            if lo is not None and hi is not None and lo[0] * hi[1] > hi[0] * lo[1]:
                return _make_miss()
        return _make_hit(
            line, _bound_t(lo, lb, mu), _bound_t(hi, lb, mu), lo_ws, hi_ws, cop
        )

    def first_contact(self, plane, direction) -> ContactResult:
        p, d2 = _contact_args(plane, direction)
        bump("lifting.contact_query")
        qbox = _query_box(self.poly.scaled, self.scale, p)
        lvl0 = self.levels[0]
        seed = {"w": lvl0.ids[0]}
        psx = p.x * self.scale
        psy = p.y * self.scale
        dp = lcm(psx.denominator, psy.denominator)
        Px = int(psx * dp)
        Py = int(psy * dp)
        pts = self.poly.scaled

        def prober(u: Point2):
            bump("lifting.contact_probe")
            ux = u.x * self.scale
            uy = u.y * self.scale
            dq = lcm(ux.denominator, uy.denominator)
            X = int(ux * dq)
            Y = int(uy * dq)
            bw = self._nearest_h(lvl0, X, Y, dq, seed["w"])[0]
            ex = X - dq * pts[bw][0]
            ey = Y - dq * pts[bw][1]
            fx = X * dp - dq * Px
            fy = Y * dp - dq * Py
            if fx * fx + fy * fy <= (ex * ex + ey * ey) * dp * dp:
                return None
            seed["w"] = bw
            return bw

        active: set[int] = set()
        for _ in range(len(self.witnesses) + 2):
            ring, tags = _cell_ring(p, self.witnesses, active, qbox)
            try:
                return _contact_from_ring(p, self.witnesses, d2, qbox, ring, tags, prober)
            except _Violated as v:
                if v.witness in active:
                    raise WitnessGraphError("contact constraint repeated")
                active.add(v.witness)
        raise WitnessGraphError("contact iteration bound exceeded")


def shoot_line(h, line) -> LineHit:
    """First intersection data of a directed 3D line with the solid."""
    return h.shoot_line(line)


def first_contact_translating_line(h, plane, direction) -> ContactResult:
    """Contact of a line translating within ``plane`` along ``direction``.

    ``plane`` is a LiftedPlane (or its source point); the translating line
    family consists of the level sets of direction·(x, y) inside the plane,
    swept from -infinity.
    """
    return h.first_contact(plane, direction)
