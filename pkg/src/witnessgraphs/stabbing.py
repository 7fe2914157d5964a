"""Witness sets that silence a proximity graph, and extremal generators.

A witness set "stabs" a family of regions when every region contains a
witness; stabbing every disk (square) through two vertices makes the
corresponding negative witness graph edgeless, which is the same thing as
making every vertex distinguishable from the others by nearest-witness
queries.  ``stab_disks`` places 2n-2 witnesses (one per Delaunay triangle
near an altitude foot, one outside each hull edge), ``stab_disks_convex``
gets by with 4n/3 on convex inputs via a 3-coloring, and ``stab_squares``
stabs all axis-parallel rectangles with 2n minus a monotone-chain worth of
witnesses.  ``gen_necklace`` and ``gen_square_rows`` build the matching
lower-bound instances: many interior-disjoint regions, each needing its own
witness.  Everything is exact; every construction re-verifies itself.
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DegenerateInputError, NotConvexError, WitnessGraphError
from .geometry import (
    Disk,
    Point2,
    PointConfig,
    PositionClass,
    Square,
    certify_position,
    convex_hull,
    delaunay_triangulate,
    dist_sq,
    incircle,
    midpoint,
    orient2d,
    point,
)
from .square_graph import sg_neg_pair_oracle
from .witness_delaunay import empty_disk_through, wdg_naive

__all__ = [
    "EpsilonPolicy",
    "StabbingResult",
    "axis_epsilon",
    "gen_necklace",
    "gen_square_rows",
    "stab_delaunay_midpoints",
    "stab_disks",
    "stab_disks_convex",
    "stab_greedy",
    "stab_squares",
    "verify_discrimination",
]

# starting relative offset for "hug the target" placements
DEFAULT_DELTA = Fraction(1, 1024)


@dataclass(frozen=True)
class EpsilonPolicy:
    """Offset magnitudes used by the constructions.

    ``eps`` is a third of the smallest coordinate gap (square stabbing
    places witnesses strictly inside gaps of at least 3*eps); ``delta`` is
    the initial relative step for disk-witness placements, halved until the
    exact validity predicate holds.
    """

    eps: Fraction
    delta: Fraction = DEFAULT_DELTA


@dataclass(frozen=True)
class StabbingResult:
    """A constructed witness set together with its guaranteed size bound."""

    config: PointConfig
    witness_count: int
    bound: Fraction
    verified: bool

    def __post_init__(self):
        if self.witness_count != len(self.config.witnesses):
            raise WitnessGraphError("witness_count disagrees with the config")
        if self.witness_count > self.bound:
            raise WitnessGraphError("witness count exceeds the stated bound")


def _pts(points) -> list[Point2]:
    return [p if isinstance(p, Point2) else point(*p) for p in points]


def _require_class(pts: list[Point2], cls: PositionClass, what: str) -> None:
    ok, why = certify_position(PointConfig(pts, (), cls))
    if not ok:
        raise DegenerateInputError(f"{what} requires {cls.value} position", why)


def axis_epsilon(points, delta: Fraction = DEFAULT_DELTA) -> EpsilonPolicy:
    """A third of the smallest x- or y-gap of ``points`` (needs >= 2)."""
    pts = _pts(points)
    if len(pts) < 2:
        raise DegenerateInputError("need at least 2 points for a gap")
    xs = sorted(p.x for p in pts)
    ys = sorted(p.y for p in pts)
    gx = min(b - a for a, b in zip(xs, xs[1:]))
    gy = min(b - a for a, b in zip(ys, ys[1:]))
    if gx == 0 or gy == 0:
        raise DegenerateInputError("coordinate gap is zero")
    return EpsilonPolicy(min(gx, gy) / 3, delta)


def _ceil_sqrt(n: int) -> int:
    return 0 if n == 0 else isqrt(n - 1) + 1


# -- disks --------------------------------------------------------------


def _triangle_witness(a: Point2, b: Point2, c: Point2, delta: Fraction, tilt: int = 1) -> Point2:
    """A point inside triangle abc seeing all three sides at angle > pi/2.

    Sits near the foot of the altitude from the widest angle, nudged
    sideways off the altitude line so shrinking ``delta`` traces a
    parabola: no line through two input points can trap it for every
    ``delta``.  The foot is interior because the base angles are acute.
    """
    # widest angle is opposite the longest side
    sides = [(dist_sq(b, c), a, b, c), (dist_sq(a, c), b, a, c), (dist_sq(a, b), c, a, b)]
    _, apex, u, v = max(sides, key=lambda s: s[0])
    uv = Point2(v.x - u.x, v.y - u.y)
    ua = Point2(apex.x - u.x, apex.y - u.y)
    t = (ua.x * uv.x + ua.y * uv.y) / (uv.x * uv.x + uv.y * uv.y)
    foot = Point2(u.x + t * uv.x, u.y + t * uv.y)
    dx, dy = apex.x - foot.x, apex.y - foot.y
    s = delta
    while True:
        w = Point2(foot.x + s * dx - tilt * s * s * dy, foot.y + s * dy + tilt * s * s * dx)
        dots = [
            (u.x - w.x) * (v.x - w.x) + (u.y - w.y) * (v.y - w.y),
            (apex.x - w.x) * (u.x - w.x) + (apex.y - w.y) * (u.y - w.y),
            (apex.x - w.x) * (v.x - w.x) + (apex.y - w.y) * (v.y - w.y),
        ]
        if all(d < 0 for d in dots):
            return w
        s /= 2


def _hull_witness(p: Point2, q: Point2, delta: Fraction, tilt: int = 1) -> Point2:
    """A point just outside hull edge p->q (ccw), inside its diameter disk.

    The quadratic slide along the edge keeps it off the perpendicular
    bisector, which may pass through other input points.
    """
    m = midpoint(p, q)
    nx, ny = q.y - p.y, p.x - q.x  # outward normal for a ccw hull
    slide = tilt * delta * delta
    w = Point2(m.x + delta * nx + slide * (q.x - p.x), m.y + delta * ny + slide * (q.y - p.y))
    if (p.x - w.x) * (q.x - w.x) + (p.y - w.y) * (q.y - w.y) >= 0:
        raise WitnessGraphError("hull witness escaped the diameter disk")
    return w


def stab_disks(points) -> StabbingResult:
    """Witnesses silencing the witness Delaunay graph: exactly 2n-2 of them.

    One inside each Delaunay triangle (on an altitude, near its foot, so
    that each side is seen at an obtuse angle) and one just outside each
    hull edge; together they stab every disk drawn through a Delaunay edge,
    and disks of non-edges shrink onto Delaunay edges.
    """
    P = _pts(points)
    n = len(P)
    if n < 3:
        raise DegenerateInputError("need at least 3 points to stab disks")
    _require_class(P, PositionClass.GENERAL_DELAUNAY, "stab_disks")
    dt = delaunay_triangulate(P)
    tris = dt.triangles()
    hull = convex_hull(P)
    delta = DEFAULT_DELTA
    for _ in range(64):
        W = [_triangle_witness(P[a], P[b], P[c], delta, k + 1) for k, (a, b, c) in enumerate(tris)]
        for i, u in enumerate(hull):
            W.append(_hull_witness(P[u], P[hull[(i + 1) % len(hull)]], delta, i + 1))
        if len(W) != 2 * n - 2:
            raise WitnessGraphError("triangle plus hull count is off")
        try:
            config = PointConfig(P, W, PositionClass.GENERAL_DELAUNAY)
            verified = not wdg_naive(config).edges
        except DegenerateInputError:
            delta /= 2
            continue
        return StabbingResult(config, len(W), Fraction(2 * n - 2), verified)
    raise WitnessGraphError("could not place disk witnesses tie-free")


def _three_color(n: int, edges: set[tuple[int, int]]) -> list[int]:
    """Proper 3-coloring of a convex-polygon triangulation by ear removal."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    alive = set(range(n))
    stack: list[tuple[int, int, int]] = []
    while len(alive) > 3:
        ear = next(v for v in alive if len(adj[v]) == 2)
        u, w = adj[ear]
        stack.append((ear, u, w))
        adj[u].discard(ear)
        adj[w].discard(ear)
        adj[ear].clear()
        alive.discard(ear)
    colors = [-1] * n
    for c, v in enumerate(sorted(alive)):
        colors[v] = c
    while stack:
        ear, u, w = stack.pop()
        colors[ear] = ({0, 1, 2} - {colors[u], colors[w]}).pop()
    return colors


def stab_disks_convex(points) -> StabbingResult:
    """At most ceil(4n/3) witnesses for points in convex position.

    3-color the triangulation, drop the biggest color class, and flank each
    remaining vertex with two witnesses hugging its hull edges from the
    outside, close enough that the disk through the vertex and its two
    flankers contains no other vertex.
    """
    P = _pts(points)
    n = len(P)
    if n < 3:
        raise DegenerateInputError("need at least 3 points in convex position")
    _require_class(P, PositionClass.GENERAL_DELAUNAY, "stab_disks_convex")
    hull = convex_hull(P)
    if len(hull) != n:
        raise NotConvexError("points are not in convex position")
    dt = delaunay_triangulate(P)
    colors = _three_color(n, dt.edges())
    counts = [colors.count(c) for c in range(3)]
    skip = counts.index(max(counts))
    pos = {v: i for i, v in enumerate(hull)}
    delta = DEFAULT_DELTA
    for _ in range(64):
        W = []
        for v in range(n):
            if colors[v] == skip:
                continue
            i = pos[v]
            nxt = P[hull[(i + 1) % n]]
            prv = P[hull[(i - 1) % n]]
            W.extend(_flank_witnesses(P, v, nxt, prv, delta))
        try:
            config = PointConfig(P, W, PositionClass.GENERAL_DELAUNAY)
            verified = not wdg_naive(config).edges
        except DegenerateInputError:
            delta /= 2
            continue
        bound = Fraction(-(-4 * n // 3))
        return StabbingResult(config, len(W), bound, verified)
    raise WitnessGraphError("could not place convex disk witnesses tie-free")


def _flank_witnesses(P, v: int, nxt: Point2, prv: Point2, delta: Fraction):
    """Two witnesses outside the hull hugging v's hull edges.

    Each sits a ``delta`` step from v along its edge, pushed out by another
    factor ``delta``; both shrink until the disk through (w1, v, w2) keeps
    every other vertex strictly outside.
    """
    c = P[v]
    s = delta
    while True:
        # push along each hull edge leaving v, then off it away from the hull
        e1 = Point2(nxt.x - c.x, nxt.y - c.y)
        e2 = Point2(prv.x - c.x, prv.y - c.y)
        w1 = Point2(c.x + s * (e1.x + s * e1.y), c.y + s * (e1.y - s * e1.x))
        w2 = Point2(c.x + s * (e2.x - s * e2.y), c.y + s * (e2.y + s * e2.x))
        if orient2d(w1, c, w2) != 0 and all(
            incircle(w1, c, w2, p) < 0 for i, p in enumerate(P) if i != v
        ):
            return [w1, w2]
        s /= 2


def stab_delaunay_midpoints(points) -> StabbingResult:
    """Baseline: two witnesses beside the midpoint of every Delaunay edge.

    The pair flanks the edge, one on each side, both strictly inside the
    edge's diameter disk, so every disk through the edge contains one of
    them and the edge dies; once no Delaunay edge survives, no pair at all
    does.  Roughly 6n witnesses; kept for comparison against the 2n-2
    placement.
    """
    P = _pts(points)
    n = len(P)
    if n < 3:
        raise DegenerateInputError("need at least 3 points")
    _require_class(P, PositionClass.GENERAL_DELAUNAY, "stab_delaunay_midpoints")
    dt = delaunay_triangulate(P)
    edges = sorted(dt.edges())
    eta = Fraction(1, 8 * (len(edges) + 1))
    for _ in range(64):
        W = []
        for k, (i, j) in enumerate(edges):
            p, q = P[i], P[j]
            m = midpoint(p, q)
            t = eta * (k + 1)
            # quadratic slide along the edge keeps the pair off any fixed
            # line through the midpoint; offsets stay below |pq|/4 so both
            # land inside the diameter disk
            sx, sy = t * t * (q.x - p.x), t * t * (q.y - p.y)
            W.append(Point2(m.x + t * (q.y - p.y) + sx, m.y + t * (p.x - q.x) + sy))
            W.append(Point2(m.x - t * (q.y - p.y) + sx, m.y - t * (p.x - q.x) + sy))
        try:
            config = PointConfig(P, W, PositionClass.GENERAL_DELAUNAY)
            verified = not wdg_naive(config).edges
        except DegenerateInputError:
            eta /= 2
            continue
        return StabbingResult(config, len(W), Fraction(2 * len(edges)), verified)
    raise WitnessGraphError("could not place midpoint witnesses tie-free")


def stab_greedy(points) -> StabbingResult:
    """Greedy baseline, not matching any proven bound: repeatedly add the
    candidate witness that leaves the fewest Delaunay edges alive.

    Candidates are the 2n-2 construction's placements plus the midpoint
    baseline's; liveness of an edge is checked with the exact pencil oracle.
    """
    P = _pts(points)
    n = len(P)
    if n < 3:
        raise DegenerateInputError("need at least 3 points")
    cands = list(
        dict.fromkeys(
            stab_disks(P).config.witnesses + stab_delaunay_midpoints(P).config.witnesses
        )
    )
    dt = delaunay_triangulate(P)
    pairs = sorted(dt.edges())
    W: list[Point2] = []
    alive = set(pairs)
    while alive:
        best = None
        for c in cands:
            if c in W:
                continue
            left = sum(
                1 for i, j in alive if empty_disk_through(P[i], P[j], W + [c])
            )
            if best is None or left < best[0]:
                best = (left, c)
        if best is None:
            raise WitnessGraphError("greedy ran out of candidates")
        W.append(best[1])
        alive = {
            (i, j) for i, j in alive if empty_disk_through(P[i], P[j], W) is not None
        }
    verified = all(
        empty_disk_through(P[i], P[j], W) is None
        for i in range(n)
        for j in range(i + 1, n)
    )
    config = PointConfig(P, W, PositionClass.NONE)
    return StabbingResult(config, len(W), Fraction(len(cands)), verified)


# -- squares ------------------------------------------------------------


def _longest_monotone(pts: list[Point2]) -> tuple[list[int], bool]:
    """Longest strictly increasing or decreasing chain (by y, x-sorted).

    Returns indices into ``pts`` in x-order and whether y decreases.
    """
    order = sorted(range(len(pts)), key=lambda i: pts[i].x)

    def longest(ys):
        tails: list = []  # (y, index into order) per length
        parent = {}
        for k, y in enumerate(ys):
            j = bisect_left([t[0] for t in tails], y)
            parent[k] = tails[j - 1][1] if j else None
            if j == len(tails):
                tails.append((y, k))
            else:
                tails[j] = (y, k)
        out = []
        k = tails[-1][1] if tails else None
        while k is not None:
            out.append(k)
            k = parent[k]
        return out[::-1]

    inc = longest([pts[i].y for i in order])
    dec = longest([-pts[i].y for i in order])
    if len(inc) >= len(dec):
        return [order[k] for k in inc], False
    return [order[k] for k in dec], True


class _OffsetPool:
    """Distinct offset magnitudes strictly between eps/2 and eps."""

    def __init__(self, eps: Fraction, total: int):
        self.eps = eps
        self.total = total
        self.k = 0

    def take(self) -> Fraction:
        if self.k >= self.total:
            raise WitnessGraphError("offset pool exhausted")
        v = self.eps * Fraction(self.total + 2 + self.k, 2 * self.total + 2)
        self.k += 1
        return v


def stab_squares(points) -> StabbingResult:
    """Witnesses stabbing every axis-parallel rectangle spanned by a pair.

    A longest monotone chain leaves empty staircase boxes (one witness
    each); every other point sits in a bay and gets two witnesses in the
    quadrants facing the staircase.  All offsets are distinct and below a
    third of the smallest coordinate gap, so the combined configuration
    keeps all coordinates distinct.  Stabbing the rectangles silences the
    square graph, since a square through two points covers their rectangle.
    """
    P = _pts(points)
    n = len(P)
    if n == 0:
        raise DegenerateInputError("empty point set")
    _require_class(P, PositionClass.GENERAL_AXIS, "stab_squares")
    if n == 1:
        config = PointConfig(P, (), PositionClass.GENERAL_AXIS)
        return StabbingResult(config, 0, Fraction(1), True)
    chain, flipped = _longest_monotone(P)
    if flipped:
        mirror = [Point2(p.x, -p.y) for p in P]
        inner = stab_squares_chain(mirror, chain)
        W = [Point2(w.x, -w.y) for w in inner]
    else:
        W = stab_squares_chain(P, chain)
    if len(chain) < _ceil_sqrt(n):
        raise WitnessGraphError("monotone chain shorter than sqrt(n)")
    config = PointConfig(P, W, PositionClass.GENERAL_AXIS)
    ok, why = certify_position(config)
    if not ok:
        raise WitnessGraphError(f"witnesses broke the axis position: {why}")
    verified = not any(
        sg_neg_pair_oracle(P[i], P[j], W) for i in range(n) for j in range(i + 1, n)
    )
    bound = Fraction(2 * n - _ceil_sqrt(n))
    return StabbingResult(config, len(W), bound, verified)


def stab_squares_chain(P: list[Point2], chain: list[int]) -> list[Point2]:
    """Witness placement for an increasing chain (indices in x-order)."""
    n = len(P)
    eps = axis_epsilon(P).eps
    pool = _OffsetPool(eps, 4 * n)
    cpts = [P[i] for i in chain]
    for a, b in zip(cpts, cpts[1:]):
        if not (a.x < b.x and a.y < b.y):
            raise WitnessGraphError("chain is not increasing")
    W = []
    for a, b in zip(cpts, cpts[1:]):
        # strictly inside the empty staircase box with upper-right corner b
        W.append(Point2(b.x - pool.take(), b.y - pool.take()))
    in_chain = set(chain)
    xs = [c.x for c in cpts]
    for q in (P[i] for i in range(n) if i not in in_chain):
        k = bisect_left(xs, q.x)
        upper = (k == 0 and q.y > cpts[0].y) or (
            0 < k < len(cpts) and q.y > cpts[k].y
        )
        lower = (k == len(cpts) and q.y < cpts[-1].y) or (
            0 < k < len(cpts) and q.y < cpts[k - 1].y
        )
        if upper == lower:
            raise WitnessGraphError("point escapes both bays; chain not maximal")
        if upper:
            W.append(Point2(q.x - pool.take(), q.y - pool.take()))
            W.append(Point2(q.x + pool.take(), q.y - pool.take()))
        else:
            W.append(Point2(q.x - pool.take(), q.y + pool.take()))
            W.append(Point2(q.x - pool.take(), q.y - pool.take()))
    # the stronger stabbing claim: every spanned open rectangle is hit
    for i in range(n):
        for j in range(i + 1, n):
            x0, x1 = sorted((P[i].x, P[j].x))
            y0, y1 = sorted((P[i].y, P[j].y))
            if not any(x0 < w.x < x1 and y0 < w.y < y1 for w in W):
                raise WitnessGraphError("a spanned rectangle is unstabbed")
    return W


def verify_discrimination(result: StabbingResult, metric: str = "L2") -> bool:
    """True iff the witness graph of the result's metric family is edgeless."""
    m = metric.upper()
    P = result.config.vertices
    W = result.config.witnesses
    if m == "L2":
        return not wdg_naive(result.config).edges
    if m == "LINF":
        return not any(
            sg_neg_pair_oracle(P[i], P[j], W)
            for i in range(len(P))
            for j in range(i + 1, len(P))
        )
    raise ValueError(f"unknown metric {metric!r}")


# -- lower-bound generators ----------------------------------------------


def _necklace_cycle(n: int) -> list[tuple[Point2, Fraction]]:
    """Centers and radii of n cycle-tangent, interior-disjoint disks.

    Integer-friendly templates: a 3-4-5 triple for n=3, two rows of
    radius-2 disks capped by radius-3 disks for even n, and for odd n the
    even template with one disk split in two (an interior row disk for
    n >= 9, the left cap for n=7, a bespoke pentagon for n=5).
    """
    f = Fraction
    if n == 3:
        return [(point(0, 0), f(1)), (point(3, 0), f(2)), (point(0, 4), f(3))]
    if n == 5:
        return [
            (point(0, 0), f(3)),
            (point(5, 0), f(2)),
            (point(10, 0), f(3)),
            (point(7, 4), f(2)),
            (point(3, 4), f(2)),
        ]
    if n == 7:
        return [
            (point(0, 3), f(2)),
            (point(4, 3), f(2)),
            (point(8, 0), f(3)),
            (point(4, -3), f(2)),
            (point(0, -3), f(2)),
            (point(f(-5, 2), f(-9, 8)), f(9, 8)),
            (point(f(-5, 2), f(9, 8)), f(9, 8)),
        ]
    even = n if n % 2 == 0 else n - 1
    k = (even - 2) // 2
    cyc: list[tuple[Point2, Fraction]] = []
    for j in range(k):
        cyc.append((point(4 * j, 3), f(2)))
    cyc.append((point(4 * k, 0), f(3)))
    for j in reversed(range(k)):
        cyc.append((point(4 * j, -3), f(2)))
    cyc.append((point(-4, 0), f(3)))
    if n % 2:
        # split the second top disk; its neighbors are collinear with it
        i = 1
        c, _ = cyc[i]
        cyc[i : i + 1] = [(Point2(c.x - 1, c.y), f(1)), (Point2(c.x + 1, c.y), f(1))]
    return cyc


def gen_necklace(n: int) -> tuple[PointConfig, list[Disk]]:
    """n interior-disjoint disks in a tangent cycle; P = the contact points.

    Any witness set silencing the disk graph of P needs one witness per
    disk, so this instance forces n witnesses.
    """
    if n < 3:
        raise DegenerateInputError("a necklace needs at least 3 disks")
    cyc = _necklace_cycle(n)
    if len(cyc) != n:
        raise WitnessGraphError("necklace template size is off")
    pts = []
    for (c1, r1), (c2, r2) in zip(cyc, cyc[1:] + cyc[:1]):
        d2 = dist_sq(c1, c2)
        if d2 != (r1 + r2) ** 2:
            raise WitnessGraphError("necklace neighbors are not tangent")
        t = r1 / (r1 + r2)
        pts.append(Point2(c1.x + t * (c2.x - c1.x), c1.y + t * (c2.y - c1.y)))
    disks = [Disk.from_radius(c, r) for c, r in cyc]
    for i in range(n):
        for j in range(i + 1, n):
            ci, ri = cyc[i]
            cj, rj = cyc[j]
            if dist_sq(ci, cj) < (ri + rj) ** 2:
                raise WitnessGraphError("necklace disks overlap")
        if sum(1 for p in pts if disks[i].side(p) == 0) != 2:
            raise WitnessGraphError("disk boundary misses its two contacts")
    return PointConfig(pts, (), PositionClass.NONE), disks


def gen_square_rows(t: int) -> tuple[PointConfig, list[Square]]:
    """4t^2+t points admitting 5t^2-t interior-disjoint two-point squares.

    t rows of t basic squares, each translated down a little more than its
    left neighbor, subdivided into quarters sharing the center point; the
    four near-midpoint points are displaced clockwise so each quarter's
    boundary holds exactly two points.  Connecting squares span the gaps
    between rows.  All coordinates are integers.
    """
    if t < 2:
        raise DegenerateInputError("need at least 2 rows of squares")
    s = 512 * (t + 1) ** 3
    g = s // 2 - 32 * t * t - 8  # row gap, slightly under half a side
    sc = g + 16 * t  # connecting square side

    def v(i, j):
        return 16 * (i * t + j + 1)

    def h(i):
        return 64 * t * t * (i + 1)

    def top(i, j):
        return -i * (s + g) - v(i, j)

    pts: list[Point2] = []
    squares: list[Square] = []
    boundary_goal: list[list[Point2]] = []
    for i in range(t):
        for j in range(t):
            L = j * s + h(i)
            T = top(i, j)
            cx, cy = L + s // 2, T - s // 2
            center = point(cx, cy)
            tp = point(cx + 16 * (i * t + j + 1), T)
            bp = point(cx - 16 * t * t - 16 * (i * t + j + 1), T - s)
            pts.extend([center, tp, bp])
            left = point(L, cy + 5 if j == 0 else cy + 11)
            pts.append(left)
            right = point(L + s, cy - 5)
            if j == t - 1:
                pts.append(right)
            half = s // 2
            quarters = {
                "nw": Square(point(L, cy), half),
                "ne": Square(point(cx, cy), half),
                "sw": Square(point(L, T - s), half),
                "se": Square(point(cx, T - s), half),
            }
            partner = {"nw": left, "ne": tp, "sw": bp, "se": right}
            for key in ("nw", "ne", "sw", "se"):
                squares.append(quarters[key])
                boundary_goal.append([center, partner[key]])
    for i in range(t - 1):
        for j in range(t):
            cx = j * s + h(i) + s // 2
            bot_pt = point(cx - 16 * t * t - 16 * (i * t + j + 1), top(i, j) - s)
            top_pt = point(
                j * s + h(i + 1) + s // 2 + 16 * ((i + 1) * t + j + 1),
                top(i + 1, j),
            )
            x0 = cx + 24 * t * t - sc // 2
            squares.append(Square(point(x0, top(i + 1, j)), sc))
            boundary_goal.append([bot_pt, top_pt])
    if len(pts) != 4 * t * t + t or len(squares) != 5 * t * t - t:
        raise WitnessGraphError("square-rows counts are off")
    config = PointConfig(pts, (), PositionClass.GENERAL_AXIS)
    ok, why = certify_position(config)
    if not ok:
        raise WitnessGraphError(f"square rows broke the axis position: {why}")
    for sq, goal in zip(squares, boundary_goal):
        on = [p for p in pts if sq.on_boundary(p)]
        if sorted(on) != sorted(goal):
            raise WitnessGraphError("square boundary points are off")
    for a in range(len(squares)):
        for b in range(a + 1, len(squares)):
            ax0, ax1 = squares[a].interval_x()
            bx0, bx1 = squares[b].interval_x()
            ay0, ay1 = squares[a].interval_y()
            by0, by1 = squares[b].interval_y()
            if max(ax0, bx0) < min(ax1, bx1) and max(ay0, by0) < min(ay1, by1):
                raise WitnessGraphError("square interiors overlap")
    return config, squares
