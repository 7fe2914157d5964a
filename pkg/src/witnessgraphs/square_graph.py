"""Witness square graphs.

A positive witness square graph joins two vertices when some open
axis-parallel square with both on its boundary contains at least one witness;
the negative variant asks for a square containing none.

For a pair p, q with p.x < q.x and p.y < q.y (a positive-slope pair), the
union of interiors of all admissible squares is exactly
{x > p.x, y < q.y} u {x < q.x, y > p.y}, whose complement is the closed
lower-left quadrant of p plus the closed upper-right quadrant of q.  Those two
quadrants are disjoint, so an edge exists iff

    |SW(p)| + |NE(q)| < |W|        (closed quadrant counts)

and symmetrically NW/SE for negative-slope pairs.  Both algorithms below
compute this; they differ only in how the work is organized.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from typing import Sequence

from . import counters
from .errors import DegenerateInputError
from .geometry import Point2, PointConfig, Square

Edge = tuple[int, int]


@dataclass(frozen=True)
class SquareGraphs:
    """Positive witness square graph split by pair slope."""

    n: int
    positive: frozenset[Edge]
    negative: frozenset[Edge]

    @property
    def edges(self) -> frozenset[Edge]:
        return self.positive | self.negative


def _require_axis_distinct(config: PointConfig) -> None:
    pts = config.union_points()
    for axis in (0, 1):
        seen: dict = {}
        for i, p in enumerate(pts):
            v = p[axis]
            if v in seen:
                raise DegenerateInputError(
                    "coordinate tie violates the axis position class",
                    (pts[seen[v]], p),
                )
            seen[v] = i


def _edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


class _Fenwick:
    __slots__ = ("tree", "n")

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int) -> None:
        i += 1
        while i <= self.n:
            self.tree[i] += 1
            i += i & (-i)

    def prefix(self, i: int) -> int:
        # count of inserted ranks < i
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & (-i)
        return s


def _quadrant_counts(points, witnesses):
    """Closed quadrant witness counts (SW, NW, NE, SE) for every point."""
    n = len(points)
    wy_sorted = sorted(w.y for w in witnesses)
    m = len(witnesses)
    sw = [0] * n
    nw = [0] * n
    ne = [0] * n
    se = [0] * n
    by_x = sorted(range(m), key=lambda i: witnesses[i].x)
    p_by_x = sorted(range(n), key=lambda i: points[i].x)

    fen = _Fenwick(m)
    wi = 0
    for pi in p_by_x:
        p = points[pi]
        while wi < m and witnesses[by_x[wi]].x <= p.x:
            fen.add(bisect_left(wy_sorted, witnesses[by_x[wi]].y))
            wi += 1
        le = fen.prefix(bisect_right(wy_sorted, p.y))  # y <= p.y
        lt = fen.prefix(bisect_left(wy_sorted, p.y))  # y < p.y
        sw[pi] = le
        nw[pi] = wi - lt

    fen = _Fenwick(m)
    wi = m - 1
    for pi in reversed(p_by_x):
        p = points[pi]
        while wi >= 0 and witnesses[by_x[wi]].x >= p.x:
            fen.add(bisect_left(wy_sorted, witnesses[by_x[wi]].y))
            wi -= 1
        inserted = m - 1 - wi
        le = fen.prefix(bisect_right(wy_sorted, p.y))
        lt = fen.prefix(bisect_left(wy_sorted, p.y))
        se[pi] = le
        ne[pi] = inserted - lt
    return sw, nw, ne, se


def sg_pos_naive(config: PointConfig) -> SquareGraphs:
    """Positive witness square graph, every pair tested directly."""
    _require_axis_distinct(config)
    points = config.vertices
    witnesses = config.witnesses
    n = len(points)
    m = len(witnesses)
    sw, nw, ne, se = _quadrant_counts(points, witnesses)
    pos = set()
    neg = set()
    for i in range(n):
        pi = points[i]
        for j in range(i + 1, n):
            pj = points[j]
            counters.bump("sg_pos_naive_pairs")
            s, t = (i, j) if pi.x < pj.x else (j, i)
            if points[s].y < points[t].y:
                if sw[s] + ne[t] < m:
                    pos.add((i, j))
            else:
                if nw[s] + se[t] < m:
                    neg.add((i, j))
    return SquareGraphs(n, frozenset(pos), frozenset(neg))


def _run_sweep(run: list[tuple], right_min, left_max, out: set) -> None:
    """Within-run reporting for positive-slope pairs.

    ``run`` holds (y, index) in ascending x order.  A pair (p, q), p before q,
    is an edge iff q.y > right_min or p.y < left_max; no witness lies between
    them in x, so the only admissible witnesses sit beyond the whole run.
    """
    alive: list[tuple] = []
    for y, idx in run:
        if right_min is not None and y > right_min:
            tau = y
        elif left_max is None:
            tau = None
        else:
            tau = min(y, left_max)
        if tau is not None:
            k = bisect_left(alive, (tau,))
            counters.bump("sg_pos_sensitive_ops", max(1, k.bit_length()))
            for py, pidx in alive[:k]:
                out.add(_edge(pidx, idx))
                counters.bump("sg_pos_sensitive_ops")
        insort(alive, (y, idx))
        counters.bump("sg_pos_sensitive_ops", max(1, len(alive).bit_length()))


def sg_pos_sensitive(config: PointConfig) -> SquareGraphs:
    """Positive witness square graph, output-sensitive.

    Splits the x-order of vertices into runs at witness x-coordinates.  Any
    pair spanning a witness in x is an edge outright (that witness lies in one
    of the two open regions for either slope).  Within a run only the nearest
    witness levels beyond the run matter, and the per-run sweep reports
    exactly the qualifying predecessors.
    """
    _require_axis_distinct(config)
    points = config.vertices
    witnesses = config.witnesses
    n = len(points)
    m = len(witnesses)

    p_by_x = sorted(range(n), key=lambda i: points[i].x)
    wx = sorted(w.x for w in witnesses)
    w_by_x = sorted(witnesses, key=lambda w: w.x)
    counters.bump("sg_pos_sensitive_ops", (n + m) * max(1, (n + m).bit_length()))

    # prefix_max[i]: max y among the i leftmost witnesses; suffix_min likewise
    prefix_max = [None] * (m + 1)
    for i, w in enumerate(w_by_x):
        prev = prefix_max[i]
        prefix_max[i + 1] = w.y if prev is None or w.y > prev else prev
        counters.bump("sg_pos_sensitive_ops")
    suffix_min = [None] * (m + 1)
    for i in range(m - 1, -1, -1):
        prev = suffix_min[i + 1]
        wy = w_by_x[i].y
        suffix_min[i] = wy if prev is None or wy < prev else prev
    prefix_min = [None] * (m + 1)
    for i, w in enumerate(w_by_x):
        prev = prefix_min[i]
        prefix_min[i + 1] = w.y if prev is None or w.y < prev else prev
    suffix_max = [None] * (m + 1)
    for i in range(m - 1, -1, -1):
        prev = suffix_max[i + 1]
        wy = w_by_x[i].y
        suffix_max[i] = wy if prev is None or wy > prev else prev

    runs: list[list[int]] = []
    cur: list[int] = []
    wi = 0
    for pi in p_by_x:
        x = points[pi].x
        crossed = False
        while wi < m and wx[wi] < x:
            wi += 1
            crossed = True
        counters.bump("sg_pos_sensitive_ops")
        if crossed and cur:
            runs.append(cur)
            cur = []
        cur.append(pi)
    if cur:
        runs.append(cur)

    pos: set[Edge] = set()
    neg: set[Edge] = set()

    # cross-run pairs are all edges; classify each by slope
    for ra in range(len(runs)):
        for rb in range(ra + 1, len(runs)):
            for ia in runs[ra]:
                ya = points[ia].y
                for ib in runs[rb]:
                    counters.bump("sg_pos_sensitive_ops")
                    (pos if ya < points[ib].y else neg).add(_edge(ia, ib))

    for run in runs:
        x_lo = points[run[0]].x
        x_hi = points[run[-1]].x
        li = bisect_left(wx, x_lo)
        ri = bisect_right(wx, x_hi)
        run_pos = [(points[pi].y, pi) for pi in run]
        _run_sweep(run_pos, suffix_min[ri], prefix_max[li], pos)
        # negative slope: reflect y, so the witness extrema swap and negate
        left_max_r = None if prefix_min[li] is None else -prefix_min[li]
        right_min_r = None if suffix_max[ri] is None else -suffix_max[ri]
        run_neg = [(-points[pi].y, pi) for pi in run]
        _run_sweep(run_neg, right_min_r, left_max_r, neg)

    return SquareGraphs(n, frozenset(pos), frozenset(neg))


def sg_pos_pair_oracle(p: Point2, q: Point2, witnesses: Sequence[Point2]) -> bool:
    """Direct scan deciding one positive-square-graph pair.

    Requires p, q with distinct x and distinct y; witnesses arbitrary.
    """
    if p.x > q.x:
        p, q = q, p
    if p.y < q.y:
        for w in witnesses:
            if (w.x > p.x and w.y < q.y) or (w.x < q.x and w.y > p.y):
                return True
        return False
    for w in witnesses:
        if (w.x > p.x and w.y > q.y) or (w.x < q.x and w.y < p.y):
            return True
    return False


def sg_pos_certificate(p: Point2, q: Point2, witnesses: Sequence[Point2]):
    """An explicit square through p and q with a witness strictly inside.

    None when the pair is not an edge.  The square pins two of its sides to
    the coordinates of p and q and grows until the witness fits.
    """
    if p.x > q.x:
        p, q = q, p
    up = p.y < q.y  # positive-slope pair
    for w in witnesses:
        lo_y, hi_y = (p.y, q.y) if up else (q.y, p.y)
        if w.x > p.x and (w.y < q.y if up else w.y > q.y):
            # left side on p, far horizontal side on q
            s = max(q.x - p.x, hi_y - lo_y, w.x - p.x, (q.y - w.y) if up else (w.y - q.y)) + 1
            corner_y = q.y - s if up else q.y
            return Square(Point2(p.x, corner_y), s)
        if w.x < q.x and (w.y > p.y if up else w.y < p.y):
            # right side on q, near horizontal side on p
            s = max(q.x - p.x, hi_y - lo_y, q.x - w.x, (w.y - p.y) if up else (p.y - w.y)) + 1
            corner_y = p.y if up else p.y - s
            return Square(Point2(q.x - s, corner_y), s)
    return None


# -- negative witness squares ------------------------------------------------


def _free_value(lo, hi, intervals):
    """Some point of [lo, hi] outside every open interval, or None.

    ``intervals`` must be sorted by left endpoint.
    """
    if lo > hi:
        return None
    x = lo
    for a, b in intervals:
        if b <= x:
            continue
        if a >= x:
            return x  # free: later intervals start even further right
        x = b  # open interval: its right endpoint is a candidate
        if x > hi:
            return None
    return x


def _scan_free_point(lo, hi, intervals) -> bool:
    """Is some point of [lo, hi] outside every open interval?"""
    return _free_value(lo, hi, intervals) is not None


def sg_neg_pair_oracle(p: Point2, q: Point2, witnesses: Sequence[Point2]) -> bool:
    """True iff some open axis-parallel square through p and q avoids all
    witnesses.

    Works for arbitrary witness positions (ties allowed); only p and q need
    distinct x and distinct y.  The four boundary-contact families:

    * p left edge / q top edge: squares [0,s] x [b-s,b], s >= max(a,b); a
      witness with wx > 0, wy < b blocks every s > max(wx, b-wy), so the
      family survives iff that max stays >= max(a,b) for all such witnesses.
    * p bottom / q right: mirror image, squares [a-s,a] x [0,s].
    * p left / q right: side exactly a (needs a >= b), bottom edge y0 ranges
      over [b-a, 0]; each witness with 0 < wx < a forbids the open interval
      (wy - a, wy) of y0 values.
    * p bottom / q top: mirror with side b.

    Coordinates above are pair-canonical: p at the origin, q = (a, b) with
    a, b > 0 after reflections.
    """
    if p.x > q.x:
        p, q = q, p
    sy = 1 if q.y > p.y else -1
    a = q.x - p.x
    b = sy * (q.y - p.y)
    s_min = a if a > b else b
    ws = [(w.x - p.x, sy * (w.y - p.y)) for w in witnesses]

    ok = True
    for wx, wy in ws:
        if wx > 0 and wy < b:
            t = wx if wx > b - wy else b - wy
            if t < s_min:
                ok = False
                break
    if ok:
        return True
    ok = True
    for wx, wy in ws:
        if wy > 0 and wx < a:
            t = wy if wy > a - wx else a - wx
            if t < s_min:
                ok = False
                break
    if ok:
        return True
    if a >= b:
        blockers = sorted((wy - a, wy) for wx, wy in ws if 0 < wx < a)
        if _scan_free_point(b - a, 0, blockers):
            return True
    if b >= a:
        blockers = sorted((wx - b, wx) for wx, wy in ws if 0 < wy < b)
        if _scan_free_point(a - b, 0, blockers):
            return True
    return False


def sg_neg_certificate(p: Point2, q: Point2, witnesses: Sequence[Point2]):
    """A witness-free square through p and q, or None when every square is hit.

    Same case split as sg_neg_pair_oracle, but each surviving family yields
    its concrete square: the smallest one for the corner-contact families,
    a free slide position for the fixed-side families.
    """
    if p.x > q.x:
        p, q = q, p
    sy = 1 if q.y > p.y else -1
    a = q.x - p.x
    b = sy * (q.y - p.y)
    s_min = a if a > b else b
    ws = [(w.x - p.x, sy * (w.y - p.y)) for w in witnesses]

    def emit(cx, cy, s):
        # undo the canonical reflection; corner stays lowest-left
        y = p.y + cy if sy == 1 else p.y - cy - s
        return Square(Point2(p.x + cx, y), s)

    if all(
        (wx if wx > b - wy else b - wy) >= s_min
        for wx, wy in ws
        if wx > 0 and wy < b
    ):
        return emit(0, b - s_min, s_min)
    if all(
        (wy if wy > a - wx else a - wx) >= s_min
        for wx, wy in ws
        if wy > 0 and wx < a
    ):
        return emit(a - s_min, 0, s_min)
    if a >= b:
        blockers = sorted((wy - a, wy) for wx, wy in ws if 0 < wx < a)
        y0 = _free_value(b - a, 0, blockers)
        if y0 is not None:
            return emit(0, y0, a)
    if b >= a:
        blockers = sorted((wx - b, wx) for wx, wy in ws if 0 < wy < b)
        x0 = _free_value(a - b, 0, blockers)
        if x0 is not None:
            return emit(x0, 0, b)
    return None


def sg_neg_graph(config: PointConfig) -> frozenset[Edge]:
    """Negative witness square graph via the pair oracle."""
    points = config.vertices
    witnesses = config.witnesses
    n = len(points)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            if points[i].x == points[j].x or points[i].y == points[j].y:
                raise DegenerateInputError(
                    "vertex pair shares a coordinate", (points[i], points[j])
                )
            if sg_neg_pair_oracle(points[i], points[j], witnesses):
                out.add((i, j))
    return frozenset(out)


def verify_sg_neg_empty(config: PointConfig) -> bool:
    """True iff every open square through two vertices contains a witness."""
    points = config.vertices
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if sg_neg_pair_oracle(points[i], points[j], config.witnesses):
                return False
    return True
