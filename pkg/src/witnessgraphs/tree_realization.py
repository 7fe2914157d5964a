"""Draw any tree as a witness Delaunay graph.

The drawing is built bottom-up: every subtree arrives in its own square
box, gets rescaled to unit size, and the boxes line up half a box apart
under a tall guard rectangle whose top midpoint carries the root.  Triples
of witnesses in the gaps cut edges between boxes, three witnesses on every
box top cut edges from the root into box interiors, and one tangent disk
per child certifies the root edges.  A witness sits on every vertex, so the
graph of the finished drawing is exactly the Delaunay triangulation of the
witness set restricted to vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PerturbationFailedError, WitnessGraphError
from .geometry import (
    Disk,
    Point2,
    PointConfig,
    PositionClass,
    Square,
    certify_position,
    point,
)
from .witness_delaunay import ProximityGraph, wdg_naive

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Tree:
    """Rooted tree as a parent array; ``parent[root]`` is None."""

    n: int
    parent: tuple
    root: int

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        if self.n < 1 or len(self.parent) != self.n:
            raise ValueError("parent array must have exactly n entries")
        if not 0 <= self.root < self.n or self.parent[self.root] is not None:
            raise ValueError("root must be an index with no parent")
        for v, p in enumerate(self.parent):
            if v == self.root:
                continue
            if p is None or not 0 <= p < self.n:
                raise ValueError(f"vertex {v} has no valid parent")
        # walk every vertex to the root; revisiting an unfinished walk means a cycle
        state = [0] * self.n  # 0 new, 1 walking, 2 done
        state[self.root] = 2
        for v in range(self.n):
            path = []
            while state[v] == 0:
                state[v] = 1
                path.append(v)
                v = self.parent[v]
            if state[v] == 1:
                raise ValueError("parent array contains a cycle")
            for u in path:
                state[u] = 2

    @classmethod
    def from_edges(cls, n: int, edges, root: int = 0) -> "Tree":
        adj = [[] for _ in range(n)]
        for i, j in edges:
            adj[i].append(j)
            adj[j].append(i)
        parent: list = [None] * n
        seen = [False] * n
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    stack.append(u)
        if not all(seen) or len(list(edges)) != n - 1:
            raise ValueError("edges do not form a spanning tree")
        return cls(n, tuple(parent), root)

    def children(self) -> list:
        out: list = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                out[p].append(v)
        return out

    def edges(self) -> frozenset:
        return frozenset(
            (v, p) if v < p else (p, v)
            for v, p in enumerate(self.parent)
            if p is not None
        )


@dataclass(frozen=True)
class LevelReport:
    """Exact geometry of one assembly step, in final drawing coordinates.

    ``blockers`` are the diameter disks of consecutive gap witnesses and of
    consecutive box-top witnesses; none may contain a vertex.  ``cert_disks``
    certify the root-to-child edges and must be empty of all other points.
    """

    width: Fraction
    box: Square
    sub_boxes: tuple
    blockers: tuple
    cert_disks: tuple


@dataclass(frozen=True)
class TreeDrawing:
    """A realized tree: ``config`` is perturbed into general position,
    ``raw_config`` keeps the exact construction the reports refer to."""

    config: PointConfig
    box: Square
    vertex_map: tuple
    raw_config: PointConfig
    levels: tuple


@dataclass
class _Frame:
    vertices: list  # index 0 is the subtree root
    extras: list  # witnesses that are not vertices
    box: Square
    vmap: dict
    levels: list


def _moved(p: Point2, anchor: Point2, target: Point2, s: Fraction) -> Point2:
    return Point2(target.x + s * (p.x - anchor.x), target.y + s * (p.y - anchor.y))


def _fail(msg: str, *detail):
    raise WitnessGraphError(f"tree construction invariant broke: {msg}", *detail)


def _build(children_of: list, v: int) -> _Frame:
    kids = children_of[v]
    if not kids:
        box = Square(point(0, -1), Fraction(1))
        return _Frame(
            [point(HALF, 0)], [point(0, 0), point(1, 0)], box, {v: 0}, []
        )

    frames = [_build(children_of, c) for c in kids]
    m = len(frames)
    r = Fraction(3 * m - 1, 2)
    s = Point2(r / 2, 10 * r)
    vertices = [s]
    extras = []
    levels: list = []
    vmap = {v: 0}
    sub_boxes = []
    roots = []
    for i, fr in enumerate(frames):
        anchor = Point2(fr.box.corner.x + fr.box.side / 2, fr.box.corner.y + fr.box.side)
        if fr.vertices[0] != anchor:
            _fail("subtree root left its box top midpoint", fr.vertices[0], anchor)
        target = Point2(Fraction(3 * i, 2) + HALF, Fraction(0))
        sc = 1 / fr.box.side
        base = len(vertices)
        vertices.extend(_moved(p, anchor, target, sc) for p in fr.vertices)
        extras.extend(_moved(p, anchor, target, sc) for p in fr.extras)
        for tv, k in fr.vmap.items():
            vmap[tv] = base + k
        for lv in fr.levels:
            levels.append(
                LevelReport(
                    lv.width,
                    _scale_square(lv.box, anchor, target, sc),
                    tuple(_scale_square(b, anchor, target, sc) for b in lv.sub_boxes),
                    tuple(_scale_disk(d, anchor, target, sc) for d in lv.blockers),
                    tuple(_scale_disk(d, anchor, target, sc) for d in lv.cert_disks),
                )
            )
        sub_boxes.append(Square(point(Fraction(3 * i, 2), -1), Fraction(1)))
        roots.append(target)

    blockers = []
    for i in range(m - 1):
        xg = Fraction(3 * i, 2) + 1 + Fraction(1, 4)
        extras.extend([Point2(xg, Fraction(0)), Point2(xg, -HALF), Point2(xg, Fraction(-1))])
        blockers.append(Disk(Point2(xg, Fraction(-1, 4)), Fraction(1, 16)))
        blockers.append(Disk(Point2(xg, Fraction(-3, 4)), Fraction(1, 16)))
    for i in range(m):
        left = Fraction(3 * i, 2)
        blockers.append(Disk(Point2(left + Fraction(1, 4), Fraction(0)), Fraction(1, 16)))
        blockers.append(Disk(Point2(left + Fraction(3, 4), Fraction(0)), Fraction(1, 16)))

    # box side: wide enough to hold the boxes and to keep every certifying
    # disk inside the vertical slab, so disks poke out through the top only
    grow = (r / 2 - HALF) ** 2 / (10 * r)
    side = max(10 * r + 1, grow + 11 * r - 1)
    if not grow + r - 1 < 2 * r:
        _fail("half-height inequality failed", r)
    box = Square(Point2(r / 2 - side / 2, 10 * r - side), side)
    extras.append(Point2(r / 2 - side / 2, 10 * r))
    extras.append(Point2(r / 2 + side / 2, 10 * r))

    cert_disks = []
    for c in roots:
        dx = s.x - c.x
        rad = (dx * dx + (10 * r) ** 2) / (20 * r)
        cert_disks.append(Disk(Point2(c.x, c.y + rad), rad * rad))
        if c.x - rad < box.corner.x or c.x + rad > box.corner.x + side:
            _fail("certifying disk escapes the box slab", c)

    half_y = 10 * r - side / 2
    for b in sub_boxes:
        if b.corner.y + b.side > half_y or b.corner.y < box.corner.y:
            _fail("sub-box above the lower half", b)
        if b.corner.x < box.corner.x or b.corner.x + b.side > box.corner.x + side:
            _fail("sub-box outside the box", b)
    for i, p in enumerate(vertices):
        if i == 0:
            continue
        inside = (
            box.corner.x < p.x < box.corner.x + side
            and box.corner.y < p.y < box.corner.y + side
        )
        if not inside:
            _fail("vertex not interior to the box", p)
        if p.y >= half_y:
            _fail("non-root vertex above the lower half", p)
    for d in blockers:
        for p in vertices:
            if d.side(p) < 0:
                _fail("vertex inside a blocker disk", d, p)
    union = vertices + extras
    for c, d in zip(roots, cert_disks):
        for p in union:
            if p != s and p != c and d.side(p) < 0:
                _fail("certifying disk not empty", d, p)

    levels.append(LevelReport(r, box, tuple(sub_boxes), tuple(blockers), tuple(cert_disks)))
    return _Frame(vertices, extras, box, vmap, levels)


def _scale_square(sq: Square, anchor: Point2, target: Point2, s: Fraction) -> Square:
    return Square(_moved(sq.corner, anchor, target, s), sq.side * s)


def _scale_disk(d: Disk, anchor: Point2, target: Point2, s: Fraction) -> Disk:
    return Disk(_moved(d.center, anchor, target, s), d.radius_sq * s * s)


def realize_tree(t: Tree) -> TreeDrawing:
    """Draw ``t`` so that its witness Delaunay graph is exactly ``t``.

    The raw construction is degenerate on purpose (witness rows share
    lines); the returned config is the perturbed copy, already verified to
    reproduce the tree.  O(n) arithmetic operations; coordinates are exact
    rationals whose size grows with tree height.
    """
    frame = _build(t.children(), t.root)
    order = sorted(frame.vmap)
    vertex_map = tuple(frame.vmap[v] for v in order)
    raw = PointConfig(
        frame.vertices, frame.vertices + frame.extras, PositionClass.NONE
    )
    expected = frozenset(
        (frame.vmap[a], frame.vmap[b]) if frame.vmap[a] < frame.vmap[b]
        else (frame.vmap[b], frame.vmap[a])
        for a, b in t.edges()
    )
    target = ProximityGraph(raw, expected)
    config = perturb_general_position(raw, target)
    return TreeDrawing(config, frame.box, vertex_map, raw, tuple(frame.levels))


def perturb_general_position(config: PointConfig, preserve: ProximityGraph) -> PointConfig:
    """Nudge every point into general position without changing the graph.

    Displacements follow one parabola (point k moves by d*(k+1, (k+1)^2)
    scaled into a box of radius d), so any fixed degeneracy survives only
    finitely many of the shrinking d values.  Each attempt is checked: the
    perturbed union must certify and wdg_naive must still equal
    ``preserve``.  Raises PERTURBATION_FAILED after 64 shrink steps.
    """
    flagged = PointConfig(
        config.vertices, config.witnesses, PositionClass.GENERAL_DELAUNAY
    )
    if certify_position(flagged)[0]:
        got = wdg_naive(flagged)
        if got.edges == preserve.edges:
            return flagged
    union = config.union_points()
    nu = len(union)
    gap = None
    for i in range(nu):
        for j in range(i + 1, nu):
            g = max(abs(union[i].x - union[j].x), abs(union[i].y - union[j].y))
            if gap is None or g < gap:
                gap = g
    if gap is None or gap == 0:
        raise PerturbationFailedError("no room to perturb")
    shift = {p: k + 1 for k, p in enumerate(union)}
    delta = gap / 16
    for _ in range(64):
        def nudge(p):
            k = shift[p]
            return Point2(
                p.x + delta * Fraction(k, nu), p.y + delta * Fraction(k * k, nu * nu)
            )

        cand = PointConfig(
            tuple(nudge(p) for p in config.vertices),
            tuple(nudge(p) for p in config.witnesses),
            PositionClass.GENERAL_DELAUNAY,
        )
        if certify_position(cand)[0]:
            try:
                got = wdg_naive(cand)
            except WitnessGraphError:
                got = None
            if got is not None and got.edges == preserve.edges:
                return cand
        delta /= 2
    raise PerturbationFailedError("64 shrink steps without a clean drawing")
