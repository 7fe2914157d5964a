"""Pure-Python exact geometric kernel.

Everything here works on integer coordinates.  Signs are exact because Python
integers are arbitrary precision.  The compiled kernel mirrors this module's
interface; tests assert both produce identical output.

Triangulations use the ghost-triangle scheme: the finite triangulation is
closed off with one ghost triangle per hull edge, sharing the symbolic vertex
``INF = -1``.  A ghost stored as ``(g0, g1, INF)`` covers the open half-plane
strictly left of the directed line g0->g1; equivalently (g1, g0) is an edge of
the counterclockwise hull cycle.
"""

from __future__ import annotations

from math import gcd

from ..errors import DegenerateInputError

KIND = "pure"
INF = -1


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b-a) x (c-a): +1 if a,b,c turn left."""
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """Sign test: +1 iff d lies strictly inside the circle through a, b, c.

    Sign convention assumes (a, b, c) counterclockwise; flips if clockwise.
    """
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    d = (
        adx * (bdy * cd - cdy * bd)
        - ady * (bdx * cd - cdx * bd)
        + ad * (bdx * cdy - cdx * bdy)
    )
    return (d > 0) - (d < 0)


class Triangulation:
    """Incremental Delaunay triangulation over integer points.

    Vertex ids are indices into the point arrays.  ``had_tie`` is set whenever
    a zero predicate sign was observed; results are then not trusted as a
    Delaunay triangulation and callers are expected to reject the input.
    """

    __slots__ = ("px", "py", "tv", "tn", "alive", "free", "vhint", "had_tie", "_hint")

    def __init__(self):
        self.px = []
        self.py = []
        self.tv = []  # flat, 3 vertex ids per triangle (INF allowed)
        self.tn = []  # flat, tn[3t+i] = triangle across the edge opposite slot i
        self.alive = bytearray()
        self.free = []
        self.vhint = []  # some alive triangle incident to each vertex
        self.had_tie = False
        self._hint = 0

    # -- construction ---------------------------------------------------

    def clone(self):
        t = Triangulation.__new__(Triangulation)
        t.px = self.px.copy()
        t.py = self.py.copy()
        t.tv = self.tv.copy()
        t.tn = self.tn.copy()
        t.alive = bytearray(self.alive)
        t.free = self.free.copy()
        t.vhint = self.vhint.copy()
        t.had_tie = self.had_tie
        t._hint = self._hint
        return t

    def _new_tri(self, a, b, c):
        if self.free:
            t = self.free.pop()
            self.alive[t] = 1
        else:
            t = len(self.alive)
            self.tv.extend((0, 0, 0))
            self.tn.extend((-1, -1, -1))
            self.alive.append(1)
        base = 3 * t
        self.tv[base] = a
        self.tv[base + 1] = b
        self.tv[base + 2] = c
        self.tn[base] = -1
        self.tn[base + 1] = -1
        self.tn[base + 2] = -1
        return t

    def _kill(self, t):
        self.alive[t] = 0
        self.free.append(t)

    def _in_conflict(self, t, x, y):
        base = 3 * t
        a = self.tv[base]
        b = self.tv[base + 1]
        c = self.tv[base + 2]
        if a == INF:
            a, b, c = b, c, a
        elif b == INF:
            a, b, c = c, a, b
        px = self.px
        py = self.py
        if c == INF:
            s = orient2d(px[a], py[a], px[b], py[b], x, y)
            if s == 0:
                self.had_tie = True
            return s > 0
        s = incircle(px[a], py[a], px[b], py[b], px[c], py[c], x, y)
        if s == 0:
            self.had_tie = True
        return s > 0

    def _locate(self, x, y):
        """Visibility walk to a triangle whose closure contains (x, y).

        Returns (tri, dup_vertex).  dup_vertex >= 0 means (x, y) coincides
        with an existing vertex.  A ghost result means the point lies outside
        the current hull.
        """
        t = self._hint
        if t >= len(self.alive) or not self.alive[t]:
            t = next(i for i in range(len(self.alive)) if self.alive[i])
        tv = self.tv
        if INF in (tv[3 * t], tv[3 * t + 1], tv[3 * t + 2]):
            # start inside the hull; ghosts keep INF in slot 2, so the real
            # neighbor sits across the (g0, g1) edge
            t = self.tn[3 * t + 2]
        px = self.px
        py = self.py
        limit = 4 * len(self.alive) + 32
        steps = 0
        while True:
            steps += 1
            if steps > limit:
                raise DegenerateInputError("point location walk did not terminate")
            base = 3 * t
            a = tv[base]
            b = tv[base + 1]
            c = tv[base + 2]
            if a == INF or b == INF or c == INF:
                return t, -1
            if px[a] == x and py[a] == y:
                return t, a
            if px[b] == x and py[b] == y:
                return t, b
            if px[c] == x and py[c] == y:
                return t, c
            if orient2d(px[a], py[a], px[b], py[b], x, y) < 0:
                t = self.tn[base + 2]
            elif orient2d(px[b], py[b], px[c], py[c], x, y) < 0:
                t = self.tn[base]
            elif orient2d(px[c], py[c], px[a], py[a], x, y) < 0:
                t = self.tn[base + 1]
            else:
                return t, -1

    def _link(self, t, slot, u, uslot):
        self.tn[3 * t + slot] = u
        self.tn[3 * u + uslot] = t

    def insert_point(self, x, y):
        """Insert a new point, returning its vertex id.

        If the point coincides with an existing vertex, that vertex id is
        returned and the structure is unchanged.
        """
        t, dup = self._locate(x, y)
        if dup >= 0:
            return dup
        v = len(self.px)
        self.px.append(x)
        self.py.append(y)
        self.vhint.append(-1)
        self._insert_located(v, t)
        return v

    def _insert_located(self, v, seed):
        x = self.px[v]
        y = self.py[v]
        if not self._in_conflict(seed, x, y):
            # Walking out of the hull always lands in a conflicting ghost, and
            # a real containing triangle always conflicts; ties can break this.
            self.had_tie = True
            raise DegenerateInputError(
                "insertion point ties with existing structure", (v,)
            )
        tv = self.tv
        tn = self.tn
        in_cavity = {seed}
        cavity = [seed]
        stack = [seed]
        boundary = []  # (edge_from, edge_to, outer_tri, outer_slot)
        while stack:
            t = stack.pop()
            base = 3 * t
            for slot in range(3):
                nb = tn[base + slot]
                if nb in in_cavity:
                    continue
                if self._in_conflict(nb, x, y):
                    in_cavity.add(nb)
                    cavity.append(nb)
                    stack.append(nb)
                else:
                    e_from = tv[base + (slot + 1) % 3]
                    e_to = tv[base + (slot + 2) % 3]
                    nbase = 3 * nb
                    for nslot in range(3):
                        if tn[nbase + nslot] == t:
                            break
                    boundary.append((e_from, e_to, nb, nslot))
        for t in cavity:
            self._kill(t)
        # One new triangle per boundary edge; rotate any INF into the last slot.
        edge_map = {}
        vhint = self.vhint
        for e_from, e_to, outer, outer_slot in boundary:
            if e_from == INF:
                tri = self._new_tri(e_to, v, INF)
            elif e_to == INF:
                tri = self._new_tri(v, e_from, INF)
            else:
                tri = self._new_tri(e_from, e_to, v)
            base = 3 * tri
            # neighbor across the boundary edge sits opposite v; ghosts were
            # rotated, so find v's slot explicitly
            vslot = 0
            while tv[base + vslot] != v:
                vslot += 1
            self._link(tri, vslot, outer, outer_slot)
            a = tv[base]
            b = tv[base + 1]
            c = tv[base + 2]
            edge_map[(a, b)] = (tri, 2)
            edge_map[(b, c)] = (tri, 0)
            edge_map[(c, a)] = (tri, 1)
            for w in (a, b, c):
                if w != INF:
                    vhint[w] = tri
        for (a, b), (tri, slot) in edge_map.items():
            rev = edge_map.get((b, a))
            if rev is not None:
                self._link(tri, slot, rev[0], rev[1])
        self._hint = self.vhint[v]

    # -- queries ----------------------------------------------------------

    def triangles(self):
        """All finite triangles as stored (counterclockwise) vertex triples."""
        out = []
        tv = self.tv
        for t in range(len(self.alive)):
            if not self.alive[t]:
                continue
            base = 3 * t
            a = tv[base]
            b = tv[base + 1]
            c = tv[base + 2]
            if a != INF and b != INF and c != INF:
                out.append((a, b, c))
        return out

    def hull(self):
        """Hull vertex ids in counterclockwise order."""
        start = -1
        tv = self.tv
        for t in range(len(self.alive)):
            if self.alive[t] and tv[3 * t + 2] == INF:
                start = t
                break
        if start < 0:
            return []
        out = []
        t = start
        while True:
            base = 3 * t
            out.append(tv[base + 1])  # g1: hull edge (g1 -> g0)
            t = self.tn[base + 1]  # ghost across (INF -> g0): next hull edge
            if t == start:
                break
        return out

    def neighbors_cycle(self, v):
        """Neighbors of v in counterclockwise cyclic order.

        Returns (neighbors, on_hull).  For a hull vertex the list starts just
        after the outside gap, so the cyclic pair (last, first) spans the
        exterior reflex wedge.
        """
        tv = self.tv
        tn = self.tn
        start = self.vhint[v]
        ring = []
        t = start
        while True:
            base = 3 * t
            if tv[base] == v:
                i = 0
            elif tv[base + 1] == v:
                i = 1
            else:
                i = 2
            ring.append(tv[base + (i + 1) % 3])
            t = tn[base + (i + 1) % 3]
            if t == start:
                break
        if INF in ring:
            k = ring.index(INF)
            ring = ring[k + 1 :] + ring[:k]
            return ring, True
        return ring, False

    def _touches(self, t, x, y):
        """Closed-disk conflict test.  Ties count as touching; unlike
        ``_in_conflict`` this never records them, queries are read-only."""
        base = 3 * t
        a = self.tv[base]
        b = self.tv[base + 1]
        c = self.tv[base + 2]
        if a == INF:
            a, b, c = b, c, a
        elif b == INF:
            a, b, c = c, a, b
        px = self.px
        py = self.py
        if c == INF:
            return orient2d(px[a], py[a], px[b], py[b], x, y) >= 0
        return incircle(px[a], py[a], px[b], py[b], px[c], py[c], x, y) >= 0

    def conflict_neighbors(self, x, y, start_vertex=-1):
        """Finite vertices of every triangle whose closed circumdisk holds (x, y).

        Read-only.  These are the would-be Delaunay neighbors of (x, y), so the
        set always contains a nearest vertex.  Coordinates may be any exact
        number type (int, Fraction).  If (x, y) coincides with a vertex only
        that vertex is returned.  ``start_vertex`` seeds the locate walk.
        """
        tv = self.tv
        tn = self.tn
        px = self.px
        py = self.py
        t = -1
        if 0 <= start_vertex < len(self.vhint):
            t = self.vhint[start_vertex]
        if t < 0 or t >= len(self.alive) or not self.alive[t]:
            t = self._hint
        if t >= len(self.alive) or not self.alive[t]:
            t = next(i for i in range(len(self.alive)) if self.alive[i])
        if tv[3 * t + 2] == INF:
            t = tn[3 * t + 2]
        limit = 4 * len(self.alive) + 32
        steps = 0
        while True:
            steps += 1
            if steps > limit:
                raise DegenerateInputError("point location walk did not terminate")
            base = 3 * t
            a = tv[base]
            b = tv[base + 1]
            c = tv[base + 2]
            if a == INF or b == INF or c == INF:
                break
            if px[a] == x and py[a] == y:
                return [a]
            if px[b] == x and py[b] == y:
                return [b]
            if px[c] == x and py[c] == y:
                return [c]
            if orient2d(px[a], py[a], px[b], py[b], x, y) < 0:
                t = tn[base + 2]
            elif orient2d(px[b], py[b], px[c], py[c], x, y) < 0:
                t = tn[base]
            elif orient2d(px[c], py[c], px[a], py[a], x, y) < 0:
                t = tn[base + 1]
            else:
                break
        seen = {t}
        stack = [t]
        verts = set()
        while stack:
            cur = stack.pop()
            base = 3 * cur
            for i in range(3):
                v = tv[base + i]
                if v != INF:
                    verts.add(v)
            for slot in range(3):
                nb = tn[base + slot]
                if nb not in seen and self._touches(nb, x, y):
                    seen.add(nb)
                    stack.append(nb)
        return sorted(verts)

    def vertex_count(self):
        return len(self.px)


def build_delaunay(px, py):
    """Delaunay triangulation of distinct integer points (at least 3).

    Raises DegenerateInputError when all points are collinear or a duplicate
    is present.  Cocircular or collinear ties elsewhere set ``had_tie`` on the
    result instead of raising.
    """
    n = len(px)
    if n < 3:
        raise DegenerateInputError("need at least 3 points to triangulate")
    i1 = -1
    for j in range(1, n):
        if px[j] != px[0] or py[j] != py[0]:
            i1 = j
            break
    if i1 < 0:
        raise DegenerateInputError("all points coincide", (0, 1))
    i2 = -1
    for k in range(1, n):
        if k == i1:
            continue
        if orient2d(px[0], py[0], px[i1], py[i1], px[k], py[k]) != 0:
            i2 = k
            break
    if i2 < 0:
        raise DegenerateInputError("all points collinear", (0, i1))
    tri = Triangulation()
    tri.px = list(px)
    tri.py = list(py)
    tri.vhint = [-1] * n
    a, b, c = 0, i1, i2
    if orient2d(px[a], py[a], px[b], py[b], px[c], py[c]) < 0:
        b, c = c, b
    t0 = tri._new_tri(a, b, c)
    gab = tri._new_tri(b, a, INF)
    gbc = tri._new_tri(c, b, INF)
    gca = tri._new_tri(a, c, INF)
    # real triangle: neighbor opposite each vertex is the ghost of the far edge
    tri._link(t0, 2, gab, 2)
    tri._link(t0, 0, gbc, 2)
    tri._link(t0, 1, gca, 2)
    # ghost-to-ghost adjacency: across (g1, INF) is the previous hull ghost,
    # across (INF, g0) the next one
    tri._link(gab, 0, gca, 1)
    tri._link(gab, 1, gbc, 0)
    tri._link(gbc, 1, gca, 0)
    tri.vhint[a] = t0
    tri.vhint[b] = t0
    tri.vhint[c] = t0
    tri._hint = t0
    seeds = {a, b, c}
    for v in range(n):
        if v in seeds:
            continue
        t, dup = tri._locate(tri.px[v], tri.py[v])
        if dup >= 0:
            raise DegenerateInputError("duplicate point", (dup, v))
        tri._insert_located(v, t)
    return tri


# -- position-class certification ------------------------------------------


def _canon_dir(dx, dy):
    g = gcd(abs(dx), abs(dy))
    dx //= g
    dy //= g
    if dx < 0 or (dx == 0 and dy < 0):
        dx = -dx
        dy = -dy
    return dx, dy


def find_duplicate(px, py):
    """First coincident pair as ("duplicate", (i, j)), else None."""
    seen_pt = {}
    for i in range(len(px)):
        key = (px[i], py[i])
        if key in seen_pt:
            return ("duplicate", (seen_pt[key], i))
        seen_pt[key] = i
    return None


def find_collinear(px, py):
    """First collinear triple as ("collinear", (i, j, k)), else None.

    Assumes the points are pairwise distinct.
    """
    n = len(px)
    for i in range(n):
        dirs = {}
        for j in range(i + 1, n):
            d = _canon_dir(px[j] - px[i], py[j] - py[i])
            if d in dirs:
                return ("collinear", (i, dirs[d], j))
            dirs[d] = j
    return None


def find_cocircular(px, py):
    """First cocircular quadruple as ("cocircular", indices), else None.

    Assumes no duplicates and no collinear triples.
    """
    n = len(px)
    # Bucket triples by reduced circumcenter; only center collisions pay for
    # the exact radius comparison, so concentric circles stay distinguished.
    centers = {}
    for i in range(n):
        ax, ay = px[i], py[i]
        for j in range(i + 1, n):
            bx, by = px[j], py[j]
            for k in range(j + 1, n):
                cx, cy = px[k], py[k]
                d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
                aa = ax * ax + ay * ay
                bb = bx * bx + by * by
                cc = cx * cx + cy * cy
                ux = aa * (by - cy) + bb * (cy - ay) + cc * (ay - by)
                uy = aa * (cx - bx) + bb * (ax - cx) + cc * (bx - ax)
                g = gcd(gcd(abs(ux), abs(uy)), abs(d))
                if d < 0:
                    g = -g
                ux //= g
                uy //= g
                dd = d // g
                key = (ux, uy, dd)
                bucket = centers.get(key)
                if bucket is None:
                    centers[key] = bucket = []
                rn = (ax * dd - ux) ** 2 + (ay * dd - uy) ** 2
                for trip, rn2 in bucket:
                    if rn2 == rn:
                        four = sorted(set(trip) | {i, j, k})[:4]
                        return ("cocircular", tuple(four))
                bucket.append(((i, j, k), rn))
    return None


def certify_delaunay(px, py):
    """None if no duplicate, collinear triple, or cocircular quadruple exists.

    Otherwise returns (kind, indices) naming one offending tuple.
    """
    return (
        find_duplicate(px, py)
        or find_collinear(px, py)
        or find_cocircular(px, py)
    )


def certify_axis(px, py):
    """None if all x are distinct and all y are distinct, else the offender."""
    n = len(px)
    for coord, kind in ((px, "equal_x"), (py, "equal_y")):
        seen = {}
        for i in range(n):
            if coord[i] in seen:
                return (kind, (seen[coord[i]], i))
            seen[coord[i]] = i
    return None
