# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled exact geometric kernel.

Mirrors ``_pure`` exactly: same algorithms, same tie handling, same outputs.
Coordinates must satisfy |x| < 2**29 so the incircle determinant fits in a
signed 128-bit integer; ``build_delaunay`` raises OverflowError beyond that
and the kernel front end falls back to the pure implementation.
"""

from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference

from ..errors import DegenerateInputError

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64
ctypedef unsigned long long u64

KIND = "fast"
INF = -1
COORD_LIMIT = 1 << 29

cdef i64 _ORIENT_LIMIT = <i64>1 << 61
cdef i64 _COORD_LIMIT = <i64>1 << 29
cdef int _INF = -1


cdef inline int _sign(i128 v) noexcept nogil:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


cdef inline i128 _abs128(i128 v) noexcept nogil:
    return -v if v < 0 else v


cdef int _orient_c(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy) noexcept nogil:
    cdef i128 d = (<i128>(bx - ax)) * (<i128>(cy - ay)) - (<i128>(by - ay)) * (<i128>(cx - ax))
    return _sign(d)


cdef int _incircle_c(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy, i64 dx, i64 dy) noexcept nogil:
    cdef i128 adx = ax - dx
    cdef i128 ady = ay - dy
    cdef i128 bdx = bx - dx
    cdef i128 bdy = by - dy
    cdef i128 cdx = cx - dx
    cdef i128 cdy = cy - dy
    cdef i128 ad = adx * adx + ady * ady
    cdef i128 bd = bdx * bdx + bdy * bdy
    cdef i128 cd = cdx * cdx + cdy * cdy
    cdef i128 det = adx * (bdy * cd - cdy * bd) - ady * (bdx * cd - cdx * bd) + ad * (bdx * cdy - cdx * bdy)
    return _sign(det)


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b-a) x (c-a): +1 if a,b,c turn left."""
    try:
        if (abs(ax) | abs(ay) | abs(bx) | abs(by) | abs(cx) | abs(cy)) < _ORIENT_LIMIT:
            return _orient_c(ax, ay, bx, by, cx, cy)
    except (OverflowError, TypeError):
        pass
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """Sign test: +1 iff d lies strictly inside the circle through a, b, c.

    Sign convention assumes (a, b, c) counterclockwise; flips if clockwise.
    """
    try:
        if (abs(ax) | abs(ay) | abs(bx) | abs(by) | abs(cx) | abs(cy) | abs(dx) | abs(dy)) < _COORD_LIMIT:
            return _incircle_c(ax, ay, bx, by, cx, cy, dx, dy)
    except (OverflowError, TypeError):
        pass
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (
        adx * (bdy * cd - cdy * bd)
        - ady * (bdx * cd - cdx * bd)
        + ad * (bdx * cdy - cdx * bdy)
    )
    return (det > 0) - (det < 0)


cdef class Triangulation:
    """Compiled incremental Delaunay triangulation over integer points."""

    cdef vector[i64] px
    cdef vector[i64] py
    cdef vector[int] tv
    cdef vector[int] tn
    cdef vector[char] alive
    cdef vector[char] flag  # scratch: cavity membership per insertion
    cdef vector[int] free
    cdef vector[int] vhint
    cdef public bint had_tie
    cdef int _hint

    def __cinit__(self):
        self.had_tie = False
        self._hint = 0

    def clone(self):
        cdef Triangulation t = Triangulation.__new__(Triangulation)
        t.px = self.px
        t.py = self.py
        t.tv = self.tv
        t.tn = self.tn
        t.alive = self.alive
        t.flag = self.flag
        t.free = self.free
        t.vhint = self.vhint
        t.had_tie = self.had_tie
        t._hint = self._hint
        return t

    cdef int _new_tri(self, int a, int b, int c):
        cdef int t
        if self.free.size() > 0:
            t = self.free.back()
            self.free.pop_back()
            self.alive[t] = 1
        else:
            t = <int>self.alive.size()
            self.tv.push_back(0)
            self.tv.push_back(0)
            self.tv.push_back(0)
            self.tn.push_back(-1)
            self.tn.push_back(-1)
            self.tn.push_back(-1)
            self.alive.push_back(1)
            self.flag.push_back(0)
        self.tv[3 * t] = a
        self.tv[3 * t + 1] = b
        self.tv[3 * t + 2] = c
        self.tn[3 * t] = -1
        self.tn[3 * t + 1] = -1
        self.tn[3 * t + 2] = -1
        return t

    cdef bint _in_conflict(self, int t, i64 x, i64 y):
        cdef int base = 3 * t
        cdef int a = self.tv[base]
        cdef int b = self.tv[base + 1]
        cdef int c = self.tv[base + 2]
        cdef int tmp, s
        if a == _INF:
            tmp = a; a = b; b = c; c = tmp
        elif b == _INF:
            tmp = c; c = b; b = a; a = tmp
        if c == _INF:
            s = _orient_c(self.px[a], self.py[a], self.px[b], self.py[b], x, y)
            if s == 0:
                self.had_tie = True
            return s > 0
        s = _incircle_c(self.px[a], self.py[a], self.px[b], self.py[b],
                        self.px[c], self.py[c], x, y)
        if s == 0:
            self.had_tie = True
        return s > 0

    cdef (int, int) _locate(self, i64 x, i64 y) except *:
        cdef int t = self._hint
        cdef int n = <int>self.alive.size()
        cdef int i, base, a, b, c
        cdef long long steps = 0
        cdef long long limit = 4 * <long long>n + 32
        if t >= n or not self.alive[t]:
            for i in range(n):
                if self.alive[i]:
                    t = i
                    break
        base = 3 * t
        if self.tv[base] == _INF or self.tv[base + 1] == _INF or self.tv[base + 2] == _INF:
            t = self.tn[base + 2]
        while True:
            steps += 1
            if steps > limit:
                raise DegenerateInputError("point location walk did not terminate")
            base = 3 * t
            a = self.tv[base]
            b = self.tv[base + 1]
            c = self.tv[base + 2]
            if a == _INF or b == _INF or c == _INF:
                return t, -1
            if self.px[a] == x and self.py[a] == y:
                return t, a
            if self.px[b] == x and self.py[b] == y:
                return t, b
            if self.px[c] == x and self.py[c] == y:
                return t, c
            if _orient_c(self.px[a], self.py[a], self.px[b], self.py[b], x, y) < 0:
                t = self.tn[base + 2]
            elif _orient_c(self.px[b], self.py[b], self.px[c], self.py[c], x, y) < 0:
                t = self.tn[base]
            elif _orient_c(self.px[c], self.py[c], self.px[a], self.py[a], x, y) < 0:
                t = self.tn[base + 1]
            else:
                return t, -1

    cdef void _link(self, int t, int slot, int u, int uslot) noexcept:
        self.tn[3 * t + slot] = u
        self.tn[3 * u + uslot] = t

    def insert_point(self, x, y):
        """Insert a new point, returning its vertex id (existing id if equal)."""
        cdef i64 cx = x
        cdef i64 cy = y
        if not (-_COORD_LIMIT < cx < _COORD_LIMIT and -_COORD_LIMIT < cy < _COORD_LIMIT):
            raise OverflowError("coordinate exceeds fast kernel range")
        cdef int t, dup, v
        t, dup = self._locate(cx, cy)
        if dup >= 0:
            return dup
        v = <int>self.px.size()
        self.px.push_back(cx)
        self.py.push_back(cy)
        self.vhint.push_back(-1)
        self._insert_located(v, t)
        return v

    cdef void _insert_located(self, int v, int seed) except *:
        cdef i64 x = self.px[v]
        cdef i64 y = self.py[v]
        cdef vector[int] stack
        cdef vector[int] cavity
        cdef list boundary = []
        cdef int t, slot, nb, base, nbase, nslot, e_from, e_to
        if not self._in_conflict(seed, x, y):
            self.had_tie = True
            raise DegenerateInputError(
                "insertion point ties with existing structure", (v,)
            )
        self.flag[seed] = 1
        cavity.push_back(seed)
        stack.push_back(seed)
        while stack.size() > 0:
            t = stack.back()
            stack.pop_back()
            base = 3 * t
            for slot in range(3):
                nb = self.tn[base + slot]
                if self.flag[nb]:
                    continue
                if self._in_conflict(nb, x, y):
                    self.flag[nb] = 1
                    cavity.push_back(nb)
                    stack.push_back(nb)
                else:
                    e_from = self.tv[base + (slot + 1) % 3]
                    e_to = self.tv[base + (slot + 2) % 3]
                    nbase = 3 * nb
                    for nslot in range(3):
                        if self.tn[nbase + nslot] == t:
                            break
                    boundary.append((e_from, e_to, nb, nslot))
        cdef size_t ci
        for ci in range(cavity.size()):
            t = cavity[ci]
            self.flag[t] = 0
            self.alive[t] = 0
            self.free.push_back(t)
        cdef dict edge_map = {}
        cdef int tri, vslot, a, b, c, outer, outer_slot
        for e_from, e_to, outer, outer_slot in boundary:
            if e_from == _INF:
                tri = self._new_tri(e_to, v, _INF)
            elif e_to == _INF:
                tri = self._new_tri(v, e_from, _INF)
            else:
                tri = self._new_tri(e_from, e_to, v)
            base = 3 * tri
            vslot = 0
            while self.tv[base + vslot] != v:
                vslot += 1
            self._link(tri, vslot, outer, outer_slot)
            a = self.tv[base]
            b = self.tv[base + 1]
            c = self.tv[base + 2]
            edge_map[(a, b)] = (tri, 2)
            edge_map[(b, c)] = (tri, 0)
            edge_map[(c, a)] = (tri, 1)
            if a != _INF:
                self.vhint[a] = tri
            if b != _INF:
                self.vhint[b] = tri
            if c != _INF:
                self.vhint[c] = tri
        for (a, b), (tri, slot) in edge_map.items():
            rev = edge_map.get((b, a))
            if rev is not None:
                self._link(tri, slot, <int>rev[0], <int>rev[1])
        self._hint = self.vhint[v]

    # -- queries ----------------------------------------------------------

    def triangles(self):
        """All finite triangles as stored (counterclockwise) vertex triples."""
        cdef list out = []
        cdef int t, base, a, b, c
        for t in range(<int>self.alive.size()):
            if not self.alive[t]:
                continue
            base = 3 * t
            a = self.tv[base]
            b = self.tv[base + 1]
            c = self.tv[base + 2]
            if a != _INF and b != _INF and c != _INF:
                out.append((a, b, c))
        return out

    def hull(self):
        """Hull vertex ids in counterclockwise order."""
        cdef int start = -1
        cdef int t, base
        for t in range(<int>self.alive.size()):
            if self.alive[t] and self.tv[3 * t + 2] == _INF:
                start = t
                break
        if start < 0:
            return []
        cdef list out = []
        t = start
        while True:
            base = 3 * t
            out.append(self.tv[base + 1])
            t = self.tn[base + 1]
            if t == start:
                break
        return out

    def neighbors_cycle(self, int v):
        """Neighbors of v in counterclockwise cyclic order: (list, on_hull)."""
        cdef int start = self.vhint[v]
        cdef list ring = []
        cdef int t = start
        cdef int base, i
        while True:
            base = 3 * t
            if self.tv[base] == v:
                i = 0
            elif self.tv[base + 1] == v:
                i = 1
            else:
                i = 2
            ring.append(self.tv[base + (i + 1) % 3])
            t = self.tn[base + (i + 1) % 3]
            if t == start:
                break
        cdef int k
        if _INF in ring:
            k = ring.index(_INF)
            ring = ring[k + 1:] + ring[:k]
            return ring, True
        return ring, False

    cdef bint _touches(self, int t, object x, object y):
        # closed-disk conflict test; ties count as touching and are never
        # recorded.  Object math front ends accept rational query coordinates.
        cdef int base = 3 * t
        cdef int a = self.tv[base]
        cdef int b = self.tv[base + 1]
        cdef int c = self.tv[base + 2]
        cdef int tmp
        if a == _INF:
            tmp = a; a = b; b = c; c = tmp
        elif b == _INF:
            tmp = c; c = b; b = a; a = tmp
        if c == _INF:
            return orient2d(self.px[a], self.py[a], self.px[b], self.py[b], x, y) >= 0
        return incircle(self.px[a], self.py[a], self.px[b], self.py[b],
                        self.px[c], self.py[c], x, y) >= 0

    def conflict_neighbors(self, x, y, start_vertex=-1):
        """Finite vertices of every triangle whose closed circumdisk holds (x, y).

        Read-only; mirrors the pure kernel.  Query coordinates may be any
        exact number type, so predicates run through the object front ends.
        """
        cdef int n = <int>self.alive.size()
        cdef int t = -1
        cdef int i, base, a, b, c, cur, slot, nb
        cdef int sv = start_vertex
        if 0 <= sv < <int>self.vhint.size():
            t = self.vhint[sv]
        if t < 0 or t >= n or not self.alive[t]:
            t = self._hint
        if t >= n or not self.alive[t]:
            for i in range(n):
                if self.alive[i]:
                    t = i
                    break
        if self.tv[3 * t + 2] == _INF:
            t = self.tn[3 * t + 2]
        cdef long long steps = 0
        cdef long long limit = 4 * <long long>n + 32
        while True:
            steps += 1
            if steps > limit:
                raise DegenerateInputError("point location walk did not terminate")
            base = 3 * t
            a = self.tv[base]
            b = self.tv[base + 1]
            c = self.tv[base + 2]
            if a == _INF or b == _INF or c == _INF:
                break
            if self.px[a] == x and self.py[a] == y:
                return [a]
            if self.px[b] == x and self.py[b] == y:
                return [b]
            if self.px[c] == x and self.py[c] == y:
                return [c]
            if orient2d(self.px[a], self.py[a], self.px[b], self.py[b], x, y) < 0:
                t = self.tn[base + 2]
            elif orient2d(self.px[b], self.py[b], self.px[c], self.py[c], x, y) < 0:
                t = self.tn[base]
            elif orient2d(self.px[c], self.py[c], self.px[a], self.py[a], x, y) < 0:
                t = self.tn[base + 1]
            else:
                break
        seen = {t}
        cdef list stack = [t]
        verts = set()
        while stack:
            cur = stack.pop()
            base = 3 * cur
            for i in range(3):
                a = self.tv[base + i]
                if a != _INF:
                    verts.add(a)
            for slot in range(3):
                nb = self.tn[base + slot]
                if nb not in seen and self._touches(nb, x, y):
                    seen.add(nb)
                    stack.append(nb)
        return sorted(verts)

    def vertex_count(self):
        return <int>self.px.size()


def build_delaunay(px, py):
    """Delaunay triangulation of distinct integer points (at least 3).

    Raises OverflowError when a coordinate exceeds the compiled range;
    DegenerateInputError when all points are collinear or a duplicate exists.
    """
    cdef int n = len(px)
    if n < 3:
        raise DegenerateInputError("need at least 3 points to triangulate")
    cdef Triangulation tri = Triangulation.__new__(Triangulation)
    cdef int i
    cdef i64 cx, cy
    tri.px.reserve(n)
    tri.py.reserve(n)
    for i in range(n):
        cx = px[i]
        cy = py[i]
        if not (-_COORD_LIMIT < cx < _COORD_LIMIT and -_COORD_LIMIT < cy < _COORD_LIMIT):
            raise OverflowError("coordinate exceeds fast kernel range")
        tri.px.push_back(cx)
        tri.py.push_back(cy)
        tri.vhint.push_back(-1)
    cdef int i1 = -1
    for i in range(1, n):
        if tri.px[i] != tri.px[0] or tri.py[i] != tri.py[0]:
            i1 = i
            break
    if i1 < 0:
        raise DegenerateInputError("all points coincide", (0, 1))
    cdef int i2 = -1
    for i in range(1, n):
        if i == i1:
            continue
        if _orient_c(tri.px[0], tri.py[0], tri.px[i1], tri.py[i1], tri.px[i], tri.py[i]) != 0:
            i2 = i
            break
    if i2 < 0:
        raise DegenerateInputError("all points collinear", (0, i1))
    cdef int a = 0
    cdef int b = i1
    cdef int c = i2
    if _orient_c(tri.px[a], tri.py[a], tri.px[b], tri.py[b], tri.px[c], tri.py[c]) < 0:
        b, c = c, b
    cdef int t0 = tri._new_tri(a, b, c)
    cdef int gab = tri._new_tri(b, a, _INF)
    cdef int gbc = tri._new_tri(c, b, _INF)
    cdef int gca = tri._new_tri(a, c, _INF)
    tri._link(t0, 2, gab, 2)
    tri._link(t0, 0, gbc, 2)
    tri._link(t0, 1, gca, 2)
    tri._link(gab, 0, gca, 1)
    tri._link(gab, 1, gbc, 0)
    tri._link(gbc, 1, gca, 0)
    tri.vhint[a] = t0
    tri.vhint[b] = t0
    tri.vhint[c] = t0
    tri._hint = t0
    cdef int t, dup
    for i in range(n):
        if i == a or i == b or i == c:
            continue
        t, dup = tri._locate(tri.px[i], tri.py[i])
        if dup >= 0:
            raise DegenerateInputError("duplicate point", (dup, i))
        tri._insert_located(i, t)
    return tri


# -- position-class certification ------------------------------------------


cdef inline i64 _gcd64(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    while b != 0:
        t = a % b
        a = b
        b = t
    return a


cdef inline i128 _gcd128(i128 a, i128 b) noexcept nogil:
    cdef i128 t
    while b != 0:
        t = a % b
        a = b
        b = t
    return a


cdef object _i128_to_py(i128 v):
    cdef bint neg = v < 0
    if neg:
        v = -v
    cdef unsigned long long lo = <unsigned long long>(v & <i128>0xFFFFFFFFFFFFFFFF)
    cdef unsigned long long hi = <unsigned long long>(v >> 64)
    out = (int(hi) << 64) | int(lo)
    return -out if neg else out


cdef inline i128 _gcd_mixed(i128 a, i128 b) noexcept nogil:
    # a, b >= 0; run euclid in 128 bits only until both operands fit in 64
    cdef i128 t
    cdef i64 sa, sb, st
    while b != 0 and (a >> 62) != 0:
        t = a % b
        a = b
        b = t
    if b == 0:
        return a
    sa = <i64>a
    sb = <i64>b
    while sb != 0:
        st = sa % sb
        sa = sb
        sb = st
    return <i128>sa


cdef inline unsigned long long _mix64(unsigned long long x) noexcept nogil:
    x += <unsigned long long>0x9E3779B97F4A7C15
    x = (x ^ (x >> 30)) * <unsigned long long>0xBF58476D1CE4E5B9
    x = (x ^ (x >> 27)) * <unsigned long long>0x94D049BB133111EB
    return x ^ (x >> 31)


cdef inline unsigned long long _hash_center(i128 ux, i128 uy, i128 dd) noexcept nogil:
    cdef unsigned long long h = 0x51AF3B41
    h = _mix64(h ^ <unsigned long long>(ux & <i128>0xFFFFFFFFFFFFFFFF))
    h = _mix64(h ^ <unsigned long long>(ux >> 64))
    h = _mix64(h ^ <unsigned long long>(uy & <i128>0xFFFFFFFFFFFFFFFF))
    h = _mix64(h ^ <unsigned long long>(uy >> 64))
    h = _mix64(h ^ <unsigned long long>(dd & <i128>0xFFFFFFFFFFFFFFFF))
    h = _mix64(h ^ <unsigned long long>(dd >> 64))
    return h


def certify_delaunay(px, py):
    """None if no duplicate, collinear triple, or cocircular quadruple exists.

    Otherwise returns (kind, indices) naming one offending tuple.  Matches the
    pure kernel's output exactly.
    """
    cdef int n = len(px)
    cdef vector[i64] xs
    cdef vector[i64] ys
    cdef int i, j, k
    cdef i64 cx, cy
    for i in range(n):
        cx = px[i]
        cy = py[i]
        if not (-_COORD_LIMIT < cx < _COORD_LIMIT and -_COORD_LIMIT < cy < _COORD_LIMIT):
            raise OverflowError("coordinate exceeds fast kernel range")
        xs.push_back(cx)
        ys.push_back(cy)
    seen_pt = {}
    for i in range(n):
        key = (px[i], py[i])
        if key in seen_pt:
            return ("duplicate", (seen_pt[key], i))
        seen_pt[key] = i
    cdef i64 dx, dy, g
    cdef dict dirs
    for i in range(n):
        dirs = {}
        for j in range(i + 1, n):
            dx = xs[j] - xs[i]
            dy = ys[j] - ys[i]
            g = _gcd64(dx if dx >= 0 else -dx, dy if dy >= 0 else -dy)
            dx = dx // g
            dy = dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx = -dx
                dy = -dy
            d = (dx, dy)
            if d in dirs:
                return ("collinear", (i, dirs[d], j))
            dirs[d] = j
    # Cocircularity: bucket reduced circumcenters in a C-level hash map; only
    # exact center matches pay for the big-integer radius comparison.
    cdef unordered_map[unsigned long long, int] head
    cdef vector[int] nxt
    cdef vector[i128] eux, euy, edd
    cdef vector[int] ei, ej, ek
    cdef i128 ax, ay, bx, by, ccx, ccy, det, aa, bb, cc, ux, uy, gg, dd
    cdef unsigned long long h
    cdef int idx, new_idx, last
    for i in range(n):
        ax = xs[i]
        ay = ys[i]
        aa = ax * ax + ay * ay
        for j in range(i + 1, n):
            bx = xs[j]
            by = ys[j]
            bb = bx * bx + by * by
            for k in range(j + 1, n):
                ccx = xs[k]
                ccy = ys[k]
                cc = ccx * ccx + ccy * ccy
                det = 2 * (ax * (by - ccy) + bx * (ccy - ay) + ccx * (ay - by))
                ux = aa * (by - ccy) + bb * (ccy - ay) + cc * (ay - by)
                uy = aa * (ccx - bx) + bb * (ax - ccx) + cc * (bx - ax)
                gg = _gcd_mixed(_gcd_mixed(_abs128(ux), _abs128(uy)), _abs128(det))
                if det < 0:
                    gg = -gg
                ux = ux / gg
                uy = uy / gg
                dd = det / gg
                h = _hash_center(ux, uy, dd)
                it = head.find(h)
                if it == head.end():
                    new_idx = <int>eux.size()
                    eux.push_back(ux); euy.push_back(uy); edd.push_back(dd)
                    ei.push_back(i); ej.push_back(j); ek.push_back(k)
                    nxt.push_back(-1)
                    head[h] = new_idx
                    continue
                idx = dereference(it).second
                last = idx
                pux = puy = pdd = prn = None
                while idx != -1:
                    if eux[idx] == ux and euy[idx] == uy and edd[idx] == dd:
                        if prn is None:
                            pux = _i128_to_py(ux)
                            puy = _i128_to_py(uy)
                            pdd = _i128_to_py(dd)
                            prn = (int(px[i]) * pdd - pux) ** 2 + (int(py[i]) * pdd - puy) ** 2
                        orn = (int(px[ei[idx]]) * pdd - pux) ** 2 + (int(py[ei[idx]]) * pdd - puy) ** 2
                        if orn == prn:
                            four = sorted({ei[idx], ej[idx], ek[idx], i, j, k})[:4]
                            return ("cocircular", tuple(four))
                    last = idx
                    idx = nxt[idx]
                new_idx = <int>eux.size()
                eux.push_back(ux); euy.push_back(uy); edd.push_back(dd)
                ei.push_back(i); ej.push_back(j); ek.push_back(k)
                nxt.push_back(-1)
                nxt[last] = new_idx
    return None


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


cdef inline i64 _pow_mod(i64 base, i64 e, i64 p) noexcept nogil:
    cdef i128 r = 1
    cdef i128 b = base % p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return <i64>r


def cocircular_scan_mod(rx, ry, p_in):
    """Fingerprint scan for cocircular quadruples modulo a prime.

    ``rx``/``ry`` hold the coordinates reduced into [0, p); the caller must
    already have ruled out duplicate points and collinear triples exactly.
    Each triple is keyed by its circumcircle reduced mod p (center times the
    inverted denominator, plus the squared radius).  Two triples of one true
    circle always collide unless some denominator vanishes mod p, so a clean
    complete scan proves no cocircular quadruple exists.  A key collision is
    only a candidate: the caller re-checks the pair in exact arithmetic.

    Returns ``(status, pairs)`` where ``pairs`` lists candidate collisions
    ``((i, j, k), (i2, j2, k2))`` in scan order and status is 0 for a
    complete scan, 1 when the scan stopped after too many candidates, 2 when
    a denominator vanished mod p (caller retries with another prime).
    """
    cdef i64 p = p_in
    if p <= 2 or p >= (<i64>1 << 31):
        raise ValueError("prime out of range")
    cdef int n = len(rx)
    if n >= (1 << 21):
        raise OverflowError("too many points for packed triple ids")
    cdef long long total = (<long long>n) * (n - 1) * (n - 2) // 6
    if total > 150_000_000:
        raise OverflowError("too many triples for the modular scan")
    cdef vector[i64] xs, ys, sq
    cdef int i, j, k
    cdef i64 v
    for i in range(n):
        v = rx[i]
        xs.push_back(v)
        v = ry[i]
        ys.push_back(v)
        sq.push_back(<i64>((<i128>xs[i] * xs[i] + <i128>ys[i] * ys[i]) % p))
    cdef vector[i64] den
    den.reserve(total)
    cdef i64 ax, ay, bx, by, cx, cy, dm
    cdef i128 acc
    for i in range(n):
        ax = xs[i]
        ay = ys[i]
        for j in range(i + 1, n):
            bx = xs[j]
            by = ys[j]
            for k in range(j + 1, n):
                cx = xs[k]
                cy = ys[k]
                acc = (<i128>ax) * (by - cy) + (<i128>bx) * (cy - ay) + (<i128>cx) * (ay - by)
                acc = (2 * acc) % p
                if acc < 0:
                    acc += p
                if acc == 0:
                    return (2, [])
                den.push_back(<i64>acc)
    # Batch inversion: one Fermat exponentiation for the whole pass.
    cdef vector[i64] inv
    inv.resize(den.size())
    cdef i64 run = 1
    cdef long long t
    for t in range(<long long>den.size()):
        inv[t] = run
        run = <i64>((<i128>run * den[t]) % p)
    cdef i64 back = _pow_mod(run, p - 2, p)
    for t in range(<long long>den.size() - 1, -1, -1):
        inv[t] = <i64>((<i128>inv[t] * back) % p)
        back = <i64>((<i128>back * den[t]) % p)
    cdef long long cap = 1
    while cap < 2 * total + 4:
        cap <<= 1
    cdef u64 mask = <u64>cap - 1
    cdef vector[int] slots
    slots.assign(cap, -1)
    cdef vector[u64] hs, tid
    hs.reserve(total)
    tid.reserve(total)
    pairs = []
    cdef i64 sa, ux, uy, kx, ky, e1, e2, kr, dinv
    cdef u64 h, pos, packed
    cdef int e
    t = 0
    for i in range(n):
        ax = xs[i]
        ay = ys[i]
        sa = sq[i]
        for j in range(i + 1, n):
            bx = xs[j]
            by = ys[j]
            for k in range(j + 1, n):
                cx = xs[k]
                cy = ys[k]
                dinv = inv[t]
                t += 1
                acc = (<i128>sa) * (by - cy) + (<i128>sq[j]) * (cy - ay) + (<i128>sq[k]) * (ay - by)
                ux = <i64>(acc % p)
                if ux < 0:
                    ux += p
                acc = (<i128>sa) * (cx - bx) + (<i128>sq[j]) * (ax - cx) + (<i128>sq[k]) * (bx - ax)
                uy = <i64>(acc % p)
                if uy < 0:
                    uy += p
                kx = <i64>((<i128>ux * dinv) % p)
                ky = <i64>((<i128>uy * dinv) % p)
                e1 = ax - kx
                e2 = ay - ky
                kr = <i64>((<i128>e1 * e1 + <i128>e2 * e2) % p)
                h = _mix64(_mix64((<u64>kx << 31) | <u64>ky) ^ <u64>kr)
                packed = ((<u64>i) << 42) | ((<u64>j) << 21) | <u64>k
                pos = h & mask
                while True:
                    e = slots[pos]
                    if e == -1:
                        slots[pos] = <int>hs.size()
                        hs.push_back(h)
                        tid.push_back(packed)
                        break
                    if hs[e] == h:
                        other = tid[e]
                        pairs.append((
                            (other >> 42, (other >> 21) & 0x1FFFFF, other & 0x1FFFFF),
                            (i, j, k),
                        ))
                        if len(pairs) >= 4096:
                            return (1, pairs)
                    pos = (pos + 1) & mask
    return (0, pairs)
