"""Geometric kernel front end.

Two interchangeable implementations live below: ``_pure`` (always available)
and ``_fast`` (compiled, optional).  The fast kernel only accepts coordinates
with |x| < 2**29; calls outside that range are routed to the pure kernel, so
callers never need to care.  ``WG_FORCE_PURE_KERNEL=1`` or ``set_kernel``
pins the choice, which the benchmark harness uses to compare both.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _fast  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - build environment dependent
    _fast = None

_active = _pure
if _fast is not None and os.environ.get("WG_FORCE_PURE_KERNEL") != "1":
    _active = _fast

INF = _pure.INF
_FAST_COORD_LIMIT = _fast.COORD_LIMIT if _fast is not None else 0


def kernel_kind() -> str:
    return _active.KIND


def available_kernels() -> tuple[str, ...]:
    return ("pure", "fast") if _fast is not None else ("pure",)


def set_kernel(kind: str) -> None:
    global _active
    if kind == "pure":
        _active = _pure
    elif kind == "fast":
        if _fast is None:
            raise RuntimeError("compiled kernel is not available")
        _active = _fast
    else:
        raise ValueError(f"unknown kernel {kind!r}")


def orient2d(ax, ay, bx, by, cx, cy) -> int:
    return _active.orient2d(ax, ay, bx, by, cx, cy)


def incircle(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    return _active.incircle(ax, ay, bx, by, cx, cy, dx, dy)


def _fits_fast(px, py) -> bool:
    lim = _FAST_COORD_LIMIT
    return all(-lim < v < lim for v in px) and all(-lim < v < lim for v in py)


def build_delaunay(px, py, coord_bound: int = 0):
    """Delaunay triangulation of integer points, fastest safe kernel.

    ``coord_bound`` covers points the caller will insert later: when it
    exceeds the compiled range the pure structure is built instead, so those
    insertions cannot overflow.
    """
    if (
        _active is not _pure
        and coord_bound < _FAST_COORD_LIMIT
        and _fits_fast(px, py)
    ):
        return _fast.build_delaunay(px, py)
    return _pure.build_delaunay(px, py)


# Retry primes for the modular cocircularity scan.  A nonzero circumcenter
# denominator of b bits is divisible by fewer than b/30 of these, so the list
# is effectively inexhaustible for the coordinate sizes we certify.
_CERT_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
)


def _circle_raw(px, py, i, j, k):
    ax, ay = px[i], py[i]
    bx, by = px[j], py[j]
    cx, cy = px[k], py[k]
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    aa = ax * ax + ay * ay
    bb = bx * bx + by * by
    cc = cx * cx + cy * cy
    ux = aa * (by - cy) + bb * (cy - ay) + cc * (ay - by)
    uy = aa * (cx - bx) + bb * (ax - cx) + cc * (bx - ax)
    rn = (ax * d - ux) ** 2 + (ay * d - uy) ** 2
    return d, ux, uy, rn


def _confirm_cocircular(px, py, t1, t2):
    """Exact check that two triples span one circle; the four indices if so."""
    d1, ux1, uy1, rn1 = _circle_raw(px, py, *t1)
    d2, ux2, uy2, rn2 = _circle_raw(px, py, *t2)
    if ux1 * d2 != ux2 * d1 or uy1 * d2 != uy2 * d1:
        return None
    if rn1 * d2 * d2 != rn2 * d1 * d1:
        return None
    return tuple(sorted(set(t1) | set(t2))[:4])


def _certify_big(px, py):
    """Certifier for coordinates beyond the compiled int128 range.

    Duplicates and collinear triples are found exactly in Python.  The cubic
    cocircularity sweep runs compiled modulo a prime: a complete scan whose
    candidate collisions are all refuted exactly certifies the clean answer,
    because equal circles always collide mod p.  Degenerate primes (a
    vanishing denominator) or an aborted scan fall through, ultimately to
    the exact pure sweep.
    """
    found = _pure.find_duplicate(px, py) or _pure.find_collinear(px, py)
    if found is not None:
        return found
    if len(px) < 4:
        return None
    for p in _CERT_PRIMES:
        rx = [v % p for v in px]
        ry = [v % p for v in py]
        try:
            status, pairs = _fast.cocircular_scan_mod(rx, ry, p)
        except OverflowError:
            break
        if status == 2:
            continue
        for t1, t2 in pairs:
            four = _confirm_cocircular(px, py, t1, t2)
            if four is not None:
                return ("cocircular", four)
        if status == 0:
            return None
        break
    return _pure.find_cocircular(px, py)


def certify_delaunay(px, py):
    if _active is not _pure:
        if _fits_fast(px, py):
            return _fast.certify_delaunay(px, py)
        return _certify_big(px, py)
    return _pure.certify_delaunay(px, py)


def certify_axis(px, py):
    return _active.certify_axis(px, py)
