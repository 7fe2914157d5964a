"""Deterministic SVG rendering of instances and computed graphs.

All placement happens in exact rational arithmetic inside a 1000x1000
viewport; numbers become floats only in the final string formatting, so two
renders of the same input are byte-identical.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .geometry import Point2
from .instances import InstanceFile

_VIEW = 1000
_MARGIN = 40


def _sqrt_upper(v: Fraction) -> Fraction:
    """Rational upper bound on sqrt(v) for bounding-box purposes."""
    if v <= 0:
        return Fraction(0)
    return Fraction(isqrt(v.numerator * v.denominator) + 1, v.denominator)


def _fmt(v: float) -> str:
    if v > 10**7:
        v = float(10**7)
    elif v < -(10**7):
        v = float(-(10**7))
    return f"{v:.2f}"


class _Frame:
    """Exact affine map from instance coordinates into the viewport."""

    def __init__(self, xs: Sequence[Fraction], ys: Sequence[Fraction]):
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        span = max(x1 - x0, y1 - y0)
        if span == 0:
            span = Fraction(1)
        self.scale = Fraction(_VIEW - 2 * _MARGIN, span)
        self.x0 = x0 - (span - (x1 - x0)) / 2
        self.y1 = y1 + (span - (y1 - y0)) / 2

    def map(self, p: Point2) -> tuple[float, float]:
        return (
            float(_MARGIN + (p.x - self.x0) * self.scale),
            float(_MARGIN + (self.y1 - p.y) * self.scale),
        )

    def length(self, v: Fraction) -> float:
        return float(v * self.scale)


def render_svg(instance: InstanceFile, edges: Iterable[tuple[int, int]] = ()) -> str:
    """SVG document: edges, sidecar geometry dashed, vertices solid, witnesses open."""
    cfg = instance.config
    xs = [p.x for p in cfg.vertices] + [p.x for p in cfg.witnesses]
    ys = [p.y for p in cfg.vertices] + [p.y for p in cfg.witnesses]
    for d in instance.disks:
        r = d.radius if d.radius is not None else _sqrt_upper(d.radius_sq)
        xs += [d.center.x - r, d.center.x + r]
        ys += [d.center.y - r, d.center.y + r]
    for s in instance.squares:
        xs += [s.corner.x, s.corner.x + s.side]
        ys += [s.corner.y, s.corner.y + s.side]
    if not xs:
        xs = ys = [Fraction(0)]
    frame = _Frame(xs, ys)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_VIEW} {_VIEW}" '
        f'width="{_VIEW}" height="{_VIEW}">',
        f'<rect width="{_VIEW}" height="{_VIEW}" fill="white"/>',
    ]
    for i, j in sorted(edges):
        x1, y1 = frame.map(cfg.vertices[i])
        x2, y2 = frame.map(cfg.vertices[j])
        out.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
    for d in instance.disks:
        cx, cy = frame.map(d.center)
        if d.radius is not None:
            r = frame.length(d.radius)
        else:
            r = math.sqrt(max(0.0, float(d.radius_sq * frame.scale * frame.scale)))
        out.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" fill="none" '
            'stroke="#888888" stroke-dasharray="6 4"/>'
        )
    for s in instance.squares:
        x, y = frame.map(Point2(s.corner.x, s.corner.y + s.side))
        side = frame.length(s.side)
        out.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(side)}" height="{_fmt(side)}" '
            'fill="none" stroke="#888888" stroke-dasharray="6 4"/>'
        )
    for p in cfg.vertices:
        x, y = frame.map(p)
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="black"/>')
    for w in cfg.witnesses:
        x, y = frame.map(w)
        out.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="white" stroke="black"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
