"""Deterministic SVG drawings of diagrams in the 2n-gon.

Green diameters are straight, red diameters are drawn as a wave so that a
paired diameter stays readable.
"""

from __future__ import annotations

import math

from .geometry import GREEN, ArcSet, Diameter, context

SIZE = 400
MARGIN = 40
WAVES = 6
AMPLITUDE = 5.0
STROKE = {"pair": "#222222", "green": "#1b9e3a", "red": "#d62728"}


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def vertex_position(v: int, size: int, box: int = SIZE) -> tuple[float, float]:
    """Vertex 0 at the bottom, counterclockwise on screen."""
    r = box / 2 - MARGIN
    theta = -math.pi / 2 + 2 * math.pi * v / size
    return box / 2 + r * math.cos(theta), box / 2 - r * math.sin(theta)


def _wave(p: tuple[float, float], q: tuple[float, float], samples: int = 96) -> str:
    (x0, y0), (x1, y1) = p, q
    length = math.hypot(x1 - x0, y1 - y0) or 1.0
    nx, ny = -(y1 - y0) / length, (x1 - x0) / length
    pts = []
    for s in range(samples + 1):
        t = s / samples
        off = AMPLITUDE * math.sin(2 * math.pi * WAVES * t)
        pts.append(f"{_fmt(x0 + t * (x1 - x0) + off * nx)},{_fmt(y0 + t * (y1 - y0) + off * ny)}")
    return " ".join(pts)


def render_svg(X: ArcSet, box: int = SIZE) -> str:
    ctx = context(X.n)
    size = ctx.size
    pos = [vertex_position(v, size, box) for v in range(size)]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{box}" height="{box}" '
        f'viewBox="0 0 {box} {box}">',
        f'<title>diagram in the {size}-gon</title>',
    ]
    if size == 2:
        r = box / 2 - MARGIN
        out.append(f'<circle cx="{_fmt(box / 2)}" cy="{_fmt(box / 2)}" r="{_fmt(r)}" '
                   'fill="none" stroke="#888888" stroke-width="1.5"/>')
    else:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pos)
        out.append(f'<polygon points="{pts}" fill="none" stroke="#888888" stroke-width="1.5"/>')

    for obj in ctx.objects_of(X):
        if isinstance(obj, Diameter):
            p, q = pos[obj.i], pos[obj.i + ctx.n]
            if obj.color == GREEN:
                out.append(f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" '
                           f'y2="{_fmt(q[1])}" stroke="{STROKE["green"]}" stroke-width="2"/>')
            else:
                out.append(f'<polyline points="{_wave(p, q)}" fill="none" '
                           f'stroke="{STROKE["red"]}" stroke-width="2"/>')
            continue
        for a, b in ctx.members(obj):
            p, q = pos[a], pos[b]
            out.append(f'<line x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" '
                       f'y2="{_fmt(q[1])}" stroke="{STROKE["pair"]}" stroke-width="1.5"/>')

    for v, (x, y) in enumerate(pos):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="#000000"/>')
        dx, dy = x - box / 2, y - box / 2
        norm = math.hypot(dx, dy) or 1.0
        tx, ty = x + 16 * dx / norm, y + 16 * dy / norm
        out.append(f'<text x="{_fmt(tx)}" y="{_fmt(ty)}" font-size="12" text-anchor="middle" '
                   f'dominant-baseline="middle">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
