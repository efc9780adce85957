"""SVG pictures of the moment polytope, its chambers, subdivisions and charges.

This is the only module that converts rationals to floats, and only for
drawing coordinates.
"""

from __future__ import annotations

from math import atan2
from xml.sax.saxutils import escape

from .action import WeightSystem
from .chambers import build_chambers
from .charges import assign_charges
from .errors import UnsupportedRankError
from .geometry import relative_interior_point
from .git import slice_polytope
from .linalg import independent_subset, sub

WIDTH = 640
MARGIN = 40
ROW = 48


def _header(width: float, height: float) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<style>text{font-family:sans-serif;font-size:11px}</style>',
    ]


def _text(x: float, y: float, s: str, anchor: str = "start") -> str:
    return f'<text x="{x:.2f}" y="{y:.2f}" text-anchor="{anchor}">{escape(s)}</text>'


def _polygon_order(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: atan2(p[1] - cy, p[0] - cx))


def _slice_inset(ws: WeightSystem, r, x0: float, y0: float, size: float) -> list[str]:
    """Draw a slice polytope of dimension at most two in a square box."""
    s = slice_polytope(ws, r)
    out = [f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{size:.2f}" height="{size:.2f}" fill="none" stroke="#ccc"/>']
    label = f"r={'/'.join(str(c) for c in s.r)}: f={tuple(s.f_vector)}"
    out.append(_text(x0 + size / 2, y0 + size + 12, label, "middle"))
    if s.dim > 2:
        out.append(_text(x0 + size / 2, y0 + size / 2, f"dim {s.dim}", "middle"))
        return out
    v0 = s.vertices[0]
    diffs = [sub(v, v0) for v in s.vertices[1:]]
    cols = independent_subset([tuple(d[j] for d in diffs) for j in range(len(v0))])[:2] or [0]
    pts = [tuple(float(v[j]) for j in cols) for v in s.vertices]
    if len(cols) == 1:
        pts = [(p[0], 0.0) for p in pts]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = size * 0.15
    scale = (size - 2 * pad) / span

    def tr(p):
        return (x0 + pad + (p[0] - min(xs)) * scale, y0 + size - pad - (p[1] - min(ys)) * scale)

    pts = [tr(p) for p in pts]
    if s.dim == 2:
        ring = " ".join(f"{x:.2f},{y:.2f}" for x, y in _polygon_order(pts))
        out.append(f'<polygon points="{ring}" fill="#dde8f5" stroke="#246"/>')
    elif s.dim == 1:
        (ax, ay), (bx, by) = pts[0], pts[-1]
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="#246" stroke-width="2"/>')
    for x, y in pts:
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="#246"/>')
    return out


def _plot_line(ws: WeightSystem, gamma) -> str:
    cc = build_chambers(ws)
    lo = float(cc.P.vertices[0][0])
    hi = float(cc.P.vertices[-1][0])

    def x(v) -> float:
        return MARGIN + (float(v) - lo) / (hi - lo) * (WIDTH - 2 * MARGIN)

    subs = gamma.geo.subdivisions
    inset = 110
    height = MARGIN + ROW * (len(subs) + 1) + inset + 40
    out = _header(WIDTH, height)
    y = MARGIN
    out.append(_text(8, y - 14, "moment polytope and chambers"))
    out.append(f'<line x1="{x(lo):.2f}" y1="{y}" x2="{x(hi):.2f}" y2="{y}" stroke="black" stroke-width="2"/>')
    for ch in cc.chambers:
        if ch.dim == 0:
            v = ch.vertices[0][0]
            out.append(f'<line x1="{x(v):.2f}" y1="{y - 6}" x2="{x(v):.2f}" y2="{y + 6}" stroke="black"/>')
            out.append(_text(x(v), y + 18, str(v), "middle"))
    for i, sd in enumerate(subs):
        y = MARGIN + ROW * (i + 1)
        out.append(_text(8, y - 10, f"subdivision {i}"))
        for cell in sd:
            a, b = cell[0][0], cell[-1][0]
            out.append(
                f'<line x1="{x(a) + 2:.2f}" y1="{y}" x2="{x(b) - 2:.2f}" y2="{y}" stroke="#2a6" stroke-width="4"/>'
            )
            c = gamma.gamma(i, cell)[0]
            fill = "#c22" if c == gamma.principal[0] else "#fff"
            out.append(f'<circle cx="{x(c):.2f}" cy="{y}" r="4" fill="{fill}" stroke="#c22"/>')
            out.append(_text(x(c), y + 16, str(c), "middle"))
    y0 = MARGIN + ROW * (len(subs) + 1)
    centers = [relative_interior_point(ch.cell) for ch in cc.chambers if ch.dim <= 1]
    centers.sort()
    box = min(inset - 20, (WIDTH - 2 * MARGIN) / max(len(centers), 1) - 10)
    for t, r in enumerate(centers):
        out += _slice_inset(ws, r, MARGIN + t * (box + 10), y0, box)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _plot_plane(ws: WeightSystem, gamma) -> str:
    cc = build_chambers(ws)
    xs = [float(v[0]) for v in cc.P.vertices]
    ys = [float(v[1]) for v in cc.P.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    panel = 180
    subs = gamma.geo.subdivisions
    per_row = max(1, (WIDTH - MARGIN) // (panel + 20))
    rows = 1 + (len(subs) + per_row - 1) // per_row
    height = MARGIN + rows * (panel + 40)
    out = _header(WIDTH, height)

    def tr(p, ox, oy):
        s = (panel - 20) / span
        return (ox + 10 + (float(p[0]) - min(xs)) * s, oy + panel - 10 - (float(p[1]) - min(ys)) * s)

    def poly(vertices, ox, oy, fill, stroke):
        pts = [tr(v, ox, oy) for v in vertices]
        if len(pts) <= 2:
            (ax, ay), (bx, by) = pts[0], pts[-1]
            return f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" stroke="{stroke}"/>'
        ring = " ".join(f"{x:.2f},{y:.2f}" for x, y in _polygon_order(pts))
        return f'<polygon points="{ring}" fill="{fill}" stroke="{stroke}"/>'

    out.append(_text(MARGIN, MARGIN - 10, "chambers"))
    for ch in cc.chambers:
        if ch.dim == 1:
            out.append(poly(ch.vertices, MARGIN, MARGIN, "none", "#888"))
    for i, sd in enumerate(subs):
        ox = MARGIN + (i % per_row) * (panel + 20)
        oy = MARGIN + (1 + i // per_row) * (panel + 40)
        out.append(_text(ox, oy - 6, f"subdivision {i}"))
        for cell in sd:
            out.append(poly(cell, ox, oy, "#e4f2e4", "#2a6"))
            cx, cy = tr(gamma.gamma(i, cell), ox, oy)
            fill = "#c22" if gamma.gamma(i, cell) == gamma.principal else "#fff"
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3.5" fill="{fill}" stroke="#c22"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(ws: WeightSystem, principal, seed: int = 0) -> str:
    if ws.k > 2:
        raise UnsupportedRankError(f"plots are implemented for rank <= 2, got {ws.k}")
    gamma = assign_charges(ws, principal, seed)
    return _plot_line(ws, gamma) if ws.k == 1 else _plot_plane(ws, gamma)
