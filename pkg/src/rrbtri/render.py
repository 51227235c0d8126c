"""SVG figures of sector fans and good-sector runs.

Floating point is used only for drawing coordinates; every count shown comes
from the exact layer.  Output is a deterministic SVG 1.1 string.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .pointset import ColoredPointSet
from .sectors import GoodSectorRun, SectorFan

RED_INK = "#c62828"
BLUE_INK = "#1565c0"
FILL_OPACITY = "0.1"


class _Frame:
    """Maps plane coordinates to the canvas (y axis flipped)."""

    def __init__(self, pts, size: int, margin: int = 30):
        xs = [p[0] for p in pts] or [0]
        ys = [p[1] for p in pts] or [0]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, 1)
        self.scale = (size - 2 * margin) / span
        self.margin = margin
        self.size = size

    def __call__(self, x, y):
        return (self.margin + (x - self.x0) * self.scale,
                self.size - self.margin - (y - self.y0) * self.scale)


def _f(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _wedge(frame, apex, start, end, reach) -> str:
    """Polygon approximating the ccw sector from ``start`` to ``end`` at ``apex``."""
    a0 = math.atan2(start[1], start[0])
    a1 = math.atan2(end[1], end[0])
    sweep = (a1 - a0) % (2 * math.pi)
    if sweep == 0:
        sweep = 2 * math.pi if (start[0] * end[0] + start[1] * end[1]) < 0 else 0.0
    steps = max(2, int(sweep / (math.pi / 32)) + 1)
    pts = [frame(*apex)]
    for i in range(steps + 1):
        a = a0 + sweep * i / steps
        pts.append(frame(apex[0] + reach * math.cos(a), apex[1] + reach * math.sin(a)))
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)


def _label_at(frame, apex, start, end, reach):
    a0 = math.atan2(start[1], start[0])
    sweep = (math.atan2(end[1], end[0]) - a0) % (2 * math.pi)
    a = a0 + sweep / 2
    return frame(apex[0] + reach * math.cos(a), apex[1] + reach * math.sin(a))


def render_svg(s: ColoredPointSet, fan: SectorFan | None = None, run: GoodSectorRun | None = None,
               size: int = 600, title: str | None = None) -> str:
    pts = list(s.points)
    frame = _Frame(pts, size)
    xs = [p[0] for p in pts] or [0]
    ys = [p[1] for p in pts] or [0]
    reach = 2 * max(max(xs) - min(xs), max(ys) - min(ys), 1)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<defs><clipPath id="canvas"><rect x="0" y="0" '
        f'width="{size}" height="{size}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
    out.append('<g clip-path="url(#canvas)">')

    if fan is not None:
        apex = fan.apex
        L = len(fan.rays)
        for i in range(L):
            ink = BLUE_INK if fan.gap_blues[i] else RED_INK
            poly = _wedge(frame, apex, fan.rays[i], fan.rays[(i + 1) % L], reach)
            out.append(f'<polygon class="gap" points="{poly}" fill="{ink}" fill-opacity="{FILL_OPACITY}" stroke="none"/>')
        for ray in fan.rays:
            ax, ay = frame(*apex)
            bx, by = frame(apex[0] + ray[0] * reach / math.hypot(*ray), apex[1] + ray[1] * reach / math.hypot(*ray))
            out.append(f'<line class="ray" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}" '
                       'stroke="#555" stroke-width="0.8"/>')

    if run is not None:
        apex = s.reds[run.r0]
        for i, reg in enumerate(run.regions()):
            last = i == run.k
            ink = RED_INK if last else BLUE_INK
            poly = _wedge(frame, apex, reg.start, reg.end, reach)
            out.append(f'<polygon class="{"terminal" if last else "good"}" points="{poly}" fill="{ink}" '
                       f'fill-opacity="{FILL_OPACITY}" stroke="{ink}" stroke-width="0.6"/>')
            lx, ly = _label_at(frame, apex, reg.start, reg.end, reach / 6)
            lx = min(size - 12, max(12, lx))
            ly = min(size - 8, max(16, ly))
            text = "T" if last else f"G{i + 1}"
            out.append(f'<text x="{_f(lx)}" y="{_f(ly)}" font-family="sans-serif" font-size="13" '
                       f'text-anchor="middle">{text}</text>')
        ux, uy = run.axis[0] * reach / math.hypot(*run.axis), run.axis[1] * reach / math.hypot(*run.axis)
        ax, ay = frame(apex[0] - ux, apex[1] - uy)
        bx, by = frame(apex[0] + ux, apex[1] + uy)
        out.append(f'<line class="axis" x1="{_f(ax)}" y1="{_f(ay)}" x2="{_f(bx)}" y2="{_f(by)}" '
                   'stroke="black" stroke-width="1" stroke-dasharray="6,4"/>')

    for i, p in enumerate(pts):
        x, y = frame(*p)
        ink = RED_INK if i < s.n else BLUE_INK
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="3.5" fill="{ink}"/>')
    marked = run.r0 if run is not None else (fan.apex_index if fan is not None else None)
    if marked is not None:
        x, y = frame(*s.reds[marked])
        out.append(f'<text x="{_f(x + 6)}" y="{_f(y - 6)}" font-family="sans-serif" font-size="13">r0</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
