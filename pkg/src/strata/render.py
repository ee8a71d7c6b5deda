"""Deterministic SVG output for leveled drawings and track layouts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union
from xml.sax.saxutils import escape

from .errors import InvalidObject, RayStyleNeedsThreeTracks
from .graph import Graph
from .layout import LeveledDrawing, TrackLayout, validate_leveled_drawing, validate_track_layout


@dataclass(frozen=True)
class RenderSpec:
    unit: float = 40.0
    style: str = "leveled"  # "leveled" | "rays"
    margin: float = 20.0
    radius: float = 6.0

    def __post_init__(self):
        if self.unit <= 0 or self.margin < 0 or self.radius <= 0:
            raise ValueError("render dimensions must be positive")
        if self.style not in ("leveled", "rays"):
            raise ValueError(f"unknown style {self.style!r}")


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _document(width: float, height: float, edges: list[str], g: Graph, xy: dict[int, tuple[float, float]], spec: RenderSpec) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        '<g class="edges" stroke="#333" stroke-width="1.5" fill="none">',
    ]
    out += edges
    out.append("</g>")
    out.append('<g class="vertices" fill="#fff" stroke="#000" stroke-width="1.5">')
    for v in range(g.n):
        x, y = xy[v]
        out.append(f'<circle id="v{v}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(spec.radius)}"/>')
    out.append("</g>")
    out.append('<g class="labels" font-family="sans-serif" font-size="10" text-anchor="middle">')
    for v in range(g.n):
        x, y = xy[v]
        name = g.labels[v] if g.labels else str(v)
        out.append(f'<text x="{_f(x)}" y="{_f(y - spec.radius - 3)}">{escape(name)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _leveled(g: Graph, d: LeveledDrawing, spec: RenderSpec) -> str:
    xy = {
        v: (spec.margin + p * spec.unit, spec.margin + i * spec.unit)
        for i, level in enumerate(d.levels)
        for p, v in enumerate(level)
    }
    widest = max((len(lv) for lv in d.levels), default=1)
    width = 2 * spec.margin + max(widest - 1, 0) * spec.unit
    height = 2 * spec.margin + max(len(d.levels) - 1, 0) * spec.unit
    edges = [
        f'<path class="edge" d="M {_f(xy[u][0])} {_f(xy[u][1])} L {_f(xy[v][0])} {_f(xy[v][1])}"/>' for u, v in g.edges
    ]
    return _document(width, height, edges, g, xy, spec)


def _rays(g: Graph, t: TrackLayout, spec: RenderSpec) -> str:
    if len(t.tracks) != 3:
        raise RayStyleNeedsThreeTracks(f"rays style draws exactly 3 tracks, got {len(t.tracks)}")
    reach = (max((len(tr) for tr in t.tracks), default=0) + 1) * spec.unit
    c = spec.margin + reach
    angle = [math.radians(120 * i) for i in range(3)]
    xy = {}
    polar = {}
    for i, tr in enumerate(t.tracks):
        for k, v in enumerate(tr):
            r = (k + 1) * spec.unit
            polar[v] = (r, angle[i])
            xy[v] = (c + r * math.cos(angle[i]), c - r * math.sin(angle[i]))
    edges = []
    for u, v in g.edges:
        (ru, au), (rv, av) = polar[u], polar[v]
        # control point on the bisector of the two rays, pulled toward the origin
        mid = math.atan2(math.sin(au) + math.sin(av), math.cos(au) + math.cos(av))
        rc = 0.5 * (ru + rv) * 0.5
        cx, cy = c + rc * math.cos(mid), c - rc * math.sin(mid)
        edges.append(
            f'<path class="edge" d="M {_f(xy[u][0])} {_f(xy[u][1])} Q {_f(cx)} {_f(cy)} {_f(xy[v][0])} {_f(xy[v][1])}"/>'
        )
    return _document(2 * c, 2 * c, edges, g, xy, spec)


def render_svg(g: Graph, obj: Union[LeveledDrawing, TrackLayout], spec: RenderSpec = RenderSpec()) -> str:
    """SVG text for a drawing (``leveled`` style) or 3-track layout (``rays``).

    A track layout in ``leveled`` style is drawn with one row per track.
    """
    if isinstance(obj, LeveledDrawing):
        if spec.style == "rays":
            raise RayStyleNeedsThreeTracks("rays style needs a track layout")
        if not validate_leveled_drawing(g, obj):
            raise InvalidObject("drawing does not validate")
        return _leveled(g, obj, spec)
    if isinstance(obj, TrackLayout):
        if not validate_track_layout(g, obj):
            raise InvalidObject("track layout does not validate")
        if spec.style == "rays":
            return _rays(g, obj, spec)
        return _leveled(g, LeveledDrawing(tuple(tr for tr in obj.tracks if tr), weak=True), spec)
    raise InvalidObject(f"cannot render {type(obj).__name__}")
