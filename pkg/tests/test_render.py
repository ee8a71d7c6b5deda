import math
import re

import pytest

from conftest import complete, path
from strata.classes import tree_leveled_drawing
from strata.errors import InvalidObject, RayStyleNeedsThreeTracks
from strata.layout import LeveledDrawing, TrackLayout
from strata.render import RenderSpec, render_svg


def circles(svg):
    return {int(v): (float(x), float(y)) for v, x, y in re.findall(r'<circle id="v(\d+)" cx="([-\d.]+)" cy="([-\d.]+)"', svg)}


def test_path_drawing_elements():
    g = path(4)
    svg = render_svg(g, tree_leveled_drawing(g))
    assert svg.count("<circle") == 4
    assert svg.count('class="edge"') == 3
    xy = circles(svg)
    assert [xy[v][1] for v in range(4)] == [20.0, 60.0, 100.0, 140.0]


def test_triangle_rays():
    spec = RenderSpec(style="rays", unit=40, margin=20)
    svg = render_svg(complete(3), TrackLayout(((0,), (1,), (2,))), spec)
    xy = circles(svg)
    assert len(xy) == 3
    c = 20 + 2 * 40
    angles = sorted(round(math.degrees(math.atan2(c - y, x - c))) % 360 for x, y in xy.values())
    assert angles == [0, 120, 240]
    assert all(math.isclose(math.hypot(x - c, y - c), 40, abs_tol=0.01) for x, y in xy.values())


def test_deterministic():
    g = path(5)
    d = tree_leveled_drawing(g)
    assert render_svg(g, d) == render_svg(g, d)
    t = TrackLayout(((0, 3), (1, 4), (2,)))
    spec = RenderSpec(style="rays")
    assert render_svg(g, t, spec) == render_svg(g, t, spec)


def test_render_errors():
    g = path(3)
    with pytest.raises(InvalidObject):
        render_svg(g, LeveledDrawing(((0, 1), (2,))))
    with pytest.raises(RayStyleNeedsThreeTracks):
        render_svg(g, TrackLayout(((0, 2), (1,), (), ())), RenderSpec(style="rays"))
    with pytest.raises(RayStyleNeedsThreeTracks):
        render_svg(g, tree_leveled_drawing(g), RenderSpec(style="rays"))
    with pytest.raises(ValueError):
        RenderSpec(unit=0)
