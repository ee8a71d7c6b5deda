import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import G, cycle, graphs, path
from strata import io
from strata.classes import WiringDiagram, tree_leveled_drawing
from strata.cli import run_command
from strata.families import caterpillar, complete_binary_tree, grid, random_three_track_layout
from strata.graph import Layering, bfs_layering, bipartition, from_rotation
from strata.layout import (
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    TreeDecomposition,
)
from strata.transforms import spiral_wrap


def write(tmp_path, name, obj, host=None):
    p = tmp_path / name
    io.write(p, obj, host)
    return str(p)


def run(capsys, *argv):
    code = run_command([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# serialization


SAMPLES = [
    G(4, [(0, 1), (1, 2)]),
    grid(2, 3),
    G(2, [(0, 1)], labels=("a", "b")),
    TrackLayout(((0, 2), (1,), ())),
    LeveledDrawing(((0,), (1, 2)), weak=True),
    Layering(((0, 1), (2,))),
    PathDecomposition(({0, 1}, {1, 2})),
    TreeDecomposition(G(2, [(0, 1)]), ({0, 1}, {1, 2})),
    LayeredPathDecomposition(PathDecomposition(({0, 1},)), Layering(((0,), (1,)))),
    LayeredTreeDecomposition(TreeDecomposition(G(1, []), ({0, 1},)), Layering(((0,), (1,)))),
    WiringDiagram(3, (1, 2, 1)),
]


@pytest.mark.parametrize("obj", SAMPLES, ids=lambda o: type(o).__name__)
def test_round_trip(obj):
    text = io.dumps(obj)
    assert io.loads(text) == obj
    assert io.dumps(io.loads(text)) == text


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=0, max_n=9))
def test_graph_round_trip_property(g):
    assert io.loads(io.dumps(g)) == g


def test_hash_embedding(tmp_path):
    g = path(3)
    p = write(tmp_path, "d.json", LeveledDrawing(((0,), (1,), (2,))), g)
    obj, digest = io.read(p)
    assert digest == io.graph_sha256(g) != io.graph_sha256(path(4))


def test_format_errors():
    with pytest.raises(io.FormatError):
        io.loads("{")
    with pytest.raises(io.FormatError):
        io.loads('{"foo": 1}')
    with pytest.raises(io.FormatError):
        io.loads("[1, 2]")


# CLI examples


def test_solve_track_number_caterpillar(tmp_path, capsys):
    gp = write(tmp_path, "g.json", caterpillar(4, [2, 1, 0, 3]))
    code, out, _ = run(capsys, "solve", "track-number", gp)
    assert code == 0 and out.strip() == "2"


def test_validate_crossing_c4(tmp_path, capsys):
    gp = write(tmp_path, "g.json", cycle(4))
    lp = write(tmp_path, "t.json", TrackLayout(((0, 2), (1, 3))))
    code, out, err = run(capsys, "validate", "track-layout", gp, lp)
    assert code == 1
    report = json.loads(out)
    assert not report["ok"]
    crossing = [v for v in report["violations"] if v["kind"] == "XCrossing"]
    assert crossing and len(crossing[0]["edges"]) == 2
    assert "XCrossing" in err


def test_generate_grid3d(capsys):
    code, out, _ = run(capsys, "generate", "grid3d", 2)
    g = io.loads(out)
    assert code == 0 and g.n == 8 and g.m == 12


def test_generate_with_certificate(tmp_path, capsys):
    cert = tmp_path / "c.json"
    gp = tmp_path / "g.json"
    assert run(capsys, "generate", "tree-apex", 2, "--certificate", cert, "-o", gp)[0] == 0
    code, out, _ = run(capsys, "validate", "track-layout", gp, cert)
    assert code == 0 and json.loads(out)["tracks"] <= 4


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "solve", "nonsense", "x.json")[0] == 2
    assert run(capsys, "solve", "pathwidth", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "generate", "grid3d", "two")[0] == 2
    assert run(capsys, "generate", "grid3d", 0)[0] == 1


def test_budget_exit_code(tmp_path, capsys):
    gp = write(tmp_path, "g.json", path(12))
    code, _, err = run(capsys, "solve", "layered-pathwidth", gp)
    assert code == 2 and "budget" in err
    assert run(capsys, "solve", "layered-pathwidth", gp, "--budget-vertices", 12)[0] == 0


def test_solve_absent_exit_code(tmp_path, capsys):
    gp = write(tmp_path, "g.json", cycle(3))
    code, out, _ = run(capsys, "solve", "leveled-planar", gp)
    assert code == 1 and out.strip() == "absent"


def test_witness_hash_mismatch(tmp_path, capsys):
    gp = write(tmp_path, "g.json", path(3))
    lp = write(tmp_path, "t.json", TrackLayout(((0, 2), (1,))), host=path(4))
    code, _, err = run(capsys, "validate", "track-layout", gp, lp)
    assert code == 2 and "different graph" in err


@pytest.mark.parametrize("quantity", ["leveled-planar", "track-number", "layered-pathwidth", "pathwidth"])
def test_solve_witness_revalidates_in_subprocess(tmp_path, quantity):
    g = complete_binary_tree(2)
    gp = write(tmp_path, "g.json", g)
    wp = tmp_path / "w.json"
    solved = subprocess.run(
        [sys.executable, "-m", "strata", "solve", quantity, gp, "--witness", str(wp), "--json"],
        capture_output=True, text=True, check=True,
    )
    value = json.loads(solved.stdout.splitlines()[-1])["value"]
    kind = {
        "leveled-planar": "leveled-drawing",
        "track-number": "track-layout",
        "layered-pathwidth": "layered-path",
        "pathwidth": "path-decomposition",
    }[quantity]
    checked = subprocess.run(
        [sys.executable, "-m", "strata", "validate", kind, gp, str(wp)], capture_output=True, text=True
    )
    assert checked.returncode == 0
    report = json.loads(checked.stdout)
    if quantity == "track-number":
        assert report["tracks"] == value == 2
    elif quantity == "layered-pathwidth":
        assert report["layered_width"] == value == 1
    elif quantity == "pathwidth":
        assert report["width"] == value == 1
    else:
        assert value is True


# every convert output validates


def _convert_then_validate(tmp_path, capsys, transform, gp, inp, kind, *extra):
    out = tmp_path / f"{transform}.json"
    args = ["convert", transform, gp] + ([inp] if inp else []) + list(extra) + ["-o", out]
    assert run(capsys, *args)[0] == 0
    code, report, _ = run(capsys, "validate", kind, gp, out)
    assert code == 0, report
    return out


def test_convert_outputs_validate(tmp_path, capsys):
    t = complete_binary_tree(2)
    gp = write(tmp_path, "t.json", t)
    dp = write(tmp_path, "d.json", tree_leveled_drawing(t), t)
    _convert_then_validate(tmp_path, capsys, "spiral-wrap", gp, dp, "track-layout")
    tp = str(tmp_path / "spiral-wrap.json")
    _convert_then_validate(tmp_path, capsys, "unwrap", gp, tp, "leveled-drawing")
    lpp = _convert_then_validate(tmp_path, capsys, "greedy-layered-path", gp, dp, "layered-path")
    _convert_then_validate(tmp_path, capsys, "layered-path-to-drawing", gp, lpp, "leveled-drawing")
    _convert_then_validate(tmp_path, capsys, "layered-path-to-tracks", gp, lpp, "track-layout")
    _convert_then_validate(tmp_path, capsys, "tree-path-decomposition", gp, None, "path-decomposition")
    td = TreeDecomposition(G(2, [(0, 1)]), ({0, 1, 3, 4}, {0, 2, 5, 6}))
    ltp = write(tmp_path, "lt.json", LayeredTreeDecomposition(td, bfs_layering(t, 0)), t)
    _convert_then_validate(tmp_path, capsys, "layered-tree-to-layered-path", gp, ltp, "layered-path")
    apex_host = G(t.n + 1, list(t.edges) + [(v, t.n) for v in range(t.n)])
    ap = write(tmp_path, "apex.json", apex_host)
    tp2 = write(tmp_path, "t3.json", spiral_wrap(tree_leveled_drawing(t)), apex_host)
    _convert_then_validate(tmp_path, capsys, "add-apex-track", ap, tp2, "track-layout", "--apex", t.n)


def test_convert_winding(tmp_path, capsys):
    gp = write(tmp_path, "g.json", cycle(3))
    tp = write(tmp_path, "t.json", TrackLayout(((0,), (1,), (2,))))
    code, out, _ = run(capsys, "convert", "winding", gp, tp, "--cycle", "0,1,2")
    assert code == 0 and out.strip() == "3"


def test_convert_random_three_track_unwrap(tmp_path, capsys):
    rng = np.random.default_rng(2)
    done = 0
    while done < 5:
        g, t = random_three_track_layout(9, rng)
        if not bipartition(g):
            continue
        gp = write(tmp_path, "g.json", g)
        tp = write(tmp_path, "t.json", t)
        _convert_then_validate(tmp_path, capsys, "unwrap", gp, tp, "leveled-drawing")
        done += 1


# construct


def test_construct_classes(tmp_path, capsys):
    gp = write(tmp_path, "grid.json", grid(3, 3))
    out = tmp_path / "d.json"
    assert run(capsys, "construct", "squaregraph", gp, "-o", out)[0] == 0
    assert run(capsys, "validate", "leveled-drawing", gp, out)[0] == 0
    wp = write(tmp_path, "w.json", WiringDiagram(3, (1, 2, 1)))
    host = tmp_path / "dual.json"
    assert run(capsys, "construct", "wiring-dual", wp, "--graph-out", host, "-o", out)[0] == 0
    assert run(capsys, "validate", "leveled-drawing", host, out)[0] == 0
    tree = write(tmp_path, "plane.json", from_rotation([[1, 2, 3, 4], [0], [0], [0], [0]]))
    assert run(capsys, "construct", "halin", tree, "--root", 1, "--graph-out", host, "-o", out)[0] == 0
    assert run(capsys, "validate", "leveled-drawing", host, out)[0] == 0
    k4 = write(tmp_path, "k4.json", from_rotation([[1, 2, 3], [0], [0], [0]]))
    assert run(capsys, "construct", "halin", k4)[0] == 1


# render and explore


def test_render_command(tmp_path, capsys):
    g = path(4)
    gp = write(tmp_path, "g.json", g)
    dp = write(tmp_path, "d.json", tree_leveled_drawing(g), g)
    code, out, _ = run(capsys, "render", gp, dp)
    assert code == 0 and out.count("<circle") == 4
    tp = write(tmp_path, "t.json", spiral_wrap(tree_leveled_drawing(g)), g)
    code, out, _ = run(capsys, "render", gp, tp, "--style", "rays")
    assert code == 0 and out.startswith("<?xml")
    assert run(capsys, "render", gp, dp, "--style", "rays")[0] == 1


def test_explore_is_seeded(capsys):
    code, out, _ = run(capsys, "explore", "3track-lpw", "--samples", 4, "--size", 6, "--seed", 3)
    assert code == 0
    report = json.loads(out)
    assert report["seed"] == 3 and len(report["records"]) == 4
    code, again, _ = run(capsys, "explore", "3track-lpw", "--samples", 4, "--size", 6, "--seed", 3, "--workers", 2)
    assert json.loads(again) == report
    assert run(capsys, "explore", "3track-lpw", "--size", 30)[0] == 2
