"""``strata`` command line.

Exit status: 0 success / valid / present, 1 invalid / absent, 2 usage or
budget error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import classes, exact, families, io, transforms
from .errors import BudgetExceeded, StrataError
from .graph import Graph, Layering, validate_layering
from .layout import (
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    TreeDecomposition,
    validate_layered_path,
    validate_layered_tree,
    validate_leveled_drawing,
    validate_path_decomposition,
    validate_track_layout,
    validate_tree_decomposition,
)
from .render import RenderSpec, render_svg


class UsageError(Exception):
    pass


def _load(path: str, expect: Optional[tuple[type, ...]] = None, host: Optional[Graph] = None):
    try:
        obj, digest = io.read(path)
    except (OSError, io.FormatError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if expect is not None and not isinstance(obj, expect):
        names = "/".join(t.__name__ for t in expect)
        raise UsageError(f"{path}: expected {names}, found {type(obj).__name__}")
    if host is not None and digest is not None and digest != io.graph_sha256(host):
        raise UsageError(f"{path}: witness was produced for a different graph")
    return obj


def _graph(path: str) -> Graph:
    return _load(path, (Graph,))


def _emit(args, obj, host: Optional[Graph] = None) -> None:
    text = io.dumps(obj, host)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    else:
        print(text)


def _budget(args, default: exact.SolverBudget) -> exact.SolverBudget:
    return exact.SolverBudget(
        args.budget_vertices or default.max_vertices,
        args.budget_states or default.max_states,
    )


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

VALIDATORS = {
    "track-layout": ((TrackLayout,), validate_track_layout),
    "leveled-drawing": ((LeveledDrawing,), validate_leveled_drawing),
    "layering": ((Layering,), validate_layering),
    "path-decomposition": ((PathDecomposition,), validate_path_decomposition),
    "tree-decomposition": ((TreeDecomposition,), validate_tree_decomposition),
    "layered-path": ((LayeredPathDecomposition,), validate_layered_path),
    "layered-tree": ((LayeredTreeDecomposition,), validate_layered_tree),
}


def cmd_validate(args) -> int:
    g = _graph(args.graph)
    types, fn = VALIDATORS[args.kind]
    obj = _load(args.layout, types, host=g)
    report = fn(g, obj)
    out = {
        "ok": report.ok,
        "violations": [
            {"kind": v.kind, "edges": [list(e) for e in v.edges], "vertices": list(v.vertices)} for v in report.violations
        ],
    }
    if report.width is not None:
        out["width"] = report.width
    if report.layered_width is not None:
        out["layered_width"] = report.layered_width
    if isinstance(obj, TrackLayout):
        out["tracks"] = obj.nonempty
    print(json.dumps(out, sort_keys=True))
    for v in report.violations:
        print(str(v), file=sys.stderr)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _graph(args.graph)
    q = args.quantity
    witness = None
    if q == "leveled-planar":
        witness = exact.leveled_planar_exact(g, _budget(args, exact.LEVELED_BUDGET))
        value: object = witness is not None
        print("present" if value else "absent")
    elif q == "track-number":
        witness = exact.minimum_track_layout(g, _budget(args, exact.TRACK_BUDGET))
        value = witness.nonempty
        print(value)
    elif q == "layered-pathwidth":
        value, witness = exact.layered_pathwidth_exact(g, _budget(args, exact.LAYERED_PW_BUDGET))
        print(value)
    else:
        witness = exact.pathwidth_decomposition(g, _budget(args, exact.PATHWIDTH_BUDGET))
        value = witness.width
        print(value)
    if args.witness and witness is not None:
        io.write(args.witness, witness, g)
    if args.json:
        print(json.dumps({"quantity": q, "value": value, "witness": io.to_dict(witness, g) if witness else None}, sort_keys=True))
    return 1 if witness is None else 0


# ---------------------------------------------------------------------------
# convert
# ---------------------------------------------------------------------------

CONVERSIONS = (
    "spiral-wrap",
    "unwrap",
    "winding",
    "greedy-layered-path",
    "layered-path-to-drawing",
    "layered-path-to-tracks",
    "tree-path-decomposition",
    "layered-tree-to-layered-path",
    "add-apex-track",
)


def cmd_convert(args) -> int:
    g = _graph(args.graph)
    t = args.transform
    if t == "tree-path-decomposition":
        _emit(args, transforms.tree_path_decomposition(g), g)
        return 0
    if not args.input:
        raise UsageError(f"convert {t} needs an input layout file")
    if t == "spiral-wrap":
        d: LeveledDrawing = _load(args.input, (LeveledDrawing,), g)
        _emit(args, transforms.spiral_wrap(d, g), g)
    elif t == "unwrap":
        _emit(args, transforms.unwrap_three_track(g, _load(args.input, (TrackLayout,), g)), g)
    elif t == "winding":
        if not args.cycle:
            raise UsageError("winding needs --cycle")
        cyc = [int(x) for x in args.cycle.split(",")]
        print(transforms.winding(g, _load(args.input, (TrackLayout,), g), cyc))
    elif t == "greedy-layered-path":
        _emit(args, transforms.greedy_layered_path(g, _load(args.input, (LeveledDrawing,), g)), g)
    elif t == "layered-path-to-drawing":
        _emit(args, transforms.layered_path_to_drawing(g, _load(args.input, (LayeredPathDecomposition,), g)), g)
    elif t == "layered-path-to-tracks":
        _emit(args, transforms.layered_path_to_tracks(g, _load(args.input, (LayeredPathDecomposition,), g)), g)
    elif t == "layered-tree-to-layered-path":
        _emit(args, transforms.layered_tree_to_layered_path(g, _load(args.input, (LayeredTreeDecomposition,), g)), g)
    elif t == "add-apex-track":
        if args.apex is None:
            raise UsageError("add-apex-track needs --apex")
        layout = _load(args.input, (TrackLayout,))
        _emit(args, transforms.add_apex_track(layout, args.apex), g)
    return 0


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

CONSTRUCTIONS = ("tree", "bipartite-outerplanar", "outerplanar-weak", "squaregraph", "halin", "wiring-dual")


def cmd_construct(args) -> int:
    c = args.cls
    if c == "wiring-dual":
        w = _load(args.input, (classes.WiringDiagram,))
        g, _, d = classes.monotone_arrangement_dual(w)
    elif c == "halin":
        h = classes.HalinInput(_graph(args.input))
        root = args.root if args.root is not None else min(h.leaves)
        g = h.graph
        d = classes.halin_weak_leveled(h, root)
    else:
        g = _graph(args.input)
        root = args.root or 0
        fn = {
            "tree": classes.tree_leveled_drawing,
            "bipartite-outerplanar": classes.bipartite_outerplanar_leveled,
            "outerplanar-weak": classes.outerplanar_weak_leveled,
            "squaregraph": classes.squaregraph_leveled,
        }[c]
        d = fn(g, root)
    if args.graph_out:
        io.write(args.graph_out, g)
    _emit(args, d, g)
    return 0


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def _int_params(params: Sequence[str]) -> list:
    out = []
    for p in params:
        if "," in p:
            out.append([int(x) for x in p.split(",") if x])
        else:
            out.append(int(p))
    return out


def cmd_generate(args) -> int:
    f = args.family.replace("-", "_")
    try:
        params = _int_params(args.params)
    except ValueError:
        raise UsageError("generator parameters must be integers (lists as comma-separated integers)") from None
    cert = None
    try:
        if f == "tree_apex":
            g, cert = families.generate_tree_apex(*params)
        elif f == "equalizer":
            g = families.generate_equalizer(*params)
        elif f == "almost_tree":
            g = families.generate_almost_tree(*params)
        elif f == "grid3d_lpd":
            g, cert = families.grid3d_lpd_certificate(*params)
        else:
            g = families.generate_basic(f, *params)
    except TypeError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, g)
    if args.certificate:
        if cert is None:
            raise UsageError(f"family {args.family} has no certificate")
        io.write(args.certificate, cert.payload, g)
    return 0


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------


def cmd_render(args) -> int:
    g = _graph(args.graph)
    obj = _load(args.layout, (LeveledDrawing, TrackLayout), g)
    svg = render_svg(g, obj, RenderSpec(unit=args.unit, style=args.style, margin=args.margin))
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


# ---------------------------------------------------------------------------
# explore
# ---------------------------------------------------------------------------


def _explore_one(job: tuple[int, int, int, int]) -> dict:
    index, seed, size, states = job
    rng = np.random.default_rng(seed)
    g, _ = families.random_three_track_layout(size, rng)
    value, _ = exact.layered_pathwidth_exact(g, exact.SolverBudget(max(size, 1), states))
    return {"index": index, "seed": seed, "n": g.n, "m": g.m, "layered_pathwidth": value}


def cmd_explore(args) -> int:
    if args.size > (args.budget_vertices or exact.LAYERED_PW_BUDGET.max_vertices):
        raise BudgetExceeded(f"size {args.size} exceeds the vertex budget")
    seeds = np.random.SeedSequence(args.seed).generate_state(args.samples, dtype=np.uint32)
    states = args.budget_states or exact.LAYERED_PW_BUDGET.max_states
    jobs = [(i, int(s), args.size, states) for i, s in enumerate(seeds)]
    records = sorted(exact.map_instances(_explore_one, jobs, args.workers), key=lambda r: r["index"])
    hist: dict[int, int] = {}
    for r in records:
        hist[r["layered_pathwidth"]] = hist.get(r["layered_pathwidth"], 0) + 1
    report = {
        "seed": args.seed,
        "samples": args.samples,
        "size": args.size,
        "max_layered_pathwidth": max((r["layered_pathwidth"] for r in records), default=0),
        "histogram": {str(k): v for k, v in sorted(hist.items())},
        "records": records,
    }
    print(json.dumps(report, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-vertices", type=int, default=None, help="solver vertex cap")
    common.add_argument("--budget-states", type=int, default=None, help="solver state cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-o", "--output", default=None, help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="strata", description="Exact solvers and conversions for track layouts and leveled drawings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a layout against a graph")
    s.add_argument("kind", choices=sorted(VALIDATORS))
    s.add_argument("graph")
    s.add_argument("layout")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("solve", parents=[common], help="exact parameter with witness")
    s.add_argument("quantity", choices=["leveled-planar", "track-number", "layered-pathwidth", "pathwidth"])
    s.add_argument("graph")
    s.add_argument("--witness", default=None, help="write the witness JSON here")
    s.add_argument("--json", action="store_true", help="also print value and witness as one JSON object")
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("convert", parents=[common], help="apply a transform")
    s.add_argument("transform", choices=CONVERSIONS)
    s.add_argument("graph")
    s.add_argument("input", nargs="?")
    s.add_argument("--apex", type=int, default=None)
    s.add_argument("--cycle", default=None, help="comma-separated vertices")
    s.set_defaults(fn=cmd_convert)

    s = sub.add_parser("construct", parents=[common], help="drawing for a special class")
    s.add_argument("cls", choices=CONSTRUCTIONS, metavar="class")
    s.add_argument("input", help="graph (plane tree for halin, wiring diagram for wiring-dual)")
    s.add_argument("--root", type=int, default=None)
    s.add_argument("--graph-out", default=None, help="write the host graph here")
    s.set_defaults(fn=cmd_construct)

    s = sub.add_parser("generate", parents=[common], help="emit a family member")
    s.add_argument("family")
    s.add_argument("params", nargs="*")
    s.add_argument("--certificate", default=None, help="write the family certificate here")
    s.set_defaults(fn=cmd_generate)

    s = sub.add_parser("render", parents=[common], help="SVG of a drawing or track layout")
    s.add_argument("graph")
    s.add_argument("layout")
    s.add_argument("--style", choices=["leveled", "rays"], default="leveled")
    s.add_argument("--unit", type=float, default=40.0)
    s.add_argument("--margin", type=float, default=20.0)
    s.set_defaults(fn=cmd_render)

    s = sub.add_parser("explore", parents=[common], help="sample random 3-track graphs")
    s.add_argument("experiment", choices=["3track-lpw"])
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--size", type=int, default=8)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_explore)
    return p


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (UsageError, BudgetExceeded) as exc:
        print(f"strata: {exc}", file=sys.stderr)
        return 2
    except (StrataError, ValueError) as exc:
        print(f"strata: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())
