"""JSON encoding of graphs and every structure defined on them.

Objects are told apart by their keys, so a file never needs a type tag:

=========================  ===========================================
graph                      ``n``, ``edges`` (+ ``rotation``, ``labels``)
track layout               ``tracks``
leveled drawing            ``levels``, ``weak``
layering                   ``layers``
path decomposition         ``bags``
tree decomposition         ``bags``, ``tree_edges``
layered path               ``bags``, ``layers``
layered tree               ``bags``, ``layers``, ``tree_edges``
wiring diagram             ``curves``, ``swaps``
=========================  ===========================================

Witnesses may carry ``graph_sha256``, the hash of the host's canonical
encoding, so they cannot silently be checked against another graph.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Optional, Union

from .classes import WiringDiagram
from .graph import Graph, Layering
from .layout import (
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    TreeDecomposition,
)

Encodable = Union[
    Graph,
    TrackLayout,
    LeveledDrawing,
    Layering,
    PathDecomposition,
    TreeDecomposition,
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    WiringDiagram,
]


class FormatError(ValueError):
    pass


def _bags(bags) -> list[list[int]]:
    return [sorted(b) for b in bags]


def to_dict(obj: Encodable, host: Optional[Graph] = None) -> dict[str, Any]:
    if isinstance(obj, Graph):
        d: dict[str, Any] = {"n": obj.n, "edges": [list(e) for e in obj.edges]}
        if obj.rotation is not None:
            d["rotation"] = [list(r) for r in obj.rotation]
        if obj.labels is not None:
            d["labels"] = list(obj.labels)
        return d
    if isinstance(obj, TrackLayout):
        d = {"tracks": [list(t) for t in obj.tracks]}
    elif isinstance(obj, LeveledDrawing):
        d = {"levels": [list(lv) for lv in obj.levels], "weak": obj.weak}
    elif isinstance(obj, Layering):
        d = {"layers": [list(lv) for lv in obj.layers]}
    elif isinstance(obj, PathDecomposition):
        d = {"bags": _bags(obj.bags)}
    elif isinstance(obj, TreeDecomposition):
        d = {"tree_edges": [list(e) for e in obj.tree.edges], "bags": _bags(obj.bags)}
    elif isinstance(obj, LayeredPathDecomposition):
        d = {"bags": _bags(obj.bags), "layers": [list(lv) for lv in obj.layering.layers]}
    elif isinstance(obj, LayeredTreeDecomposition):
        t = obj.decomposition
        d = {
            "tree_edges": [list(e) for e in t.tree.edges],
            "bags": _bags(t.bags),
            "layers": [list(lv) for lv in obj.layering.layers],
        }
    elif isinstance(obj, WiringDiagram):
        d = {"curves": obj.curve_count, "swaps": list(obj.transpositions)}
    else:
        raise TypeError(f"cannot encode {type(obj).__name__}")
    if host is not None:
        d["graph_sha256"] = graph_sha256(host)
    return d


def from_dict(d: dict[str, Any]) -> Encodable:
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    keys = set(d) - {"graph_sha256"}
    try:
        if "n" in keys and "edges" in keys:
            return Graph(
                int(d["n"]),
                tuple((int(u), int(v)) for u, v in d["edges"]),
                tuple(tuple(r) for r in d["rotation"]) if d.get("rotation") is not None else None,
                tuple(d["labels"]) if d.get("labels") is not None else None,
            )
        if keys == {"tracks"}:
            return TrackLayout(tuple(tuple(t) for t in d["tracks"]))
        if "levels" in keys:
            return LeveledDrawing(tuple(tuple(lv) for lv in d["levels"]), bool(d.get("weak", False)))
        if keys == {"curves", "swaps"}:
            return WiringDiagram(int(d["curves"]), tuple(d["swaps"]))
        layering = Layering(tuple(tuple(lv) for lv in d["layers"])) if "layers" in keys else None
        if "bags" in keys:
            bags = tuple(frozenset(b) for b in d["bags"])
            if "tree_edges" in keys:
                tree = Graph.from_edges(len(bags), d["tree_edges"])
                t = TreeDecomposition(tree, bags)
                return t if layering is None else LayeredTreeDecomposition(t, layering)
            p = PathDecomposition(bags)
            return p if layering is None else LayeredPathDecomposition(p, layering)
        if layering is not None:
            return layering
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed object: {exc}") from None
    raise FormatError(f"unrecognised object with keys {sorted(keys)}")


def dumps(obj: Encodable, host: Optional[Graph] = None) -> str:
    return json.dumps(to_dict(obj, host), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Encodable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_dict(data)


def graph_sha256(g: Graph) -> str:
    return hashlib.sha256(dumps(g).encode()).hexdigest()


def read(path: Union[str, Path]) -> tuple[Encodable, Optional[str]]:
    """Decode a file; also return its embedded host hash, if any."""
    text = Path(path).read_text()
    obj = loads(text)
    data = json.loads(text)
    return obj, data.get("graph_sha256") if isinstance(data, dict) else None


def write(path: Union[str, Path], obj: Encodable, host: Optional[Graph] = None) -> None:
    Path(path).write_text(dumps(obj, host) + "\n")
