"""Track layouts, leveled drawings, path/tree decompositions and their checkers.

Validators return a :class:`~strata.graph.Report` instead of raising on
semantic failures; only structural misuse (a layout that does not cover the
host's vertices, a decomposition tree that is not a tree) raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import CoverageMismatch, NotATree
from .graph import Edge, Graph, Layering, Report, Violation, _check_coverage, is_tree, validate_layering


@dataclass(frozen=True)
class TrackLayout:
    tracks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "tracks", tuple(tuple(int(v) for v in t) for t in self.tracks))

    @cached_property
    def track_of(self) -> dict[int, tuple[int, int]]:
        return {v: (i, p) for i, t in enumerate(self.tracks) for p, v in enumerate(t)}

    def vertices(self) -> list[int]:
        return [v for t in self.tracks for v in t]

    @property
    def nonempty(self) -> int:
        return sum(1 for t in self.tracks if t)

    def compact(self) -> "TrackLayout":
        """Same layout without empty tracks."""
        return TrackLayout(tuple(t for t in self.tracks if t))


@dataclass(frozen=True)
class LeveledDrawing:
    """A layering plus a left-to-right order inside each level."""

    levels: tuple[tuple[int, ...], ...]
    weak: bool = False

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(int(v) for v in lv) for lv in self.levels))

    @cached_property
    def layering(self) -> Layering:
        return Layering(self.levels)

    @cached_property
    def position(self) -> dict[int, tuple[int, int]]:
        return {v: (i, p) for i, lv in enumerate(self.levels) for p, v in enumerate(lv)}

    def vertices(self) -> list[int]:
        return [v for lv in self.levels for v in lv]

    def relaxed(self) -> "LeveledDrawing":
        return LeveledDrawing(self.levels, weak=True)


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(int(v) for v in b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @cached_property
    def first_bag(self) -> dict[int, int]:
        """b(v): index of the leftmost bag containing v."""
        first: dict[int, int] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                first.setdefault(v, i)
        return first


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(int(v) for v in b) for b in self.bags))
        if len(self.bags) != self.tree.n:
            raise ValueError("one bag per tree node is required")

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def linearize(self) -> PathDecomposition:
        """Bags read along the tree when the tree is a path."""
        t = self.tree
        if t.n == 0:
            return PathDecomposition(())
        deg = [len(nb) for nb in t.adj]
        if not is_tree(t) or max(deg) > 2:
            raise NotATree("only a path-shaped decomposition can be linearized")
        start = next(x for x in range(t.n) if deg[x] <= 1)
        order, prev = [start], -1
        while len(order) < t.n:
            nxt = next(w for w in t.adj[order[-1]] if w != prev)
            prev = order[-1]
            order.append(nxt)
        return PathDecomposition(tuple(self.bags[x] for x in order))


def _layered_width(bags: Iterable[frozenset[int]], layering: Layering) -> int:
    where = layering.layer_of
    best = 0
    for bag in bags:
        counts: dict[int, int] = {}
        for v in bag:
            i = where.get(v)
            if i is not None:
                counts[i] = counts.get(i, 0) + 1
        best = max(best, max(counts.values(), default=0))
    return best


@dataclass(frozen=True)
class LayeredPathDecomposition:
    decomposition: PathDecomposition
    layering: Layering

    @property
    def bags(self) -> tuple[frozenset[int], ...]:
        return self.decomposition.bags

    @cached_property
    def layered_width(self) -> int:
        return _layered_width(self.decomposition.bags, self.layering)


@dataclass(frozen=True)
class LayeredTreeDecomposition:
    decomposition: TreeDecomposition
    layering: Layering

    @cached_property
    def layered_width(self) -> int:
        return _layered_width(self.decomposition.bags, self.layering)


def _crossing(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Two edges given as (position on side 1, position on side 2) cross."""
    return (a[0] - b[0]) * (a[1] - b[1]) < 0


def validate_track_layout(g: Graph, t: TrackLayout) -> Report:
    _check_coverage(g.n, t.vertices(), "track layout")
    where = t.track_of
    report = Report()
    # (track a, track b) with a < b -> list of (pos in a, pos in b, edge)
    between: dict[tuple[int, int], list[tuple[int, int, Edge]]] = {}
    for u, v in g.edges:
        (tu, pu), (tv, pv) = where[u], where[v]
        if tu == tv:
            report.violations.append(Violation("NonIndependentTrack", edges=((u, v),), vertices=(tu,)))
            continue
        if tu > tv:
            tu, pu, tv, pv = tv, pv, tu, pu
        between.setdefault((tu, tv), []).append((pu, pv, (u, v)))
    for key in sorted(between):
        for a, b in combinations(between[key], 2):
            if _crossing(a[:2], b[:2]):
                report.violations.append(Violation("XCrossing", edges=(a[2], b[2]), vertices=key))
    return report


def validate_leveled_drawing(g: Graph, d: LeveledDrawing) -> Report:
    _check_coverage(g.n, d.vertices(), "drawing")
    pos = d.position
    report = Report()
    between: dict[int, list[tuple[int, int, Edge]]] = {}
    for u, v in g.edges:
        (lu, pu), (lv, pv) = pos[u], pos[v]
        if lu == lv:
            if not d.weak:
                report.violations.append(Violation("BadSpan", edges=((u, v),)))
            elif abs(pu - pv) != 1:
                report.violations.append(Violation("SameLevelNonConsecutive", edges=((u, v),)))
            continue
        if abs(lu - lv) > 1:
            report.violations.append(Violation("BadSpan", edges=((u, v),)))
            continue
        if lu > lv:
            lu, pu, lv, pv = lv, pv, lu, pu
        between.setdefault(lu, []).append((pu, pv, (u, v)))
    for level in sorted(between):
        for a, b in combinations(between[level], 2):
            if _crossing(a[:2], b[:2]):
                report.violations.append(Violation("Inversion", edges=(a[2], b[2]), vertices=(level,)))
    return report


def _check_bag_vertices(n: int, bags: Sequence[frozenset[int]], report: Report) -> None:
    stray = sorted({v for b in bags for v in b if not 0 <= v < n})
    if stray:
        report.violations.append(Violation("UnknownVertex", vertices=tuple(stray)))


def _layering_report(g: Graph, layering: Layering, report: Report) -> None:
    try:
        sub = validate_layering(g, layering)
    except CoverageMismatch:
        report.violations.append(Violation("LayeringCoverage"))
        return
    report.violations.extend(sub.violations)


def validate_path_decomposition(g: Graph, p: PathDecomposition, layering: Optional[Layering] = None) -> Report:
    report = Report(width=p.width)
    _check_bag_vertices(g.n, p.bags, report)
    occurs: dict[int, list[int]] = {}
    for i, bag in enumerate(p.bags):
        for v in bag:
            occurs.setdefault(v, []).append(i)
    for v in range(g.n):
        idx = occurs.get(v)
        if not idx:
            report.violations.append(Violation("VertexUncovered", vertices=(v,)))
        elif idx[-1] - idx[0] + 1 != len(idx):
            report.violations.append(Violation("NonContiguous", vertices=(v,)))
    for u, v in g.edges:
        if not any(u in b and v in b for b in p.bags):
            report.violations.append(Violation("EdgeUncovered", edges=((u, v),)))
    if layering is not None:
        _layering_report(g, layering, report)
        report.layered_width = _layered_width(p.bags, layering)
    return report


def validate_tree_decomposition(g: Graph, t: TreeDecomposition, layering: Optional[Layering] = None) -> Report:
    if t.tree.n and not is_tree(t.tree):
        raise NotATree("decomposition tree is not a tree")
    report = Report(width=t.width)
    _check_bag_vertices(g.n, t.bags, report)
    for v in range(g.n):
        nodes = {x for x, b in enumerate(t.bags) if v in b}
        if not nodes:
            report.violations.append(Violation("VertexUncovered", vertices=(v,)))
            continue
        start = next(iter(nodes))
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in t.tree.adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != nodes:
            report.violations.append(Violation("DisconnectedSubtree", vertices=(v,)))
    for u, v in g.edges:
        if not any(u in b and v in b for b in t.bags):
            report.violations.append(Violation("EdgeUncovered", edges=((u, v),)))
    if layering is not None:
        _layering_report(g, layering, report)
        report.layered_width = _layered_width(t.bags, layering)
    return report


def validate_layered_path(g: Graph, p: LayeredPathDecomposition) -> Report:
    return validate_path_decomposition(g, p.decomposition, p.layering)


def validate_layered_tree(g: Graph, t: LayeredTreeDecomposition) -> Report:
    return validate_tree_decomposition(g, t.decomposition, t.layering)
