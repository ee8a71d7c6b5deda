"""Conversions between leveled drawings and 3-track layouts or layered decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    Exhausted,
    InvalidDecomposition,
    InvalidDrawing,
    InvalidTrackLayout,
    LevelMismatch,
    NotACycle,
    NotATree,
    NotBipartite,
    VertexAlreadyPlaced,
    WidthTooLarge,
    WrongTrackCount,
)
from .graph import Graph, Layering, bipartition, connected_components, is_tree
from .layout import (
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    validate_layered_path,
    validate_layered_tree,
    validate_leveled_drawing,
    validate_track_layout,
)


@dataclass(frozen=True)
class ArcSign:
    arc: tuple[int, int]
    sign: int


@dataclass(frozen=True)
class SweepState:
    """One chosen vertex per level (``current_bag[i]`` lies on level i)."""

    current_bag: tuple[int, ...]
    exhausted: bool = False


@dataclass(frozen=True)
class BagIndexMap:
    b: dict[int, int]

    @classmethod
    def of(cls, p: PathDecomposition) -> "BagIndexMap":
        return cls(dict(p.first_bag))


# ---------------------------------------------------------------------------
# Leveled drawings <-> 3-track layouts
# ---------------------------------------------------------------------------


def _require_drawing(g: Graph, d: LeveledDrawing) -> None:
    report = validate_leveled_drawing(g, d)
    if not report:
        raise InvalidDrawing(f"drawing does not validate: {report.first}")


def spiral_wrap(d: LeveledDrawing, g: Optional[Graph] = None) -> TrackLayout:
    """Level i goes to track i mod 3, levels concatenated in order.

    When the host ``g`` is supplied the drawing is validated first.
    """
    if g is not None:
        if d.weak:
            raise InvalidDrawing("spiral_wrap needs a strict drawing")
        _require_drawing(g, d)
    tracks: list[list[int]] = [[], [], []]
    for i, level in enumerate(d.levels):
        tracks[i % 3].extend(level)
    return TrackLayout(tuple(tuple(t) for t in tracks))


def _three_tracks(t: TrackLayout) -> TrackLayout:
    if len(t.tracks) > 3:
        if sum(1 for x in t.tracks if x) > 3:
            raise WrongTrackCount(f"expected 3 tracks, got {len(t.tracks)}")
        t = t.compact()
    return TrackLayout(t.tracks + ((),) * (3 - len(t.tracks)))


def arc_sign(t: TrackLayout, u: int, w: int) -> ArcSign:
    tu, tw = t.track_of[u][0], t.track_of[w][0]
    return ArcSign((u, w), 1 if tw == (tu + 1) % 3 else -1)


def winding(g: Graph, t: TrackLayout, cycle: Sequence[int]) -> int:
    """Sum of arc signs around ``cycle`` in the 3-track layout ``t``."""
    if len(t.tracks) != 3:
        raise WrongTrackCount(f"winding needs exactly 3 tracks, got {len(t.tracks)}")
    cyc = [int(v) for v in cycle]
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise NotACycle("a cycle needs at least 3 distinct vertices")
    for v in cyc:
        g.check_vertex(v)
    arcs = list(zip(cyc, cyc[1:] + cyc[:1]))
    if not all(g.has_edge(u, w) for u, w in arcs):
        raise NotACycle("consecutive cycle vertices must be adjacent")
    return sum(arc_sign(t, u, w).sign for u, w in arcs)


def unwrap_three_track(g: Graph, t: TrackLayout) -> LeveledDrawing:
    """Strict drawing of a bipartite graph from a valid 3-track layout.

    Levels are the sign sums along a BFS tree from the lowest vertex of each
    component; components are stacked on disjoint level ranges.
    """
    t = _three_tracks(t)
    report = validate_track_layout(g, t)
    if not report:
        raise InvalidTrackLayout(f"track layout does not validate: {report.first}")
    if not bipartition(g):
        raise NotBipartite("only bipartite graphs have strict leveled drawings")
    where = t.track_of
    levels: list[tuple[int, ...]] = []
    for comp in connected_components(g):
        root = comp[0]
        level = {root: 0}
        queue = [root]
        for u in queue:
            for w in sorted(g.adj[u]):
                if w not in level:
                    level[w] = level[u] + arc_sign(t, u, w).sign
                    queue.append(w)
        for u in comp:
            for w in g.adj[u]:
                if abs(level[u] - level[w]) != 1:
                    raise LevelMismatch(f"edge {u}-{w} spans {abs(level[u] - level[w])} levels")
        lo = min(level.values())
        rows: dict[int, list[int]] = {}
        for v in comp:
            rows.setdefault(level[v] - lo, []).append(v)
        for i in range(len(rows)):
            levels.append(tuple(sorted(rows[i], key=lambda v: where[v])))
    d = LeveledDrawing(tuple(levels))
    if not validate_leveled_drawing(g, d):
        raise LevelMismatch("unwrapped drawing does not validate")
    return d


# ---------------------------------------------------------------------------
# Leveled drawings <-> layered path decompositions
# ---------------------------------------------------------------------------


def next_sweep_vertex(g: Graph, d: LeveledDrawing, s: SweepState) -> int:
    """Level whose chosen vertex can be advanced without losing an edge.

    Builds the digraph on levels with i -> j when s_i has a neighbour on level
    j strictly right of s_j and returns the smallest level with an incoming
    arc and no outgoing one; when there are no arcs, the smallest level whose
    chosen vertex is not rightmost.  Same-level edges are ignored.
    """
    pos = d.position
    cur = s.current_bag
    if len(cur) != len(d.levels):
        raise ValueError("sweep state must pick one vertex per level")
    at = [pos[v][1] for v in cur]
    open_levels = [i for i, lv in enumerate(d.levels) if at[i] < len(lv) - 1]
    if not open_levels:
        raise Exhausted("every chosen vertex is rightmost in its level")
    out = [False] * len(cur)
    inc = [False] * len(cur)
    for i, v in enumerate(cur):
        for w in g.adj[v]:
            j, p = pos[w]
            if j != i and p > at[j]:
                out[i] = inc[j] = True
    for i in range(len(cur)):
        if inc[i] and not out[i]:
            return i
    if any(out):
        raise InvalidDrawing("sweep digraph has no sink; the drawing is not planar")
    return open_levels[0]


def greedy_layered_path(g: Graph, d: LeveledDrawing) -> LayeredPathDecomposition:
    """Sweep a drawing left to right, one vertex per level in every bag.

    In a weak drawing, advancing across a same-level edge vw takes two steps
    (first add w, then drop v), so those bags hold two vertices of one level.
    """
    _require_drawing(g, d)
    if g.n == 0:
        return LayeredPathDecomposition(PathDecomposition(()), Layering(()))
    cur = [lv[0] for lv in d.levels]
    bags = [frozenset(cur)]
    state = SweepState(tuple(cur))
    while True:
        try:
            i = next_sweep_vertex(g, d, state)
        except Exhausted:
            break
        v = cur[i]
        w = d.levels[i][d.position[v][1] + 1]
        if d.weak and g.has_edge(v, w):
            bags.append(frozenset(cur) | {w})
        cur[i] = w
        bags.append(frozenset(cur))
        state = SweepState(tuple(cur))
    return LayeredPathDecomposition(PathDecomposition(tuple(bags)), d.layering)


def _require_decomposition(g: Graph, p: LayeredPathDecomposition) -> None:
    report = validate_layered_path(g, p)
    if not report:
        raise InvalidDecomposition(f"layered path decomposition does not validate: {report.first}")


def layered_path_to_drawing(g: Graph, p: LayeredPathDecomposition) -> LeveledDrawing:
    """Order each layer by first bag; valid when the layered width is 1."""
    _require_decomposition(g, p)
    if p.layered_width > 1:
        raise WidthTooLarge(f"layered width {p.layered_width} exceeds 1")
    b = p.decomposition.first_bag
    levels = tuple(tuple(sorted(layer, key=lambda v: (b[v], v))) for layer in p.layering.layers)
    return LeveledDrawing(levels)


def layered_path_to_tracks(g: Graph, p: LayeredPathDecomposition) -> TrackLayout:
    """At most 3*width tracks from a layered path decomposition.

    Each layer is coloured greedily by left bag endpoint on the overlap graph
    of the vertices' bag intervals, which needs at most ``width`` colours.
    Colour classes are ordered by first bag and layer j, colour a goes to
    track (j mod 3, a), layers concatenated in order.  Empty tracks are
    dropped.
    """
    _require_decomposition(g, p)
    if g.n == 0:
        return TrackLayout(())
    first = p.decomposition.first_bag
    last: dict[int, int] = {}
    for i, bag in enumerate(p.bags):
        for v in bag:
            last[v] = i
    width = p.layered_width
    tracks: dict[tuple[int, int], list[int]] = {}
    for j, layer in enumerate(p.layering.layers):
        free_at = [-1] * width  # last bag index used by each colour
        for v in sorted(layer, key=lambda x: (first[x], x)):
            a = next(c for c in range(width) if free_at[c] < first[v])
            free_at[a] = last[v]
            tracks.setdefault((j % 3, a), []).append(v)
    return TrackLayout(tuple(tuple(tracks[k]) for k in sorted(tracks)))


# ---------------------------------------------------------------------------
# Trees and layered tree decompositions
# ---------------------------------------------------------------------------


def _subtree_sizes(t: Graph, comp: set[int], root: int) -> tuple[dict[int, int], dict[int, int]]:
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in t.adj[u]:
            if w in comp and w not in parent:
                parent[w] = u
                order.append(w)
    size = {v: 1 for v in order}
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return size, parent


def _centroid(t: Graph, comp: set[int]) -> int:
    root = min(comp)
    size, parent = _subtree_sizes(t, comp, root)
    n = len(comp)
    for v in sorted(comp):
        biggest = n - size[v]
        for w in t.adj[v]:
            if w in comp and parent.get(w) == v:
                biggest = max(biggest, size[w])
        if 2 * biggest <= n:
            return v
    raise AssertionError("every tree has a centroid")


def _spine_bags(t: Graph, comp: set[int]) -> list[frozenset[int]]:
    if len(comp) == 1:
        return [frozenset(comp)]
    c = _centroid(t, comp)
    size, parent = _subtree_sizes(t, comp, c)

    def children(v: int) -> list[int]:
        return sorted((w for w in t.adj[v] if w in comp and parent.get(w) == v), key=lambda w: (-size[w], w))

    def descend(v: int) -> list[int]:
        path = [v]
        while True:
            kids = children(path[-1])
            if not kids:
                return path
            path.append(kids[0])

    branches = children(c)
    spine = [c] + descend(branches[0])
    if len(branches) > 1:
        spine = descend(branches[1])[::-1] + spine
    on_spine = set(spine)
    bags: list[frozenset[int]] = []
    for i, p in enumerate(spine):
        for w in sorted(t.adj[p]):
            if w in comp and w not in on_spine:
                sub, _ = _subtree_sizes(t, comp - {p}, w)
                bags.extend(bag | {p} for bag in _spine_bags(t, set(sub)))
        if i + 1 < len(spine):
            bags.append(frozenset((p, spine[i + 1])))
    return bags


def tree_path_decomposition(t: Graph) -> PathDecomposition:
    """Path decomposition of a tree with bags of size at most ceil(log3(2n+1)).

    A spine through a centroid follows the two largest branches and then the
    largest child, so every component hanging off it has at most (n-1)/3
    vertices; their decompositions get the attaching spine vertex added to
    every bag and are threaded between the spine edges.
    """
    if t.n == 0:
        return PathDecomposition(())
    if not is_tree(t):
        raise NotATree("tree_path_decomposition needs a tree")
    return PathDecomposition(tuple(_spine_bags(t, set(range(t.n)))))


def layered_tree_to_layered_path(g: Graph, t: LayeredTreeDecomposition) -> LayeredPathDecomposition:
    """Path-decompose the decomposition tree and take unions of bags.

    Tree edges joining equal bags are contracted first.
    """
    report = validate_layered_tree(g, t)
    if not report:
        raise InvalidDecomposition(f"layered tree decomposition does not validate: {report.first}")
    tree, bags = t.decomposition.tree, t.decomposition.bags
    if tree.n == 0:
        return LayeredPathDecomposition(PathDecomposition(()), t.layering)
    rep = list(range(tree.n))

    def find(x: int) -> int:
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    for x, y in tree.edges:
        if bags[x] == bags[y]:
            rx, ry = find(x), find(y)
            rep[max(rx, ry)] = min(rx, ry)
    roots = sorted({find(x) for x in range(tree.n)})
    index = {r: i for i, r in enumerate(roots)}
    edges = {tuple(sorted((index[find(x)], index[find(y)]))) for x, y in tree.edges if find(x) != find(y)}
    small = Graph.from_edges(len(roots), sorted(edges))
    path = tree_path_decomposition(small)
    merged = tuple(frozenset().union(*(bags[roots[x]] for x in bag)) for bag in path.bags)
    return LayeredPathDecomposition(PathDecomposition(merged), t.layering)


def add_apex_track(t: TrackLayout, apex: int) -> TrackLayout:
    if apex in t.track_of:
        raise VertexAlreadyPlaced(f"vertex {apex} already has a track")
    return TrackLayout(t.tracks + ((apex,),))
