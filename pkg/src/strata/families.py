"""Graph families with certificates, plus seeded random corpora.

Vertex numbering is part of each generator's contract (certificates and
regression values depend on it) and is documented per family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .classes import HalinInput, WiringDiagram, tree_leveled_drawing
from .errors import BadParams, BoundaryMismatch
from .graph import Graph, Layering, connected_components, embed_by_coordinates, from_rotation
from .layout import (
    LayeredPathDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    validate_layered_path,
    validate_leveled_drawing,
    validate_track_layout,
)
from .transforms import add_apex_track, spiral_wrap

Payload = Union[TrackLayout, LayeredPathDecomposition, LeveledDrawing]


@dataclass(frozen=True)
class Certificate:
    kind: str  # "TrackLayout" | "LayeredPathDecomposition" | "LeveledDrawing"
    payload: Payload
    claim: int

    def check(self, g: Graph) -> bool:
        """True iff the payload validates at (or below) the claimed parameter."""
        if self.kind == "TrackLayout":
            return validate_track_layout(g, self.payload).ok and self.payload.nonempty <= self.claim
        if self.kind == "LayeredPathDecomposition":
            r = validate_layered_path(g, self.payload)
            return r.ok and r.layered_width <= self.claim
        if self.kind == "LeveledDrawing":
            return validate_leveled_drawing(g, self.payload).ok
        raise ValueError(f"unknown certificate kind {self.kind!r}")


@dataclass(frozen=True)
class BoundariedGraph:
    graph: Graph
    boundary: dict[int, int]  # label 1..t -> vertex

    def __post_init__(self):
        t = len(self.boundary)
        if sorted(self.boundary) != list(range(1, t + 1)):
            raise BoundaryMismatch("boundary labels must be exactly 1..t")
        if len(set(self.boundary.values())) != t:
            raise BoundaryMismatch("boundary labels must name distinct vertices")
        for v in self.boundary.values():
            self.graph.check_vertex(v)


def _positive(**params: int) -> None:
    for name, value in params.items():
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise BadParams(f"{name} must be a positive integer, got {value!r}")


# ---------------------------------------------------------------------------
# Basic families
# ---------------------------------------------------------------------------


def complete(n: int) -> Graph:
    _positive(n=n)
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Side A is 0..a-1, side B is a..a+b-1."""
    _positive(a=a, b=b)
    return Graph.from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)])


def cycle(n: int) -> Graph:
    if not isinstance(n, int) or n < 3:
        raise BadParams("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _positive(n=n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(k: int) -> Graph:
    """Centre 0, leaves 1..k."""
    _positive(k=k)
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def caterpillar(spine_len: int, leg_counts: Sequence[int] = ()) -> Graph:
    """Spine 0..spine_len-1; the legs of spine vertex i follow in order."""
    _positive(spine_len=spine_len)
    legs = list(leg_counts) + [0] * (spine_len - len(leg_counts))
    if len(legs) != spine_len or any(c < 0 for c in legs):
        raise BadParams("leg_counts must give a nonnegative count per spine vertex")
    edges = [(i, i + 1) for i in range(spine_len - 1)]
    nxt = spine_len
    for i, c in enumerate(legs):
        for _ in range(c):
            edges.append((i, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def complete_binary_tree(h: int) -> Graph:
    """Heap numbering: the children of i are 2i+1 and 2i+2."""
    if not isinstance(h, int) or h < 0:
        raise BadParams("height must be a nonnegative integer")
    n = 2 ** (h + 1) - 1
    return Graph.from_edges(n, [((i - 1) // 2, i) for i in range(1, n)])


def grid(rows: int, cols: int) -> Graph:
    """Vertex (i, j) is i*cols + j; embedded by its coordinates."""
    _positive(rows=rows, cols=cols)
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    g = Graph.from_edges(rows * cols, edges)
    return embed_by_coordinates(g, [(j, -i) for i in range(rows) for j in range(cols)])


def grid3d(n: int) -> Graph:
    """The n x n x 2 grid; vertex (i, j, d) is 2*(i*n + j) + d."""
    _positive(n=n)

    def vid(i: int, j: int, d: int) -> int:
        return 2 * (i * n + j) + d

    edges = []
    for i in range(n):
        for j in range(n):
            edges.append((vid(i, j, 0), vid(i, j, 1)))
            for d in (0, 1):
                if j + 1 < n:
                    edges.append((vid(i, j, d), vid(i, j + 1, d)))
                if i + 1 < n:
                    edges.append((vid(i, j, d), vid(i + 1, j, d)))
    return Graph.from_edges(2 * n * n, edges)


BASIC_FAMILIES: dict[str, Callable[..., Graph]] = {
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "cycle": cycle,
    "path": path,
    "star": star,
    "caterpillar": caterpillar,
    "complete_binary_tree": complete_binary_tree,
    "grid": grid,
    "grid3d": grid3d,
}


def generate_basic(family: str, *params) -> Graph:
    try:
        fn = BASIC_FAMILIES[family]
    except KeyError:
        raise BadParams(f"unknown family {family!r}; choose from {sorted(BASIC_FAMILIES)}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise BadParams(str(exc)) from None


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def generate_tree_apex(h: int) -> tuple[Graph, Certificate]:
    """Complete binary tree of height h (heap numbering) plus a universal
    vertex numbered last, with a track-layout certificate."""
    tree = complete_binary_tree(h)
    apex = tree.n
    g = Graph.from_edges(tree.n + 1, list(tree.edges) + [(v, apex) for v in range(tree.n)])
    base = spiral_wrap(tree_leveled_drawing(tree, 0)).compact()
    t = add_apex_track(base, apex)
    return g, Certificate("TrackLayout", t, t.nonempty)


def equalizer_half(p: int, locked: bool = True) -> BoundariedGraph:
    """A chain of p K_{2,3} beads between terminals 0 (label 1) and 1 (label 2).

    Joints x_0 = 0, x_1..x_{p-1} = 2..p, x_p = 1; bead i adds three middle
    vertices joined to x_i and x_{i+1}.  With ``locked`` set, the first
    middle vertices of consecutive beads are joined by a further K_{2,3}
    (three more vertices), which stops the chain from doubling back.
    """
    _positive(p=p)
    joints = [0] + list(range(2, p + 1)) + [1]
    nxt = p + 1
    edges = []
    anchor = []
    for i in range(p):
        mids = list(range(nxt, nxt + 3))
        nxt += 3
        anchor.append(mids[0])
        for c in mids:
            edges += [(joints[i], c), (c, joints[i + 1])]
    if locked:
        for i in range(p - 1):
            for c in range(nxt, nxt + 3):
                edges += [(anchor[i], c), (c, anchor[i + 1])]
            nxt += 3
    return BoundariedGraph(Graph.from_edges(nxt, edges), {1: 0, 2: 1})


def glue(a: BoundariedGraph, b: BoundariedGraph) -> Graph:
    """Identify equal boundary labels; edges made parallel are merged.

    Vertices of ``a`` keep their numbers; the non-boundary vertices of ``b``
    follow in increasing order.
    """
    if len(a.boundary) != len(b.boundary):
        raise BoundaryMismatch(f"boundary sizes differ: {len(a.boundary)} vs {len(b.boundary)}")
    ga, gb = a.graph, b.graph
    image = {b.boundary[lab]: a.boundary[lab] for lab in b.boundary}
    nxt = ga.n
    for v in range(gb.n):
        if v not in image:
            image[v] = nxt
            nxt += 1
    g = Graph(nxt, ga.edges)
    return g.with_edges((image[u], image[v]) for u, v in gb.edges if image[u] != image[v])


def generate_equalizer(p: int, q: int, locked: bool = True) -> Graph:
    """Two bead chains of lengths p and q sharing their terminals 0 and 1."""
    _positive(p=p, q=q)
    g = glue(equalizer_half(p, locked), equalizer_half(q, locked))
    return Graph(g.n, g.edges)


def generate_almost_tree(k: int, depth: int) -> Graph:
    """K_{2,3} with its degree-2 vertices replaced by k-vertex paths and a
    complete binary tree of the given depth hung below each path.

    Vertex 0 and 1 are the degree-3 vertices; path j is 2+j*k .. 2+j*k+k-1
    (its first vertex adjacent to 0, its last to 1); the three trees follow,
    each in heap order, with their roots adjacent to the middle
    (ceil(k/2)-th) vertex of the path.
    """
    _positive(k=k)
    if not isinstance(depth, int) or depth < 0:
        raise BadParams("depth must be a nonnegative integer")
    edges = []
    size = 2 ** (depth + 1) - 1
    nxt = 2 + 3 * k
    for j in range(3):
        base = 2 + j * k
        edges.append((0, base))
        edges += [(base + i, base + i + 1) for i in range(k - 1)]
        edges.append((base + k - 1, 1))
        mid = base + (k + 1) // 2 - 1
        edges.append((mid, nxt))
        edges += [(nxt + (i - 1) // 2, nxt + i) for i in range(1, size)]
        nxt += size
    return Graph.from_edges(nxt, edges)


def grid3d_lpd_certificate(n: int) -> tuple[Graph, Certificate]:
    """Layered path decomposition of :func:`grid3d` (n) with width <= 3.

    Layers are columns; each row i contributes the bags
    row_i(both depths) + row_{i+1}(depth 1) and row_i(depth 0) + row_{i+1}(both).
    For n = 1 the two vertices are layered by depth instead.
    """
    g = grid3d(n)

    def row(i: int, depths: Sequence[int]) -> set[int]:
        if i >= n:
            return set()
        return {2 * (i * n + j) + d for j in range(n) for d in depths}

    if n == 1:
        layering = Layering(((0,), (1,)))
        bags: list[frozenset[int]] = [frozenset({0, 1})]
    else:
        layering = Layering(tuple(tuple(2 * (i * n + j) + d for i in range(n) for d in (0, 1)) for j in range(n)))
        bags = []
        for i in range(n):
            bags.append(frozenset(row(i, (0, 1)) | row(i + 1, (1,))))
            bags.append(frozenset(row(i, (0,)) | row(i + 1, (0, 1))))
    p = LayeredPathDecomposition(PathDecomposition(tuple(bags)), layering)
    return g, Certificate("LayeredPathDecomposition", p, p.layered_width)


# ---------------------------------------------------------------------------
# Random corpora
# ---------------------------------------------------------------------------


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform random labelled tree via a Pruefer sequence."""
    if n <= 2:
        return path(max(n, 1)) if n else Graph(0)
    seq = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    np.add.at(degree, seq, 1)
    edges = []
    for x in seq:
        leaf = int(np.flatnonzero(degree == 1)[0])
        edges.append((leaf, int(x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = np.flatnonzero(degree == 1)
    edges.append((int(u), int(v)))
    return Graph.from_edges(n, edges)


def random_plane_tree(n_target: int, rng: np.random.Generator) -> HalinInput:
    """Random plane tree without degree-2 vertices, grown from K_{1,3} by
    giving random leaves two or three children."""
    nbrs: list[list[int]] = [[1, 2, 3], [0], [0], [0]]
    while len(nbrs) < n_target:
        leaves = [v for v in range(len(nbrs)) if len(nbrs[v]) == 1]
        v = leaves[int(rng.integers(len(leaves)))]
        k = int(rng.integers(2, 4))
        for _ in range(k):
            nbrs.append([v])
            nbrs[v].append(len(nbrs) - 1)
    return HalinInput(from_rotation(nbrs))


def _chords_cross(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = sorted(a), sorted(b)
    return p < r < q < s or r < p < s < q


def _circle_graph(n: int, edges: list[tuple[int, int]]) -> Graph:
    g = Graph.from_edges(n, edges)
    coords = [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]
    return embed_by_coordinates(g, coords)


def random_outerplanar(
    n: int, rng: np.random.Generator, bipartite: bool = False, maximal: bool = False, keep: float = 0.7
) -> Graph:
    """Random connected outerplanar graph drawn on a circle (vertex i at angle
    2*pi*i/n).  Chords join positions of odd distance when ``bipartite``.

    Non-maximal graphs drop each non-path edge with probability 1 - keep and
    then random path edges while staying connected.
    """
    _positive(n=n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if not bipartite or (j - i) % 2]
    order = rng.permutation(len(pairs))
    chosen: list[tuple[int, int]] = [(i, i + 1) for i in range(n - 1)]
    if n > 2 and (not bipartite or n % 2 == 0):
        chosen.append((0, n - 1))
    present = set(chosen)
    for k in order:
        e = pairs[k]
        if e in present:
            continue
        if not any(_chords_cross(e, f) for f in chosen):
            chosen.append(e)
            present.add(e)
    if maximal:
        return _circle_graph(n, chosen)
    kept = [e for e in chosen if e[1] == e[0] + 1 or rng.random() < keep]
    for k in rng.permutation(len(kept)):
        trial = kept[:k] + kept[k + 1 :]
        if rng.random() < 1 - keep and len(connected_components(Graph.from_edges(n, trial))) == 1:
            kept = trial
    return _circle_graph(n, sorted(kept))


def random_polyomino(cells: int, rng: np.random.Generator) -> tuple[Graph, int]:
    """Grid graph of a random simply connected polyomino and an outer root.

    Returns the embedded graph and a vertex on the outer face.
    """
    _positive(cells=cells)
    body = {(0, 0)}
    while len(body) < cells:
        x, y = sorted(body)[int(rng.integers(len(body)))]
        dx, dy = [(1, 0), (-1, 0), (0, 1), (0, -1)][int(rng.integers(4))]
        c = (x + dx, y + dy)
        if c in body:
            continue
        trial = body | {c}
        if _simply_connected(trial):
            body = trial
    pts = sorted({(x + a, y + b) for x, y in body for a in (0, 1) for b in (0, 1)})
    index = {p: i for i, p in enumerate(pts)}
    edges = set()
    for x, y in body:
        corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
        for i in range(4):
            e = tuple(sorted((index[corners[i]], index[corners[(i + 1) % 4]])))
            edges.add(e)
    g = embed_by_coordinates(Graph.from_edges(len(pts), sorted(edges)), pts)
    return g, index[min(pts)]


def _simply_connected(body: set[tuple[int, int]]) -> bool:
    pts = {(x + a, y + b) for x, y in body for a in (0, 1) for b in (0, 1)}
    edges = set()
    for x, y in body:
        edges |= {((x, y), (x + 1, y)), ((x, y + 1), (x + 1, y + 1)), ((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1))}
    # connected plane graph: V - E + F = 2, and holes add faces beyond the cells
    return len(pts) - len(edges) + len(body) + 1 == 2


def random_wiring_diagram(curves: int, swaps: int, rng: np.random.Generator) -> WiringDiagram:
    if curves < 2:
        return WiringDiagram(max(curves, 0), ())
    return WiringDiagram(curves, tuple(int(s) for s in rng.integers(1, curves, size=swaps)))


def random_three_track_layout(n: int, rng: np.random.Generator, tries: int = 4) -> tuple[Graph, TrackLayout]:
    """Random graph with a valid 3-track layout.

    Vertices get random tracks and orders; candidate edges between distinct
    tracks are added in random order whenever they create no X-crossing.
    """
    _positive(n=n)
    track = rng.integers(0, 3, size=n)
    perm = rng.permutation(n)
    tracks = tuple(tuple(int(v) for v in perm if track[v] == t) for t in range(3))
    pos = {v: i for t in tracks for i, v in enumerate(t)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if track[u] != track[v]]
    between: dict[tuple[int, int], list[tuple[int, int]]] = {}
    edges = []
    for k in rng.permutation(len(pairs))[: tries * n]:
        u, v = pairs[k]
        if track[u] > track[v]:
            u, v = v, u
        key = (int(track[u]), int(track[v]))
        mine = (pos[u], pos[v])
        if all((mine[0] - a) * (mine[1] - b) >= 0 for a, b in between.get(key, [])):
            between.setdefault(key, []).append(mine)
            edges.append((u, v))
    return Graph.from_edges(n, edges), TrackLayout(tracks)
