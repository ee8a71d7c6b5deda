"""Graph representation with layerings and cheap structural recognizers.

Vertices are the dense integers ``0..n-1``.  Labels, when present, are a
sidecar used only for display and I/O.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CoverageMismatch, DisconnectedGraph, InvalidVertex

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``edges`` keeps the caller's order (it defines edge indices, which the
    rotation system refers to); each pair is stored as ``(min, max)``.
    ``rotation[v]`` is the cyclic order of edge indices around ``v``.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    rotation: Optional[tuple[tuple[int, ...], ...]] = None
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidVertex(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"parallel edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise ValueError("labels must name every vertex")
            object.__setattr__(self, "labels", labels)
        if self.rotation is not None:
            rot = tuple(tuple(int(i) for i in r) for r in self.rotation)
            if len(rot) != self.n:
                raise ValueError("rotation must list every vertex")
            for v, r in enumerate(rot):
                incident = sorted(i for i, e in enumerate(norm) if v in e)
                if sorted(r) != incident:
                    raise ValueError(f"rotation at {v} must contain each incident edge exactly once")
            object.__setattr__(self, "rotation", rot)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], **kw) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), **kw)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def check_vertex(self, v) -> int:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.n:
            raise InvalidVertex(f"{v!r} is not a vertex of a {self.n}-vertex graph")
        return v

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices``, renumbered in sorted order.

        Returns the subgraph and the map from new to old vertex ids.
        """
        old = tuple(sorted(set(vertices)))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph.from_edges(len(old), edges), old

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        present = set(self.edges)
        edges = list(self.edges)
        for u, v in extra:
            e = (min(u, v), max(u, v))
            if e not in present:
                present.add(e)
                edges.append(e)
        return Graph.from_edges(self.n, edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Layering:
    """Ordered partition of vertices into layers ``V_0, ..., V_m``.

    The edge condition (every edge spans at most one layer boundary) depends
    on the host graph and is checked by :func:`validate_layering`.
    """

    layers: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        layers = tuple(tuple(sorted(int(v) for v in layer)) for layer in self.layers)
        if any(len(layer) == 0 for layer in layers):
            raise ValueError("layer indices must form a contiguous range (empty layer found)")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def from_layer_of(cls, layer_of: Sequence[int]) -> "Layering":
        if len(layer_of) == 0:
            return cls(())
        lo = min(layer_of)
        buckets: list[list[int]] = [[] for _ in range(max(layer_of) - lo + 1)]
        for v, i in enumerate(layer_of):
            buckets[i - lo].append(v)
        return cls(tuple(tuple(b) for b in buckets))

    @cached_property
    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}

    @property
    def depth(self) -> int:
        return len(self.layers)

    def vertices(self) -> list[int]:
        return [v for layer in self.layers for v in layer]


@dataclass(frozen=True)
class Violation:
    kind: str
    edges: tuple[Edge, ...] = ()
    vertices: tuple[int, ...] = ()

    def __str__(self):
        parts = [self.kind]
        if self.edges:
            parts.append("edges=" + ",".join(f"{u}-{v}" for u, v in self.edges))
        if self.vertices:
            parts.append("vertices=" + ",".join(map(str, self.vertices)))
        return " ".join(parts)


@dataclass
class Report:
    """Outcome of a validator; truthy iff no violation was found."""

    violations: list[Violation] = field(default_factory=list)
    width: Optional[int] = None
    layered_width: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    c: int
    r: int


@dataclass(frozen=True)
class Bipartition:
    """Result of :func:`bipartition`: a 2-coloring or an odd cycle."""

    coloring: Optional[tuple[int, ...]] = None
    odd_cycle: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.coloring is not None


def bfs_distances(g: Graph, root: int) -> list[int]:
    """Distances from ``root``; unreachable vertices get -1."""
    g.check_vertex(root)
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_tree(g: Graph, root: int) -> tuple[list[int], list[int]]:
    """BFS parent array (root and unreached vertices map to -1) and visit order."""
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
                queue.append(w)
    return parent, order


def bfs_layering(g: Graph, root: int) -> Layering:
    dist = bfs_distances(g, root)
    if any(d < 0 for d in dist):
        raise DisconnectedGraph("breadth-first layering needs a connected graph")
    return Layering.from_layer_of(dist)


def _check_coverage(n: int, vertices: Iterable[int], what: str) -> None:
    got = sorted(vertices)
    if got != list(range(n)):
        raise CoverageMismatch(f"{what} does not cover exactly the vertices 0..{n - 1}")


def validate_layering(g: Graph, layering: Layering) -> Report:
    _check_coverage(g.n, layering.vertices(), "layering")
    where = layering.layer_of
    bad = [(u, v) for u, v in g.edges if abs(where[u] - where[v]) > 1]
    return Report([Violation("BadSpan", edges=(e,)) for e in bad])


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def bipartition(g: Graph) -> Bipartition:
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return Bipartition(odd_cycle=_odd_cycle(parent, u, w))
    return Bipartition(coloring=tuple(color))


def _odd_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    # u and w share a color and lie in the same BFS tree; splice their root paths
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] >= 0:
        path_w.append(parent[path_w[-1]])
    on_w = {x: i for i, x in enumerate(path_w)}
    for i, x in enumerate(path_u):
        if x in on_w:
            j = on_w[x]
            return tuple(path_u[: i + 1] + path_w[:j][::-1])
    raise AssertionError("vertices are not in the same tree")


def is_caterpillar_forest(g: Graph) -> bool:
    if not is_forest(g):
        return False
    deg = [len(nb) for nb in g.adj]
    spine = [v for v in range(g.n) if deg[v] > 1]
    on_spine = set(spine)
    for v in spine:
        if sum(1 for w in g.adj[v] if w in on_spine) > 2:
            return False
    # a forest whose non-leaves all have spine-degree <= 2 has paths as spines
    return True


def graph_stats(g: Graph) -> GraphStats:
    c = len(connected_components(g))
    return GraphStats(n=g.n, m=g.m, c=c, r=g.m - g.n + c)


def biconnected_components(g: Graph) -> list[list[Edge]]:
    """Blocks of ``g`` as edge lists (iterative Hopcroft-Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[list[Edge]] = []
    time = 0
    for s in range(g.n):
        if disc[s] >= 0:
            continue
        disc[s] = low[s] = time
        time += 1
        edge_stack: list[Edge] = []
        stack = [(s, -1, iter(sorted(g.adj[s])))]
        while stack:
            u, pu, it = stack[-1]
            advanced = False
            for w in it:
                if w == pu:
                    continue
                if disc[w] < 0:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = time
                    time += 1
                    stack.append((w, u, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if pu >= 0:
                low[pu] = min(low[pu], low[u])
                if low[u] >= disc[pu]:
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append((min(e), max(e)))
                        if e == (pu, u):
                            break
                    blocks.append(sorted(block))
    return blocks


def iter_cycles(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every simple cycle once, starting at its smallest vertex.

    Of the two orientations, the one whose second vertex is smaller is kept.
    """
    for s in range(g.n):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in g.adj[s] if w > s))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= 3 and s in g.adj[nxt] and path[1] < nxt:
                yield tuple(path)
            stack.append(iter(sorted(w for w in g.adj[nxt] if w > s and w not in on_path)))


def embed_by_coordinates(g: Graph, coords: Sequence[Sequence[float]]) -> Graph:
    """Copy of ``g`` whose rotation is the counterclockwise order of edges at
    each vertex under the straight-line drawing ``coords``."""
    rot = []
    for v in range(g.n):
        x, y = coords[v]
        inc = [i for i, e in enumerate(g.edges) if v in e]
        inc.sort(key=lambda i: math.atan2(coords[_other(g.edges[i], v)][1] - y, coords[_other(g.edges[i], v)][0] - x))
        rot.append(tuple(inc))
    return Graph(g.n, g.edges, tuple(rot), g.labels)


def _other(e: Edge, v: int) -> int:
    return e[1] if e[0] == v else e[0]


def rotation_neighbors(g: Graph) -> list[list[int]]:
    """Rotation as neighbour lists instead of edge indices."""
    if g.rotation is None:
        raise ValueError("graph has no rotation system")
    return [[_other(g.edges[i], v) for i in r] for v, r in enumerate(g.rotation)]


def faces(g: Graph) -> list[list[int]]:
    """Facial walks of the embedded graph, as vertex sequences.

    Leaving ``v`` after arriving from ``u``, the walk takes the neighbour
    following ``u`` in the rotation at ``v``.
    """
    nbrs = rotation_neighbors(g)
    where = [{w: i for i, w in enumerate(r)} for r in nbrs]
    seen = set()
    walks = []
    for u in range(g.n):
        for v in nbrs[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                r = nbrs[b]
                a, b = b, r[(where[b][a] + 1) % len(r)]
            walks.append(walk)
    return walks


def from_rotation(nbrs: Sequence[Sequence[int]]) -> Graph:
    """Embedded graph from per-vertex cyclic neighbour lists."""
    edges: list[Edge] = []
    index: dict[Edge, int] = {}
    for v, r in enumerate(nbrs):
        for w in r:
            e = (min(v, w), max(v, w))
            if e not in index:
                index[e] = len(edges)
                edges.append(e)
    rot = tuple(tuple(index[(min(v, w), max(v, w))] for w in r) for v, r in enumerate(nbrs))
    return Graph(len(nbrs), tuple(edges), rot)
