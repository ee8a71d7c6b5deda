"""Direct (weakly) leveled planar drawings for special graph classes."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .errors import InvalidDiagram, InvalidHalinInput, NotALeaf, NotATree, NotBipartite, RealizationFailed
from .exact import SolverBudget, realize_layering
from .graph import (
    Graph,
    Layering,
    bfs_distances,
    bfs_layering,
    bipartition,
    faces,
    is_tree,
    rotation_neighbors,
)
from .layout import LeveledDrawing, validate_leveled_drawing

log = logging.getLogger(__name__)


def _children_order(g: Graph, v: int, parent: int) -> list[int]:
    """Neighbours of ``v`` other than ``parent``, in embedding order when
    there is one (starting after the parent), else by index."""
    if g.rotation is None:
        return sorted(w for w in g.adj[v] if w != parent)
    r = rotation_neighbors(g)[v]
    if parent in r:
        i = r.index(parent)
        r = r[i + 1 :] + r[:i]
    return r


def tree_leveled_drawing(t: Graph, root: int = 0) -> LeveledDrawing:
    """BFS depth as level, DFS preorder inside each level."""
    if not is_tree(t):
        raise NotATree("tree_leveled_drawing needs a tree")
    t.check_vertex(root)
    levels: list[list[int]] = []
    stack = [(root, -1, 0)]
    while stack:
        v, p, depth = stack.pop()
        if depth == len(levels):
            levels.append([])
        levels[depth].append(v)
        for w in reversed(_children_order(t, v, p)):
            stack.append((w, v, depth + 1))
    return LeveledDrawing(tuple(tuple(lv) for lv in levels))


# ---------------------------------------------------------------------------
# Outerplanar graphs and squaregraphs
# ---------------------------------------------------------------------------


def outer_face(g: Graph) -> list[int]:
    """The longest facial walk through every vertex."""
    best: Optional[list[int]] = None
    for walk in faces(g):
        if len(set(walk)) == g.n and (best is None or len(walk) > len(best)):
            best = walk
    if best is None:
        raise RealizationFailed("no face contains every vertex; the embedding is not outerplanar")
    return best


def _circle_order(g: Graph, root: int) -> dict[int, int]:
    walk = outer_face(g)
    i = walk.index(root)
    walk = walk[i:] + walk[:i]
    pos: dict[int, int] = {}
    for v in walk:
        pos.setdefault(v, len(pos))
    return pos


def _bfs_circle_drawing(g: Graph, root: int, weak: bool) -> LeveledDrawing:
    """BFS levels, each ordered by first visit along the outer face from the root."""
    layering = bfs_layering(g, root)
    pos = _circle_order(g, root)
    return LeveledDrawing(tuple(tuple(sorted(lv, key=pos.__getitem__)) for lv in layering.layers), weak=weak)


def _outerplanar_drawing(g: Graph, root: int, weak: bool, allow_fallback: bool) -> LeveledDrawing:
    g.check_vertex(root)
    if g.n >= 2 and g.m > 2 * g.n - 3:
        raise RealizationFailed("too many edges for an outerplanar graph")
    if g.rotation is not None:
        d = _bfs_circle_drawing(g, root, weak)
        if validate_leveled_drawing(g, d):
            return d
        if not allow_fallback:
            raise RealizationFailed("outer-face order does not give a planar drawing")
        log.warning("outer-face order failed; falling back to the exact realizer")
    d = realize_layering(g, bfs_layering(g, root), weak=weak, budget=SolverBudget(max(g.n, 1), 10_000_000))
    if d is None:
        raise RealizationFailed("BFS layering has no planar realization")
    return d


def bipartite_outerplanar_leveled(g: Graph, root: int = 0, allow_fallback: bool = True) -> LeveledDrawing:
    if not bipartition(g):
        raise NotBipartite("bipartite_outerplanar_leveled needs a bipartite graph")
    return _outerplanar_drawing(g, root, weak=False, allow_fallback=allow_fallback)


def outerplanar_weak_leveled(g: Graph, root: int = 0, allow_fallback: bool = True) -> LeveledDrawing:
    return _outerplanar_drawing(g, root, weak=True, allow_fallback=allow_fallback)


def squaregraph_leveled(g: Graph, root: int = 0, budget: Optional[SolverBudget] = None) -> LeveledDrawing:
    """BFS layering from an outer vertex, ordered by the exact realizer."""
    g.check_vertex(root)
    if not bipartition(g):
        raise NotBipartite("squaregraphs are bipartite")
    budget = budget or SolverBudget(max(g.n, 1), 10_000_000)
    d = realize_layering(g, bfs_layering(g, root), budget=budget)
    if d is None:
        raise RealizationFailed("BFS layering has no planar realization")
    return d


# ---------------------------------------------------------------------------
# Halin graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalinInput:
    plane_tree: Graph

    def __post_init__(self):
        t = self.plane_tree
        if t.rotation is None:
            raise InvalidHalinInput("the tree needs a rotation system")
        if t.n < 4 or not is_tree(t):
            raise InvalidHalinInput("a Halin graph needs a tree on at least 4 vertices")
        if any(len(nb) == 2 for nb in t.adj):
            raise InvalidHalinInput("the tree has a degree-2 vertex")

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.plane_tree.n) if len(self.plane_tree.adj[v]) == 1)

    @cached_property
    def leaf_cycle(self) -> tuple[int, ...]:
        """Leaves in the order a walk around the plane tree meets them."""
        t = self.plane_tree
        nbrs = rotation_neighbors(t)
        start = min(self.leaves)
        order = [start]
        a, b = start, nbrs[start][0]
        while True:
            r = nbrs[b]
            a, b = b, r[(r.index(a) + 1) % len(r)]
            if b == start:
                return tuple(order)
            if b in self.leaves:
                order.append(b)

    @cached_property
    def graph(self) -> Graph:
        cyc = self.leaf_cycle
        return self.plane_tree.with_edges((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def halin_levels(h: HalinInput, root_leaf: int) -> list[int]:
    """Staged level assignment rooted at a leaf.

    Stage i puts on level i every unassigned child of a level i-1 node
    together with the paths from that child to its leftmost and rightmost
    leaf descendants.
    """
    t = h.plane_tree
    parent = {root_leaf: -1}
    order = [root_leaf]
    for u in order:
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    kids = {v: _children_order(t, v, parent[v]) for v in range(t.n)}
    level = {root_leaf: 0}
    frontier = [root_leaf]
    i = 0
    while frontier:
        i += 1
        new = []
        for u in frontier:
            for c in kids[u]:
                if c in level:
                    continue
                for pick in (0, -1):
                    x = c
                    while True:
                        if x not in level:
                            level[x] = i
                            new.append(x)
                        if not kids[x]:
                            break
                        x = kids[x][pick]
        frontier = new
    return [level[v] for v in range(t.n)]


def _inorder(t: Graph, kids: dict[int, list[int]], root: int) -> list[int]:
    """Leftmost subtree, then the node, then the remaining subtrees."""
    out: list[int] = []
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        v, expanded = stack.pop()
        if expanded:
            out.append(v)
            continue
        ks = kids[v]
        if not ks:
            out.append(v)
            continue
        for c in reversed(ks[1:]):
            stack.append((c, False))
        stack.append((v, True))
        stack.append((ks[0], False))
    return out


def _split_cherries(g: Graph, kids: dict[int, list[int]], level: list[int]) -> None:
    """Move one leaf of each flat cherry a level down.

    A node whose only children are two leaves gets all three on one level
    under the staged rule, and the leaf-cycle edge between the two leaves then
    closes a same-level triangle.  One leaf is moved down whenever all of its
    edges still span at most one level.
    """
    for c, ks in kids.items():
        if len(ks) != 2 or any(kids[x] for x in ks):
            continue
        a, b = ks
        if not level[a] == level[b] == level[c]:
            continue
        for x in (b, a):
            if all(abs(level[w] - level[x] - 1) <= 1 for w in g.adj[x]):
                level[x] += 1
                break


def _shift(g: Graph, level: list[int], x: int, delta: int, root: int) -> Optional[list[int]]:
    """Move ``x`` by ``delta`` and drag along every neighbour left two levels
    away; None if the root would move or fall below another vertex."""
    lv = list(level)
    lv[x] += delta
    stack = [x]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if abs(lv[w] - lv[u]) > 1:
                if w == root:
                    return None
                lv[w] += delta
                stack.append(w)
    if min(lv) < 0:
        return None
    return lv


def _same_level_trouble(g: Graph, level: list[int]) -> set[int]:
    """Vertices on same-level triangles or with three same-level neighbours."""
    bad: set[int] = set()
    deg = [0] * g.n
    for u, v in g.edges:
        if level[u] == level[v]:
            deg[u] += 1
            deg[v] += 1
            bad.update(w for w in g.adj[u] & g.adj[v] if level[w] == level[u])
            if any(level[w] == level[u] for w in g.adj[u] & g.adj[v]):
                bad.update((u, v))
    bad.update(v for v in range(g.n) if deg[v] > 2)
    return bad


def _repair_levels(g: Graph, level: list[int], root: int, depth: int, budget: SolverBudget) -> Optional[LeveledDrawing]:
    """Breadth-first search over cascaded one-level moves near trouble spots,
    realizing each candidate layering exactly."""
    frontier = [tuple(level)]
    seen = {tuple(level)}
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            near = _same_level_trouble(g, list(cur)) or set(range(g.n))
            near |= {w for x in near for w in g.adj[x]}
            for x in sorted(near - {root}):
                for delta in (-1, 1):
                    lv = _shift(g, list(cur), x, delta, root)
                    if lv is None or tuple(lv) in seen:
                        continue
                    seen.add(tuple(lv))
                    d = realize_layering(g, Layering.from_layer_of(lv), weak=True, budget=budget)
                    if d is not None:
                        return d
                    nxt.append(tuple(lv))
        frontier = nxt
    return None


def halin_weak_leveled(h: HalinInput, root_leaf: int, allow_fallback: bool = True) -> LeveledDrawing:
    """Weakly leveled planar drawing of the Halin graph of ``h``, root on level 0.

    Levels follow the staged rule with flat cherries split, each level in the
    in-order of the plane tree.  When that fails validation (and
    ``allow_fallback`` is set) the exact realizer is tried on the same
    layering and then on layerings a few cascaded moves away.  K_4 has no
    weak drawing in which same-level edges join consecutive vertices, so it
    always ends in RealizationFailed.
    """
    t = h.plane_tree
    t.check_vertex(root_leaf)
    if root_leaf not in h.leaves:
        raise NotALeaf(f"vertex {root_leaf} is not a leaf of the tree")
    g = h.graph
    level = halin_levels(h, root_leaf)
    parent, queue = {root_leaf: -1}, [root_leaf]
    for u in queue:
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    kids = {v: _children_order(t, v, parent[v]) for v in range(t.n)}
    rank = {v: i for i, v in enumerate(_inorder(t, kids, root_leaf))}
    _split_cherries(g, kids, level)
    layering = Layering.from_layer_of(level)
    d = LeveledDrawing(tuple(tuple(sorted(lv, key=rank.__getitem__)) for lv in layering.layers), weak=True)
    if validate_leveled_drawing(g, d):
        return d
    if allow_fallback:
        budget = SolverBudget(g.n, 2_000_000)
        found = realize_layering(g, layering, weak=True, budget=budget)
        if found is None:
            found = _repair_levels(g, level, root_leaf, depth=3, budget=budget)
        if found is not None:
            return found
    raise RealizationFailed("no weakly leveled planar drawing found from the staged levels")


# ---------------------------------------------------------------------------
# Duals of wiring diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WiringDiagram:
    """``curve_count`` x-monotone curves; swap ``i`` (1-based) exchanges the
    curves at heights i and i+1 counted from the top."""

    curve_count: int
    transpositions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "transpositions", tuple(int(s) for s in self.transpositions))
        if self.curve_count < 0:
            raise InvalidDiagram("curve count must be nonnegative")
        for s in self.transpositions:
            if not 1 <= s < self.curve_count:
                raise InvalidDiagram(f"swap {s} is out of range for {self.curve_count} curves")


def monotone_arrangement_dual(w: WiringDiagram) -> tuple[Graph, Layering, LeveledDrawing]:
    """Dual graph of the arrangement, layered by the number of curves above.

    Gap g (between heights g and g+1) is cut into regions by the swaps with
    index g; regions in gaps g and g+1 are adjacent iff their x-ranges
    overlap.  Vertices are numbered by layer, then left to right.
    """
    k, swaps = w.curve_count, w.transpositions
    end = len(swaps)
    regions: list[list[tuple[int, int]]] = []
    for g in range(k + 1):
        cuts = [-1] + [x for x, s in enumerate(swaps) if s == g] + [end]
        regions.append(list(zip(cuts, cuts[1:])))
    ids = []
    nxt = 0
    for g in range(k + 1):
        ids.append(list(range(nxt, nxt + len(regions[g]))))
        nxt += len(regions[g])
    edges = []
    for g in range(k):
        for i, (a1, b1) in enumerate(regions[g]):
            for j, (a2, b2) in enumerate(regions[g + 1]):
                if max(a1, a2) < min(b1, b2):
                    edges.append((ids[g][i], ids[g + 1][j]))
    graph = Graph.from_edges(nxt, edges)
    levels = tuple(tuple(row) for row in ids)
    return graph, Layering(levels), LeveledDrawing(levels)
