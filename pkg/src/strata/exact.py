"""Exponential-time exact oracles for desk-scale instances.

All solvers are deterministic and take an explicit :class:`SolverBudget`;
running past it raises :class:`~strata.errors.BudgetExceeded`.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, InvalidLayering
from .graph import (
    Graph,
    Layering,
    bfs_tree,
    bipartition,
    connected_components,
    is_caterpillar_forest,
    validate_layering,
)
from .layout import LayeredPathDecomposition, LeveledDrawing, PathDecomposition, TrackLayout

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverBudget:
    max_vertices: int = 14
    max_states: int = 5_000_000
    time_hint: Optional[float] = None

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_states <= 0:
            raise ValueError("budget caps must be positive")

    def check_size(self, n: int, what: str) -> None:
        if n > self.max_vertices:
            raise BudgetExceeded(f"{what}: {n} vertices exceeds the budget of {self.max_vertices}")


LEVELED_BUDGET = SolverBudget(max_vertices=14)
TRACK_BUDGET = SolverBudget(max_vertices=10)
LAYERED_PW_BUDGET = SolverBudget(max_vertices=10)
PATHWIDTH_BUDGET = SolverBudget(max_vertices=18)


class _Counter:
    def __init__(self, budget: SolverBudget):
        self.left = budget.max_states

    def tick(self, k: int = 1) -> None:
        self.left -= k
        if self.left < 0:
            raise BudgetExceeded("state budget exhausted")


# ---------------------------------------------------------------------------
# Fixed-layering realizability
# ---------------------------------------------------------------------------


def realize_layering(
    g: Graph, layering: Layering, weak: bool = False, budget: Optional[SolverBudget] = None
) -> Optional[LeveledDrawing]:
    """Find per-layer orders making ``layering`` a (weakly) leveled planar drawing.

    Layers are filled top to bottom.  Given the order of layer i-1, two
    vertices x before y of layer i are compatible iff every previous-layer
    neighbour of x sits at or left of every previous-layer neighbour of y, so
    each layer is grown left to right against a running maximum.  Dead
    prefixes are memoised on the relative order of the vertices that have
    neighbours in the next layer, which is all the future depends on.
    """
    budget = budget or SolverBudget(max_vertices=max(g.n, 1))
    counter = _Counter(budget)
    if not validate_layering(g, layering):
        raise InvalidLayering("layering has an edge spanning more than one boundary")
    where = layering.layer_of
    layers = layering.layers
    same: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        if where[u] == where[v]:
            if not weak:
                raise InvalidLayering("strict realization needs every edge between consecutive layers")
            same[u].append(v)
            same[v].append(u)
    if weak and not _linear_forest(g.n, same):
        return None
    prev_nb = [[w for w in g.adj[v] if where[w] == where[v] - 1] for v in range(g.n)]
    has_next = [any(where[w] == where[v] + 1 for w in g.adj[v]) for v in range(g.n)]
    dead: list[set] = [set() for _ in layers]
    orders: list[list[int]] = []

    def layer_orders(i: int, prev_pos: dict[int, int]) -> Iterator[list[int]]:
        verts = layers[i]
        lo, hi = {}, {}
        for v in verts:
            ps = [prev_pos[w] for w in prev_nb[v]]
            if ps:
                lo[v], hi[v] = min(ps), max(ps)
        # interchangeable vertices: no future, no same-level edges, same interval
        cls = {v: (lo.get(v), hi.get(v)) for v in verts if not has_next[v] and not same[v]}
        placed: list[int] = []
        used = set()

        def grow(run_max: int) -> Iterator[list[int]]:
            if len(placed) == len(verts):
                yield list(placed)
                return
            last = placed[-1] if placed else None
            forced = None
            if last is not None:
                pending = [z for z in same[last] if z not in used]
                if pending:
                    forced = pending[0]
            tried_cls = set()
            for x in ([forced] if forced is not None else verts):
                if x in used:
                    continue
                if x in lo and lo[x] < run_max:
                    continue
                if any(z in used and z != last for z in same[x]):
                    continue
                if x in cls:
                    if cls[x] in tried_cls:
                        continue
                    tried_cls.add(cls[x])
                counter.tick()
                placed.append(x)
                used.add(x)
                yield from grow(max(run_max, hi.get(x, run_max)))
                used.discard(x)
                placed.pop()

        yield from grow(-1)

    def solve(i: int, prev_pos: dict[int, int]) -> bool:
        if i == len(layers):
            return True
        for order in layer_orders(i, prev_pos):
            key = tuple(v for v in order if has_next[v])
            if key in dead[i]:
                continue
            orders.append(order)
            if solve(i + 1, {v: p for p, v in enumerate(order)}):
                return True
            orders.pop()
            dead[i].add(key)
        return False

    if not solve(0, {}):
        return None
    return LeveledDrawing(tuple(tuple(o) for o in orders), weak=weak)


def _linear_forest(n: int, same: list[list[int]]) -> bool:
    if any(len(s) > 2 for s in same):
        return False
    seen = [False] * n
    for s in range(n):
        if seen[s] or not same[s]:
            continue
        # component of a max-degree-2 graph is a path iff it has an endpoint
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in same[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if all(len(same[u]) == 2 for u in comp):
            return False
    return True


# ---------------------------------------------------------------------------
# Leveled planarity
# ---------------------------------------------------------------------------


def _components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    return [g.induced(c) for c in connected_components(g)]


def _strict_level_functions(h: Graph, counter: _Counter, prune: bool) -> Iterator[list[int]]:
    """Level functions of connected bipartite ``h`` with every edge spanning 1.

    The root (vertex 0) sits at level 0 and its first BFS child at +1, which
    removes the reflection symmetry.  With ``prune`` set, vertices sharing
    three or more neighbours are forced exactly two levels apart: a K_{2,3}
    has a leveled planar drawing only with its 3-side on the middle level.
    """
    parent, order = bfs_tree(h, 0)
    n = h.n
    level = [0] * n
    assigned = [False] * n
    assigned[0] = True
    mates: list[list[int]] = [[] for _ in range(n)]
    if prune:
        for x in range(n):
            for y in range(x + 1, n):
                if len(h.adj[x] & h.adj[y]) >= 3:
                    mates[x].append(y)
                    mates[y].append(x)

    def place(i: int) -> Iterator[list[int]]:
        if i == n:
            yield list(level)
            return
        v = order[i]
        choices = (1,) if i == 1 else (1, -1)
        for s in choices:
            counter.tick()
            lv = level[parent[v]] + s
            if any(assigned[w] and abs(level[w] - lv) != 1 for w in h.adj[v]):
                continue
            if any(assigned[w] and abs(level[w] - lv) != 2 for w in mates[v]):
                continue
            level[v] = lv
            assigned[v] = True
            yield from place(i + 1)
            assigned[v] = False

    yield from place(1)


def leveled_planar_exact(
    g: Graph, budget: Optional[SolverBudget] = None, prune: bool = True
) -> Optional[LeveledDrawing]:
    """A strict leveled planar drawing of ``g``, or None if there is none.

    Components are solved separately and stacked (their level ranges are
    concatenated).
    """
    budget = budget or LEVELED_BUDGET
    budget.check_size(g.n, "leveled_planar_exact")
    if not bipartition(g):
        return None
    counter = _Counter(budget)
    levels: list[tuple[int, ...]] = []
    for h, old in _components(g):
        found = None
        for lv in _strict_level_functions(h, counter, prune):
            lo = min(lv)
            layering = Layering.from_layer_of([x - lo for x in lv])
            d = realize_layering(h, layering, budget=SolverBudget(budget.max_vertices, max(counter.left, 1)))
            if d is not None:
                found = d
                break
        if found is None:
            return None
        levels.extend(tuple(old[v] for v in lvl) for lvl in found.levels)
    return LeveledDrawing(tuple(levels))


def weakly_leveled_planar_exact(g: Graph, budget: Optional[SolverBudget] = None) -> Optional[LeveledDrawing]:
    """A weakly leveled planar drawing of ``g``, or None (exhaustive over layerings)."""
    budget = budget or SolverBudget(max_vertices=10)
    budget.check_size(g.n, "weakly_leveled_planar_exact")
    counter = _Counter(budget)
    levels: list[tuple[int, ...]] = []
    for h, old in _components(g):
        found = None
        for layering in enumerate_layerings(h, canonical=True):
            counter.tick()
            found = realize_layering(h, layering, weak=True, budget=SolverBudget(budget.max_vertices, max(counter.left, 1)))
            if found is not None:
                break
        if found is None:
            return None
        levels.extend(tuple(old[v] for v in lvl) for lvl in found.levels)
    return LeveledDrawing(tuple(levels), weak=True)


def enumerate_layerings(g: Graph, canonical: bool = False) -> Iterator[Layering]:
    """Every layering of a connected graph.

    A layering of a connected graph is fixed by the level differences along a
    spanning tree, so all of them arise from the 3^(n-1) difference vectors
    (after normalising the lowest level to 0).  With ``canonical`` set only
    one of each mirror pair is produced.
    """
    if g.n == 0:
        return
    parent, order = bfs_tree(g, 0)
    if len(order) != g.n:
        raise ValueError("enumerate_layerings needs a connected graph")
    level = [0] * g.n

    def place(i: int) -> Iterator[list[int]]:
        if i == g.n:
            yield list(level)
            return
        v = order[i]
        for s in (-1, 0, 1):
            lv = level[parent[v]] + s
            if all(abs(level[w] - lv) <= 1 for w in g.adj[v] if w in placed):
                level[v] = lv
                placed.add(v)
                yield from place(i + 1)
                placed.discard(v)

    placed = {0}
    for lv in place(1):
        if canonical:
            nz = next((x for x in lv if x != 0), 0)
            if nz < 0:
                continue
        lo = min(lv)
        yield Layering.from_layer_of([x - lo for x in lv])


# ---------------------------------------------------------------------------
# Track layouts
# ---------------------------------------------------------------------------


def caterpillar_two_track(g: Graph) -> TrackLayout:
    """2-track layout of a caterpillar forest (caller checks the class)."""
    a: list[int] = []
    b: list[int] = []
    tracks = (a, b)
    for comp in connected_components(g):
        if len(comp) == 1:
            a.append(comp[0])
            continue
        comp_set = set(comp)
        spine = [v for v in comp if len(g.adj[v]) > 1]
        if not spine:  # a single edge
            spine = [comp[0]]
        on_spine = set(spine)
        start = next(v for v in spine if sum(w in on_spine for w in g.adj[v]) <= 1)
        path, prev = [start], None
        while True:
            nxt = [w for w in g.adj[path[-1]] if w in on_spine and w != prev]
            if not nxt:
                break
            prev = path[-1]
            path.append(nxt[0])
        for i, s in enumerate(path):
            c = i % 2
            tracks[c].append(s)
            tracks[1 - c].extend(sorted(w for w in g.adj[s] if w not in on_spine and w in comp_set))
    return TrackLayout((tuple(a), tuple(b)))


def _search_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen = [False] * g.n
    for s in sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u], key=lambda x: (-len(g.adj[x]), x)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def _adj_matrix(g: Graph) -> np.ndarray:
    m = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges:
        m[u, v] = m[v, u] = 1
    return m


def track_layout_exists(
    g: Graph, k: int, budget: Optional[SolverBudget] = None, method: str = "auto"
) -> Optional[TrackLayout]:
    """A ``k``-track layout of ``g`` or None.

    ``method="auto"`` answers k <= 2 by recognition (edgeless / caterpillar
    forest); ``method="search"`` always runs the exhaustive search, which is
    what cross-checks use.
    """
    if method not in ("auto", "search"):
        raise ValueError(f"unknown method {method!r}")
    if g.n == 0:
        return TrackLayout(())
    if k <= 0:
        return None
    if method == "auto":
        if k >= g.n:
            return TrackLayout(tuple((v,) for v in range(g.n)))
        if g.m == 0:
            return TrackLayout((tuple(range(g.n)),))
        if k == 1:
            return None
        if is_caterpillar_forest(g):
            return caterpillar_two_track(g)
        if k == 2:
            return None
    budget = budget or TRACK_BUDGET
    budget.check_size(g.n, "track_layout_exists")
    status, tracks, _ = kernels.track_search(_adj_matrix(g), _search_order(g), k, budget.max_states)
    if status < 0:
        raise BudgetExceeded("track layout search exhausted its state budget")
    if status == 0:
        return None
    return TrackLayout(tuple(tracks)).compact()


def minimum_track_layout(g: Graph, budget: Optional[SolverBudget] = None, method: str = "auto") -> TrackLayout:
    for k in range(0 if g.n == 0 else 1, g.n + 1):
        t = track_layout_exists(g, k, budget, method)
        if t is not None:
            return t
    raise AssertionError("singleton tracks always work")


def track_number_exact(g: Graph, budget: Optional[SolverBudget] = None, method: str = "auto") -> int:
    return minimum_track_layout(g, budget, method).nonempty


# ---------------------------------------------------------------------------
# Pathwidth and layered pathwidth
# ---------------------------------------------------------------------------


def _bags_from_order(g: Graph, order: Sequence[int]) -> list[frozenset[int]]:
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    for i, v in enumerate(order):
        bag = {v}
        for u in order[:i]:
            if any(pos[w] >= i for w in g.adj[u]):
                bag.add(u)
        bags.append(frozenset(bag))
    return bags


def _masks(h: Graph) -> np.ndarray:
    return np.array(h.adj_masks, dtype=np.int64)


def pathwidth_decomposition(g: Graph, budget: Optional[SolverBudget] = None) -> PathDecomposition:
    budget = budget or PATHWIDTH_BUDGET
    bags: list[frozenset[int]] = []
    for h, old in _components(g):
        budget.check_size(h.n, "pathwidth_exact")
        _, order = kernels.layered_vertex_separation(_masks(h), np.zeros(h.n, np.int64), 1)
        bags.extend(frozenset(old[v] for v in b) for b in _bags_from_order(h, order))
    return PathDecomposition(tuple(bags))


def pathwidth_exact(g: Graph, budget: Optional[SolverBudget] = None) -> int:
    budget = budget or PATHWIDTH_BUDGET
    best = -1
    for h, _ in _components(g):
        budget.check_size(h.n, "pathwidth_exact")
        value, _ = kernels.layered_vertex_separation(_masks(h), np.zeros(h.n, np.int64), 1)
        best = max(best, value - 1)
    return best


def layered_pathwidth_exact(
    g: Graph, budget: Optional[SolverBudget] = None
) -> tuple[int, LayeredPathDecomposition]:
    """Layered pathwidth of ``g`` with a witness decomposition.

    Components are independent: their decompositions are concatenated and
    their layerings aligned at layer 0, so the answer is the component max.
    """
    budget = budget or LAYERED_PW_BUDGET
    best = 0
    layer_of = [0] * g.n
    bags: list[frozenset[int]] = []
    for h, old in _components(g):
        budget.check_size(h.n, "layered_pathwidth_exact")
        parent, order = bfs_tree(h, 0)
        value, layer = kernels.best_layering(_masks(h), order, parent, list(h.edges), lb=max(best, 1))
        assert layer is not None
        best = max(best, value)
        _, vorder = kernels.layered_vertex_separation(_masks(h), layer, int(layer.max()) + 1)
        for v in range(h.n):
            layer_of[old[v]] = int(layer[v])
        bags.extend(frozenset(old[v] for v in b) for b in _bags_from_order(h, vorder))
    decomposition = LayeredPathDecomposition(PathDecomposition(tuple(bags)), Layering.from_layer_of(layer_of))
    return best, decomposition


# ---------------------------------------------------------------------------
# Batch mode
# ---------------------------------------------------------------------------


def map_instances(fn: Callable, items: Iterable, workers: int = 1) -> list:
    """Apply ``fn`` to independent instances, optionally across processes.

    Results come back in input order regardless of completion order.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
