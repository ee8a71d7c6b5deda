"""Hot inner loops of the exact solvers.

Every kernel has a numba-compiled form and a fallback.  For the subset
dynamic program the fallback is vectorised numpy (one pass per subset size);
the backtracking kernels fall back to the same code run by the interpreter.
Which path is used is decided once, at import, by :mod:`strata._accel`.

Bit conventions: vertex ``v`` is bit ``1 << v``; ``adj[v]`` is the neighbour
mask of ``v``.  Graphs handed to these kernels have at most 20 vertices.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from ._accel import USE_NUMBA, njit

INF = 1 << 30


# ---------------------------------------------------------------------------
# Subset DP: min over vertex orders of the max per-layer bag load.
#
# For an order v_1..v_n the bags B_i = {v_i} | {u before v_i with a neighbour
# at or after v_i} form a path decomposition; restricting to such bags loses
# nothing (each B_i is contained in the introduction bag of v_i in any other
# decomposition).  With all vertices on one layer this is vertex separation,
# i.e. pathwidth + 1.
# ---------------------------------------------------------------------------


@njit
def _layered_vs_numba(adj, layer, n_layers, cap):
    n = adj.shape[0]
    size = 1 << n
    full = size - 1
    f = np.full(size, INF, np.int64)
    last = np.full(size, -1, np.int64)
    f[0] = 0
    counts = np.zeros(n_layers, np.int64)
    for s in range(size):
        fs = f[s]
        if fs >= cap:
            continue
        for j in range(n_layers):
            counts[j] = 0
        mx = 0
        outside = full & ~s
        for u in range(n):
            if (s >> u) & 1 and (adj[u] & outside) != 0:
                c = counts[layer[u]] + 1
                counts[layer[u]] = c
                if c > mx:
                    mx = c
        for v in range(n):
            if (s >> v) & 1:
                continue
            cost = counts[layer[v]] + 1
            if cost < mx:
                cost = mx
            if cost < fs:
                cost = fs
            if cost >= cap:
                continue
            t = s | (1 << v)
            if cost < f[t]:
                f[t] = cost
                last[t] = v
    return f[full], last


def _layered_vs_numpy(adj, layer, n_layers, cap):
    n = len(adj)
    size = 1 << n
    states = np.arange(size, dtype=np.int64)
    full = size - 1
    counts = np.zeros((n_layers, size), dtype=np.int64)
    for u in range(n):
        in_s = (states >> u) & 1
        has_out = ((int(adj[u]) & (full & ~states)) != 0).astype(np.int64)
        counts[int(layer[u])] += in_s * has_out
    mx = counts.max(axis=0) if n_layers else np.zeros(size, np.int64)
    popcount = np.zeros(size, dtype=np.int64)
    for u in range(n):
        popcount += (states >> u) & 1
    f = np.full(size, INF, dtype=np.int64)
    last = np.full(size, -1, dtype=np.int64)
    f[0] = 0
    for k in range(n):
        level = states[popcount == k]
        level = level[f[level] < cap]
        for v in range(n):
            src = level[((level >> v) & 1) == 0]
            if src.size == 0:
                continue
            cost = np.maximum(np.maximum(mx[src], counts[int(layer[v]), src] + 1), f[src])
            dst = src | (1 << v)
            better = (cost < cap) & (cost < f[dst])
            f[dst[better]] = cost[better]
            last[dst[better]] = v
    return int(f[full]), last


def layered_vertex_separation(adj, layer, n_layers, cap=INF):
    """Return ``(value, order)`` minimising the max bag/layer intersection.

    ``value`` is ``INF`` (and ``order`` is None) when nothing beats ``cap``.
    """
    adj = np.asarray(adj, dtype=np.int64)
    layer = np.asarray(layer, dtype=np.int64)
    n = adj.shape[0]
    if n == 0:
        return 0, []
    if USE_NUMBA:
        value, last = _layered_vs_numba(adj, layer, int(n_layers), int(cap))
    else:
        value, last = _layered_vs_numpy(adj, layer, int(n_layers), int(cap))
    value = int(value)
    if value >= INF:
        return INF, None
    return value, _unwind(last, n)


def _unwind(last, n):
    order = []
    s = (1 << n) - 1
    while s:
        v = int(last[s])
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return order


# ---------------------------------------------------------------------------
# Layering enumeration fused with the DP above.
# ---------------------------------------------------------------------------


@njit
def _best_layering_numba(adj, tree_order, tree_parent, eu, ev, lb, cap):
    n = adj.shape[0]
    digits = np.zeros(n, np.int64)  # digit per tree_order position; 0,1,2 -> -1,0,+1
    level = np.zeros(n, np.int64)
    layer = np.zeros(n, np.int64)
    best = cap
    best_layer = np.zeros(n, np.int64)
    found = False
    m = eu.shape[0]
    while True:
        for i in range(1, n):
            v = tree_order[i]
            level[v] = level[tree_parent[v]] + digits[i] - 1
        ok = True
        for e in range(m):
            d = level[eu[e]] - level[ev[e]]
            if d > 1 or d < -1:
                ok = False
                break
        if ok:
            # canonical orientation: first vertex off level 0 lies above it
            for v in range(n):
                if level[v] != 0:
                    if level[v] < 0:
                        ok = False
                    break
        if ok:
            lo = level[0]
            hi = level[0]
            for v in range(n):
                if level[v] < lo:
                    lo = level[v]
                if level[v] > hi:
                    hi = level[v]
            for v in range(n):
                layer[v] = level[v] - lo
            value, _ = _layered_vs_numba(adj, layer, hi - lo + 1, best)
            if value < best:
                best = value
                found = True
                for v in range(n):
                    best_layer[v] = layer[v]
                if best <= lb:
                    break
        # odometer step over positions 1..n-1
        i = 1
        while i < n:
            digits[i] += 1
            if digits[i] < 3:
                break
            digits[i] = 0
            i += 1
        if i >= n:
            break
    return best, found, best_layer


def _best_layering_numpy(adj, tree_order, tree_parent, eu, ev, lb, cap):
    n = len(adj)
    best, best_layer = cap, None
    level = np.zeros(n, dtype=np.int64)
    for digits in product((-1, 0, 1), repeat=n - 1):
        for i in range(1, n):
            v = tree_order[i]
            level[v] = level[tree_parent[v]] + digits[i - 1]
        if len(eu) and np.abs(level[eu] - level[ev]).max() > 1:
            continue
        nz = np.flatnonzero(level)
        if nz.size and level[nz[0]] < 0:
            continue
        layer = level - level.min()
        value, _ = _layered_vs_numpy(adj, layer, int(layer.max()) + 1, best)
        if value < best:
            best, best_layer = value, layer.copy()
            if best <= lb:
                break
    return best, best_layer is not None, best_layer


def best_layering(adj, tree_order, tree_parent, edges, lb=1, cap=INF):
    """Layering of a connected graph minimising the layered vertex separation.

    ``tree_order``/``tree_parent`` describe a spanning tree rooted at vertex 0
    (``tree_order[0] == 0``).  Returns ``(value, layer_of)``; ``layer_of`` is
    None when no layering beats ``cap``.
    """
    adj = np.asarray(adj, dtype=np.int64)
    n = adj.shape[0]
    if n == 0:
        return 0, np.zeros(0, np.int64)
    order = np.asarray(tree_order, dtype=np.int64)
    parent = np.asarray(tree_parent, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    eu, ev = edges[:, 0].copy(), edges[:, 1].copy()
    fn = _best_layering_numba if USE_NUMBA else _best_layering_numpy
    value, found, layer = fn(adj, order, parent, eu, ev, int(lb), int(cap))
    if not found:
        return INF, None
    return int(value), np.asarray(layer, dtype=np.int64)


# ---------------------------------------------------------------------------
# k-track layout search.
# ---------------------------------------------------------------------------


@njit
def _insert(seq, tlen, track, pos, v, t, p):
    for j in range(tlen[t], p, -1):
        seq[t, j] = seq[t, j - 1]
        pos[seq[t, j]] = j
    seq[t, p] = v
    pos[v] = p
    track[v] = t
    tlen[t] += 1


@njit
def _remove(seq, tlen, track, pos, v):
    t = track[v]
    p = pos[v]
    for j in range(p, tlen[t] - 1):
        seq[t, j] = seq[t, j + 1]
        pos[seq[t, j]] = j
    tlen[t] -= 1
    seq[t, tlen[t]] = -1
    track[v] = -1
    pos[v] = -1


@njit
def _crosses_after_insert(adjm, seq, tlen, track, pos, v):
    n = adjm.shape[0]
    t = track[v]
    pv = pos[v]
    for a in range(n):
        if adjm[v, a] == 0 or track[a] < 0:
            continue
        s = track[a]
        pa = pos[a]
        for j in range(tlen[t]):
            y = seq[t, j]
            if y == v:
                continue
            for i in range(tlen[s]):
                b = seq[s, i]
                if b == a or adjm[y, b] == 0:
                    continue
                if (j - pv) * (i - pa) < 0:
                    return True
    return False


@njit
def _track_search(adjm, order, k, max_states):
    n = adjm.shape[0]
    seq = np.full((k, max(n, 1)), -1, np.int64)
    tlen = np.zeros(k, np.int64)
    track = np.full(n, -1, np.int64)
    pos = np.full(n, -1, np.int64)
    cur_t = np.full(n, -1, np.int64)
    cur_p = np.full(n, -1, np.int64)
    used = np.zeros(n + 1, np.int64)
    states = 0
    if n == 0:
        return 1, track, seq, tlen, states
    depth = 0
    while depth >= 0:
        v = order[depth]
        t = cur_t[depth]
        p = cur_p[depth]
        if t >= 0:
            _remove(seq, tlen, track, pos, v)
            p += 1
            if p > tlen[t]:
                t += 1
                p = 0
        else:
            t = 0
            p = 0
        limit = used[depth] + 1
        if limit > k:
            limit = k
        placed = False
        while t < limit:
            if p == 0:
                clash = False
                for j in range(tlen[t]):
                    if adjm[v, seq[t, j]] != 0:
                        clash = True
                        break
                if clash:
                    t += 1
                    continue
            states += 1
            if states > max_states:
                return -1, track, seq, tlen, states
            _insert(seq, tlen, track, pos, v, t, p)
            if not _crosses_after_insert(adjm, seq, tlen, track, pos, v):
                placed = True
                break
            _remove(seq, tlen, track, pos, v)
            p += 1
            if p > tlen[t]:
                t += 1
                p = 0
        if placed:
            cur_t[depth] = t
            cur_p[depth] = p
            opened = 1 if t == used[depth] else 0
            depth += 1
            if depth == n:
                return 1, track, seq, tlen, states
            used[depth] = used[depth - 1] + opened
            cur_t[depth] = -1
        else:
            cur_t[depth] = -1
            depth -= 1
    return 0, track, seq, tlen, states


def track_search(adjm, order, k, max_states):
    """Search for a ``k``-track layout, placing vertices in ``order``.

    Returns ``(status, tracks, states)`` with status 1 (found), 0 (none
    exists) or -1 (state budget exhausted).
    """
    adjm = np.ascontiguousarray(adjm, dtype=np.uint8)
    order = np.asarray(order, dtype=np.int64)
    status, _track, seq, tlen, states = _track_search(adjm, order, int(k), int(max_states))
    tracks = None
    if status == 1:
        tracks = [tuple(int(x) for x in seq[t, : tlen[t]]) for t in range(k)]
    return int(status), tracks, int(states)
