"""Slow, obviously-correct reference implementations used only by tests."""

import itertools

from strata.graph import Layering
from strata.layout import LeveledDrawing, validate_leveled_drawing


def order_bags(g, order):
    pos = {v: i for i, v in enumerate(order)}
    return [{v} | {u for u in order[:i] if any(pos[w] >= i for w in g.adj[u])} for i, v in enumerate(order)]


def pathwidth_brute(g):
    if g.n == 0:
        return -1
    return min(max(len(b) for b in order_bags(g, order)) for order in itertools.permutations(range(g.n))) - 1


def layered_load_brute(g, layer_of):
    best = None
    for order in itertools.permutations(range(g.n)):
        load = 0
        for b in order_bags(g, order):
            counts = {}
            for v in b:
                counts[layer_of[v]] = counts.get(layer_of[v], 0) + 1
            load = max(load, max(counts.values()))
        best = load if best is None else min(best, load)
    return best


def all_level_functions(g, span):
    """Every level function with values in range(span), |delta| <= 1 per edge."""
    for levels in itertools.product(range(span), repeat=g.n):
        if 0 not in levels:
            continue
        if all(abs(levels[u] - levels[v]) <= 1 for u, v in g.edges):
            if set(levels) == set(range(max(levels) + 1)):
                yield list(levels)


def realize_brute(g, layering, weak=False):
    options = [list(itertools.permutations(lv)) for lv in layering.layers]
    for choice in itertools.product(*options):
        d = LeveledDrawing(tuple(choice), weak=weak)
        if validate_leveled_drawing(g, d).ok:
            return d
    return None


def leveled_planar_brute(g):
    for lv in all_level_functions(g, g.n):
        layering = Layering.from_layer_of(lv)
        if any(lv[u] == lv[v] for u, v in g.edges):
            continue
        if realize_brute(g, layering) is not None:
            return True
    return False
