import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import G, cycle, path, trees
from strata.classes import (
    HalinInput,
    WiringDiagram,
    bipartite_outerplanar_leveled,
    halin_weak_leveled,
    monotone_arrangement_dual,
    outerplanar_weak_leveled,
    squaregraph_leveled,
    tree_leveled_drawing,
)
from strata.errors import InvalidDiagram, InvalidHalinInput, NotALeaf, NotATree, NotBipartite, RealizationFailed
from strata.exact import weakly_leveled_planar_exact
from strata.families import (
    complete_binary_tree,
    grid,
    random_outerplanar,
    random_plane_tree,
    random_polyomino,
    random_wiring_diagram,
    star,
)
from strata.graph import bfs_distances, bfs_layering, embed_by_coordinates, from_rotation
from strata.transforms import greedy_layered_path
from strata.layout import validate_layered_path, validate_leveled_drawing


def circle_embedded(g):
    """Embed a graph whose vertices 0..n-1 lie in outer-face order."""
    n = g.n
    coords = [(np.cos(2 * np.pi * i / n), np.sin(2 * np.pi * i / n)) for i in range(n)]
    return embed_by_coordinates(g, coords)


def fan(k):
    """Apex 0 joined to a path 1..k."""
    return circle_embedded(G(k + 1, [(0, i) for i in range(1, k + 1)] + [(i, i + 1) for i in range(1, k)]))


def strict_ok(g, d):
    return not d.weak and validate_leveled_drawing(g, d).ok


def weak_ok(g, d):
    return validate_leveled_drawing(g, d.relaxed()).ok


# trees


def test_tree_examples():
    d = tree_leveled_drawing(path(3), 0)
    assert d.levels == ((0,), (1,), (2,))
    d = tree_leveled_drawing(star(3), 0)
    assert [sorted(lv) for lv in d.levels] == [[0], [1, 2, 3]]
    cbt = complete_binary_tree(3)
    assert strict_ok(cbt, tree_leveled_drawing(cbt))
    with pytest.raises(NotATree):
        tree_leveled_drawing(cycle(4))


@settings(max_examples=150, deadline=None)
@given(trees(min_n=1, max_n=60), st.data())
def test_tree_drawing_levels_are_depths(t, data):
    root = data.draw(st.integers(0, t.n - 1))
    d = tree_leveled_drawing(t, root)
    assert strict_ok(t, d)
    dist = bfs_distances(t, root)
    assert all(dist[v] == i for i, lv in enumerate(d.levels) for v in lv)


# outerplanar


def test_bipartite_outerplanar_c6():
    g = circle_embedded(cycle(6))
    d = bipartite_outerplanar_leveled(g, 0, allow_fallback=False)
    assert [sorted(lv) for lv in d.levels] == [[0], [1, 5], [2, 4], [3]]
    assert strict_ok(g, d)


@pytest.mark.parametrize("root", range(4))
def test_bipartite_outerplanar_c4(root):
    g = circle_embedded(cycle(4))
    d = bipartite_outerplanar_leveled(g, root, allow_fallback=False)
    assert len(d.levels) == 3 and strict_ok(g, d)


def test_bipartite_outerplanar_c5():
    with pytest.raises(NotBipartite):
        bipartite_outerplanar_leveled(circle_embedded(cycle(5)))


def test_weak_outerplanar_examples():
    tri = circle_embedded(cycle(3))
    d = outerplanar_weak_leveled(tri, allow_fallback=False)
    assert len(d.levels) == 2 and weak_ok(tri, d)
    f = fan(5)
    assert weak_ok(f, outerplanar_weak_leveled(f, allow_fallback=False))
    c5 = circle_embedded(cycle(5))
    d = outerplanar_weak_leveled(c5, allow_fallback=False)
    assert weak_ok(c5, d)
    where = d.layering.layer_of
    assert sum(where[u] == where[v] for u, v in c5.edges) == 1


@pytest.mark.parametrize("kind", ["maximal", "bipartite", "general"])
def test_outerplanar_corpus_without_fallback(kind):
    rng = np.random.default_rng(7)
    for _ in range(150):
        n = int(rng.integers(3, 31))
        if kind == "bipartite":
            g = random_outerplanar(n, rng, bipartite=True)
            d = bipartite_outerplanar_leveled(g, int(rng.integers(n)), allow_fallback=False)
            assert strict_ok(g, d)
            assert validate_layered_path(g, greedy_layered_path(g, d)).ok
        else:
            g = random_outerplanar(n, rng, maximal=kind == "maximal")
            root = int(rng.integers(n))
            d = outerplanar_weak_leveled(g, root, allow_fallback=False)
            assert weak_ok(g, d)
            assert d.layering.layer_of == bfs_layering(g, root).layer_of
            p = greedy_layered_path(g, d)
            assert validate_layered_path(g, p).ok and p.layered_width <= 2


# squaregraphs


def test_squaregraph_examples():
    c4 = grid(2, 2)
    assert len(squaregraph_leveled(c4, 0).levels) == 3
    for rows, cols in [(3, 3), (3, 4), (6, 6)]:
        g = grid(rows, cols)
        assert strict_ok(g, squaregraph_leveled(g, 0))


def test_squaregraph_polyominoes():
    rng = np.random.default_rng(3)
    for _ in range(60):
        g, root = random_polyomino(int(rng.integers(1, 20)), rng)
        assert strict_ok(g, squaregraph_leveled(g, root))


# Halin


def test_halin_k4_has_no_weak_drawing():
    h = HalinInput(from_rotation([[1, 2, 3], [0], [0], [0]]))
    assert h.graph.m == 6
    assert weakly_leveled_planar_exact(h.graph) is None
    with pytest.raises(RealizationFailed):
        halin_weak_leveled(h, 1)


def test_halin_wheel():
    h = HalinInput(from_rotation([[1, 2, 3, 4], [0], [0], [0], [0]]))
    assert h.graph.m == 8
    for leaf in range(1, 5):
        d = halin_weak_leveled(h, leaf)
        assert weak_ok(h.graph, d) and leaf in d.levels[0]


def test_halin_input_checks():
    with pytest.raises(InvalidHalinInput):
        HalinInput(from_rotation([[1], [0, 2], [1]]))
    with pytest.raises(InvalidHalinInput):
        HalinInput(star(3))
    h = HalinInput(from_rotation([[1, 2, 3, 4], [0], [0], [0], [0]]))
    with pytest.raises(NotALeaf):
        halin_weak_leveled(h, 0)


def test_halin_random_corpus():
    rng = np.random.default_rng(11)
    done = 0
    while done < 120:
        h = random_plane_tree(int(rng.integers(4, 31)), rng)
        if h.plane_tree.n == 4:
            continue
        g = h.graph
        assert len(h.leaf_cycle) == len(h.leaves)
        for leaf in sorted(h.leaves)[:3]:
            d = halin_weak_leveled(h, leaf)
            assert weak_ok(g, d) and leaf in d.levels[0]
            p = greedy_layered_path(g, d)
            assert validate_layered_path(g, p).ok and p.layered_width <= 2
        done += 1


# wiring diagrams


def test_wiring_examples():
    g, lay, d = monotone_arrangement_dual(WiringDiagram(1))
    assert g.n == 2 and g.m == 1 and lay.layers == ((0,), (1,))
    g, lay, d = monotone_arrangement_dual(WiringDiagram(2, (1,)))
    assert g.n == 4 and g.m == 4 and [len(x) for x in lay.layers] == [1, 2, 1]
    g, lay, d = monotone_arrangement_dual(WiringDiagram(3, (1, 2, 1)))
    assert g.n == 7 and strict_ok(g, d)
    with pytest.raises(InvalidDiagram):
        WiringDiagram(2, (2,))


def test_wiring_random():
    rng = np.random.default_rng(5)
    for _ in range(100):
        k = int(rng.integers(1, 7))
        w = random_wiring_diagram(k, int(rng.integers(0, 16)), rng)
        g, lay, d = monotone_arrangement_dual(w)
        assert g.n == k + 1 + len(w.transpositions)
        assert strict_ok(g, d) and d.layering == lay
