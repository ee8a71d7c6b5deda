import networkx as nx
import numpy as np
import pytest

from conftest import G
from strata.errors import BadParams, BoundaryMismatch
from strata.exact import SolverBudget, enumerate_layerings, layered_pathwidth_exact, leveled_planar_exact
from strata.families import (
    BoundariedGraph,
    complete_binary_tree,
    equalizer_half,
    generate_almost_tree,
    generate_basic,
    generate_equalizer,
    generate_tree_apex,
    glue,
    grid3d,
    grid3d_lpd_certificate,
    random_outerplanar,
    random_polyomino,
    random_three_track_layout,
    random_tree,
)
from strata.graph import biconnected_components, is_tree
from strata.layout import validate_track_layout

BIG = SolverBudget(max_vertices=40, max_states=50_000_000)


def nxg(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_basic_counts():
    g = generate_basic("complete", 4)
    assert (g.n, g.m) == (4, 6)
    assert generate_basic("complete_binary_tree", 3).n == 15
    cube = generate_basic("grid3d", 2)
    assert (cube.n, cube.m) == (8, 12)
    assert nx.is_isomorphic(nxg(cube), nx.hypercube_graph(3))
    assert generate_basic("complete_bipartite", 2, 3).m == 6
    assert generate_basic("cycle", 5).m == 5
    assert generate_basic("path", 5).m == 4
    cat = generate_basic("caterpillar", 3, [1, 0, 2])
    assert cat.n == 6 and is_tree(cat)


@pytest.mark.parametrize("args", [("complete", 0), ("cycle", -1), ("grid3d", 0), ("path", 2.5)])
def test_basic_bad_params(args):
    with pytest.raises(BadParams):
        generate_basic(*args)


def test_grid3d_structure():
    for n in range(1, 5):
        g = grid3d(n)
        expected = nx.cartesian_product(nx.grid_2d_graph(n, n), nx.path_graph(2))
        assert nx.is_isomorphic(nxg(g), expected)


# tree plus apex


def test_tree_apex_examples():
    g, cert = generate_tree_apex(0)
    assert (g.n, g.m) == (2, 1) and cert.check(g) and cert.claim == 2
    g, cert = generate_tree_apex(2)
    assert g.n == 8 and cert.check(g) and cert.claim <= 4
    assert all(sum(1 for lv in lay.layers if lv) <= 3 for lay in enumerate_layerings(g))


@pytest.mark.parametrize("h, expected", [(0, 1), (1, 2), (2, 2)])
def test_tree_apex_layered_pathwidth_anchors(h, expected):
    g, _ = generate_tree_apex(h)
    assert layered_pathwidth_exact(g)[0] == expected


@pytest.mark.parametrize("h", range(0, 8))
def test_tree_apex_certificates(h):
    g, cert = generate_tree_apex(h)
    assert cert.kind == "TrackLayout" and cert.check(g) and cert.claim <= 4
    apex = g.n - 1
    assert len(g.adj[apex]) == g.n - 1


# equalizer


@pytest.mark.parametrize("p, q, present", [(1, 1, True), (1, 2, False), (2, 2, True), (2, 3, False)])
def test_equalizer_examples(p, q, present):
    assert (leveled_planar_exact(generate_equalizer(p, q), BIG) is not None) == present


def test_plain_chains_zigzag():
    assert leveled_planar_exact(generate_equalizer(1, 3, locked=False), BIG) is not None


def test_equalizer_matches_unpruned_search():
    for p, q in [(1, 1), (2, 2)]:
        g = generate_equalizer(p, q)
        assert (leveled_planar_exact(g, BIG, prune=False) is not None) == (p == q)
    g = generate_equalizer(1, 2, locked=False)
    assert (leveled_planar_exact(g, BIG, prune=False) is None) == (leveled_planar_exact(g, BIG) is None)


@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_glue_matches_equalizer(p, q):
    g = glue(equalizer_half(p), equalizer_half(q))
    assert nx.is_isomorphic(nxg(g), nxg(generate_equalizer(p, q)))
    other = glue(equalizer_half(q), equalizer_half(p))
    assert nx.is_isomorphic(nxg(g), nxg(other))


def test_glue_examples():
    e = BoundariedGraph(G(2, [(0, 1)]), {1: 0, 2: 1})
    g = glue(e, e)
    assert (g.n, g.m) == (2, 1)
    a = BoundariedGraph(G(3, [(0, 1), (1, 2)]), {})
    b = BoundariedGraph(G(2, [(0, 1)]), {})
    g = glue(a, b)
    assert (g.n, g.m) == (5, 3)
    with pytest.raises(BoundaryMismatch):
        glue(e, a)
    with pytest.raises(BoundaryMismatch):
        BoundariedGraph(G(2, [(0, 1)]), {1: 0, 2: 0})


def test_glue_commutative_on_small_trees(rng):
    for _ in range(40):
        ta, tb = random_tree(int(rng.integers(2, 6)), rng), random_tree(int(rng.integers(2, 6)), rng)
        a = BoundariedGraph(ta, {1: 0, 2: ta.n - 1})
        b = BoundariedGraph(tb, {1: 0, 2: tb.n - 1})
        assert nx.is_isomorphic(nxg(glue(a, b)), nxg(glue(b, a)))


# almost trees


def test_almost_tree_counts():
    g = generate_almost_tree(1, 0)
    assert g.n == 8
    assert generate_almost_tree(3, 1).n == 20


@pytest.mark.parametrize("k, depth", [(1, 0), (2, 1), (3, 1), (4, 2), (5, 3)])
def test_almost_tree_cyclomatic(k, depth):
    g = generate_almost_tree(k, depth)
    assert nx.is_connected(nxg(g))
    for block in biconnected_components(g):
        verts = {v for e in block for v in e}
        assert len(block) - len(verts) + 1 <= 2


def test_almost_tree_bad_params():
    with pytest.raises(BadParams):
        generate_almost_tree(0, 1)
    with pytest.raises(BadParams):
        generate_almost_tree(2, -1)


# grid3d certificate


@pytest.mark.parametrize("n, width", [(1, 1), (2, 3), (3, 3), (5, 3), (7, 3)])
def test_grid3d_certificate(n, width):
    g, cert = grid3d_lpd_certificate(n)
    assert cert.kind == "LayeredPathDecomposition" and cert.check(g)
    assert cert.claim == width


# random corpora


def test_random_generators(rng):
    for _ in range(30):
        t = random_tree(int(rng.integers(1, 30)), rng)
        assert is_tree(t)
        g = random_outerplanar(int(rng.integers(3, 30)), rng, maximal=True)
        assert g.m == 2 * g.n - 3 and nx.is_planar(nxg(g))
        g, root = random_polyomino(int(rng.integers(1, 20)), rng)
        assert nx.is_bipartite(nxg(g)) and 0 <= root < g.n
        g, t = random_three_track_layout(int(rng.integers(1, 15)), rng)
        assert validate_track_layout(g, t).ok


def test_random_generators_are_seeded():
    a = random_outerplanar(20, np.random.default_rng(1))
    b = random_outerplanar(20, np.random.default_rng(1))
    assert a == b
