import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from strata.graph import Graph


def G(n, edges, **kw):
    return Graph.from_edges(n, edges, **kw)


def cycle(n):
    return G(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return G(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return G(n, list(itertools.combinations(range(n), 2)))


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield G(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


@st.composite
def graphs(draw, min_n=1, max_n=7, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def trees(draw, min_n=1, max_n=40):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return G(n, [(p, i + 1) for i, p in enumerate(parents)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
