import itertools
import time

import numpy as np
import pytest

from graphlet_ergm.catalog import (
    N_EDGE_ORBITS,
    N_GRAPHLETS,
    N_NODE_ORBITS,
    build_catalog,
    classify_induced,
    get_catalog,
)
from graphlet_ergm.graphs import Graph


def test_counts_and_build_time():
    t0 = time.perf_counter()
    cat = build_catalog()
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    assert len(cat.sign_positive) == N_GRAPHLETS == 30
    assert sorted(
        o for gid in range(30) for o in cat.orbits_of_graphlet(gid)
    ) == list(range(N_NODE_ORBITS))
    all_eids = sorted(e for v in cat.sign_positive.values() for e in v)
    assert all_eids == list(range(1, N_EDGE_ORBITS + 1))


def test_graphlet_sizes():
    cat = get_catalog()
    sizes = list(cat.graphlet_size)
    assert sizes[0] == 2
    assert sizes[1:3] == [3, 3]
    assert sizes[3:9] == [4] * 6
    assert sizes[9:] == [5] * 21


def test_sign_table_structure():
    """Every edge orbit appears on the positive side of exactly one graphlet
    and on the negative side of at most one."""
    cat = get_catalog()
    pos_owner = {}
    neg_owner = {}
    for gid, pos, neg in cat.table_rows():
        for e in pos:
            assert e not in pos_owner
            pos_owner[e] = gid
        for e in neg:
            assert e not in neg_owner
            neg_owner[e] = gid
    # a deleted edge leaves a graph with strictly fewer edges, so the
    # negative owner always has fewer edges than the positive owner's class
    assert set(pos_owner) == set(range(1, 70))


def test_classify_fixtures():
    g = Graph(5)
    # triangle on 0,1,2
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.add_edge(0, 2)
    gid, orbs, eorbs = classify_induced(g, (0, 1, 2))
    assert gid == 2 and orbs == (3, 3, 3)
    assert set(eorbs.values()) == {3}
    # path 0-1-2 using nodes 1,2,3: make 2-3 edge
    g.add_edge(2, 3)
    gid, orbs, _ = classify_induced(g, (1, 2, 3))
    assert gid == 1 and orbs == (1, 2, 1)
    # disconnected pair
    gid, orbs, eorbs = classify_induced(g, (0, 4))
    assert gid is None and orbs == () and eorbs == {}


def test_classify_claw():
    g = Graph(4)
    for leaf in (1, 2, 3):
        g.add_edge(0, leaf)
    gid, orbs, eorbs = classify_induced(g, (0, 1, 2, 3))
    assert gid == 4
    assert orbs == (7, 6, 6, 6)
    assert set(eorbs.values()) == {6}


def test_classify_k5():
    g = Graph(5)
    for i, j in itertools.combinations(range(5), 2):
        g.add_edge(i, j)
    gid, orbs, eorbs = classify_induced(g, tuple(range(5)))
    assert gid == 29 and len(set(orbs)) == 1 and len(eorbs) == 10


def test_classification_is_relabeling_invariant():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(5, 9))
        g = Graph(n)
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    g.add_edge(i, j)
        k = int(rng.integers(2, 6))
        nodes = tuple(int(v) for v in rng.choice(n, size=k, replace=False))
        gid, orbs, _ = classify_induced(g, nodes)
        perm = tuple(int(v) for v in rng.permutation(k))
        gid2, orbs2, _ = classify_induced(g, tuple(nodes[p] for p in perm))
        assert gid2 == gid
        if gid is not None:
            assert orbs2 == tuple(orbs[p] for p in perm)


def test_classify_induced_validation():
    g = Graph(6)
    with pytest.raises(ValueError):
        classify_induced(g, (0,))
    with pytest.raises(ValueError):
        classify_induced(g, (0, 1, 2, 3, 4, 5))
    with pytest.raises(ValueError):
        classify_induced(g, (0, 0, 1))
