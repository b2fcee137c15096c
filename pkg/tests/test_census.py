import itertools

import numpy as np

from conftest import brute_force_census, random_graph
from graphlet_ergm.catalog import get_catalog
from graphlet_ergm.census import full_census
from graphlet_ergm.graphs import Graph


def complete_graph(n):
    g = Graph(n)
    for i, j in itertools.combinations(range(n), 2):
        g.add_edge(i, j)
    return g


def test_k5_fixture():
    c = full_census(complete_graph(5))
    expected = {0: 10, 2: 10, 8: 5, 29: 1}
    for gid in range(30):
        assert c.counts[gid] == expected.get(gid, 0)


def test_path_p3_fixture():
    g = Graph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    c = full_census(g)
    assert c.counts[0] == 2 and c.counts[1] == 1
    assert c.counts[2:].sum() == 0
    # center sits at the middle orbit of the path, ends at the outer one
    assert c.gd[1, 2] == 1 and c.gd[0, 1] == 1 and c.gd[2, 1] == 1


def test_star_k14_fixture():
    g = Graph(5)
    for leaf in range(1, 5):
        g.add_edge(0, leaf)
    c = full_census(g)
    assert c.counts[0] == 4   # edges
    assert c.counts[1] == 6   # paths through the hub
    assert c.counts[4] == 4   # 3-leaf claws
    # exactly one 5-node class: the 4-leaf star itself
    five = [gid for gid in range(9, 30) if c.counts[gid]]
    assert len(five) == 1 and c.counts[five[0]] == 1
    bc, bg = brute_force_census(g)
    assert np.array_equal(c.counts, bc)
    assert np.array_equal(c.gd, bg)


def test_matches_brute_force_on_random_graphs():
    for seed, n, p in [(0, 7, 0.2), (1, 8, 0.4), (2, 9, 0.6), (3, 10, 0.3),
                       (4, 6, 0.8)]:
        g = random_graph(n, p, seed)
        c = full_census(g)
        bc, bg = brute_force_census(g)
        assert np.array_equal(c.counts, bc), f"seed {seed}"
        assert np.array_equal(c.gd, bg), f"seed {seed}"


def test_max_size_truncation():
    g = random_graph(8, 0.5, 7)
    c3 = full_census(g, max_size=3)
    bc, bg = brute_force_census(g, max_size=3)
    assert np.array_equal(c3.counts, bc)
    assert np.array_equal(c3.gd, bg)
    assert c3.counts[3:].sum() == 0


def test_gd_column_totals():
    """Summing an orbit's degrees over all nodes gives the owning graphlet's
    count times the number of nodes occupying that orbit."""
    cat = get_catalog()
    g = random_graph(9, 0.4, 11)
    c = full_census(g)
    # orbit multiplicity within the representative graphlet
    mult = np.zeros(73, dtype=int)
    from graphlet_ergm._graphlet_data import GRAPHLETS

    for _, (_, _, node_orbits, _) in enumerate(GRAPHLETS):
        for o in node_orbits:
            mult[o] += 1
    for o in range(73):
        gid = int(cat.graphlet_of_orbit[o])
        assert c.gd[:, o].sum() == c.counts[gid] * mult[o]


def test_empty_graph():
    c = full_census(Graph(6))
    assert c.counts.sum() == 0 and c.gd.sum() == 0
