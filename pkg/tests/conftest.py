"""Shared helpers: random graph generation and the subset brute-force oracle.

The oracle enumerates every node subset with itertools and classifies each
one through the lookup tables; it shares no traversal logic with the
package's recursive census or with the incremental engine.
"""

import itertools

import numpy as np

from graphlet_ergm.catalog import classify_induced
from graphlet_ergm.graphs import Graph


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    g = Graph(n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(i, j)
    return g


def brute_force_census(g, max_size=5):
    """Independent oracle: classify every subset of 2..max_size nodes."""
    counts = np.zeros(30, dtype=np.int64)
    gd = np.zeros((g.n, 73), dtype=np.int64)
    for k in range(2, max_size + 1):
        for nodes in itertools.combinations(range(g.n), k):
            gid, orbs, _ = classify_induced(g, nodes)
            if gid is not None:
                counts[gid] += 1
                for v, o in zip(nodes, orbs):
                    gd[v, o] += 1
    return counts, gd
