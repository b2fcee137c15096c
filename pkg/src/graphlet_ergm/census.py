"""Exact census of connected induced subgraphs on 2-5 nodes.

The enumeration is a Wernicke-style connected-subgraph expansion: each
connected node set of size 2-5 appears exactly once in the search tree, is
classified through the catalog lookup arrays, and contributes one graphlet
count plus one orbit-degree increment per member node.  This is the slow,
independent oracle that the incremental change-score engine is validated
against; the two share no counting logic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import N_GRAPHLETS, N_NODE_ORBITS, get_catalog

__all__ = ["CensusResult", "full_census", "count_statistic"]

# C(j, 2): bit offset where the pair bits of a newly appended j-th node start
_BIT_BASE = (0, 0, 1, 3, 6)


@dataclass
class CensusResult:
    counts: np.ndarray  # [30] graphlet counts
    gd: np.ndarray      # [n, 73] orbit degrees (graphlet signatures)


def full_census(g, max_size: int = 5) -> CensusResult:
    """Count every connected induced subgraph on 2..max_size nodes."""
    cat = get_catalog()
    n = g.n
    counts = [0] * N_GRAPHLETS
    gd = [[0] * N_NODE_ORBITS for _ in range(n)]

    # plain lists index faster than numpy scalars in this loop
    class_of = {k: cat.class_of[k].tolist() for k in range(2, max_size + 1)}
    orbit_rows = {
        k: [tuple(row) for row in cat.node_orbit_of[k]]
        for k in range(2, max_size + 1)
    }
    adj_bits = [g.neighbor_bits(v) for v in range(n)]
    adj_sorted = [g.neighbors(v) for v in range(n)]

    def extend(S, mask, ext, nbh):
        k = len(S)
        if k >= 2:
            gid = class_of[k][mask]
            counts[gid] += 1
            for node, orb in zip(S, orbit_rows[k][mask]):
                gd[node][orb] += 1
        if k == max_size:
            return
        base = _BIT_BASE[k]
        root = S[0]
        for idx in range(len(ext)):
            w = ext[idx]
            wbits = adj_bits[w]
            newmask = mask
            for p in range(k):
                if (wbits >> S[p]) & 1:
                    newmask |= 1 << (base + p)
            newext = ext[idx + 1:] + [
                u for u in adj_sorted[w] if u > root and not (nbh >> u) & 1
            ]
            extend(S + [w], newmask, newext, nbh | wbits)

    for v in range(n):
        ext = [u for u in adj_sorted[v] if u > v]
        extend([v], 0, ext, adj_bits[v] | (1 << v))

    return CensusResult(np.array(counts, dtype=np.int64), np.array(gd, dtype=np.int64))


def count_statistic(g, term, census: CensusResult | None = None) -> np.ndarray:
    """Exact value of one term's statistic vector, computed from the census."""
    from .terms import evaluate_from_census, term_max_size

    if census is None:
        census = full_census(g, max_size=term_max_size(term))
    return evaluate_from_census(census, term, g)
