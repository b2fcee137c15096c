"""Classification tables for connected induced subgraphs on 2-5 nodes.

Everything is driven by dense lookup arrays indexed by the adjacency bitmask
of a labeled subgraph (bit order: pairs (p,q), p<q, grouped by q, so the mask
of the first j nodes occupies the low C(j,2) bits).  The arrays are filled at
startup by permuting each embedded class representative through all node
relabelings; the signed graphlet/edge-orbit relation is then re-derived by
edge deletion and compared against the embedded table, so a transcription
slip in the reference data aborts the build instead of corrupting counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._graphlet_data import GRAPHLETS, TABLE_NEGATIVE, TABLE_POSITIVE

__all__ = [
    "Catalog",
    "CatalogError",
    "build_catalog",
    "get_catalog",
    "classify_induced",
    "NON_GRAPHLET",
    "N_GRAPHLETS",
    "N_NODE_ORBITS",
    "N_EDGE_ORBITS",
]

N_GRAPHLETS = 30
N_NODE_ORBITS = 73
N_EDGE_ORBITS = 69
NON_GRAPHLET = -1

SIZES = (2, 3, 4, 5)


class CatalogError(RuntimeError):
    """Internal inconsistency between derived structure and reference data."""


def pair_bit_order(k):
    """Bit index for each node pair (p, q), p < q, grouped by the larger node."""
    bits = {}
    b = 0
    for q in range(1, k):
        for p in range(q):
            bits[(p, q)] = b
            b += 1
    return bits


PAIR_BITS = {k: pair_bit_order(k) for k in SIZES}
N_PAIRS = {k: k * (k - 1) // 2 for k in SIZES}


def _mask_connected(mask: int, k: int) -> bool:
    adj = [0] * k
    for (p, q), b in PAIR_BITS[k].items():
        if (mask >> b) & 1:
            adj[p] |= 1 << q
            adj[q] |= 1 << p
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        rest = adj[v] & ~seen
        while rest:
            low = rest & -rest
            seen |= low
            stack.append(low.bit_length() - 1)
            rest &= rest - 1
    return seen == (1 << k) - 1


@dataclass(frozen=True)
class Catalog:
    """Immutable lookup tables; build once via build_catalog(), share freely."""

    class_of: dict          # k -> int8[2^C(k,2)], graphlet id or NON_GRAPHLET
    node_orbit_of: dict     # k -> int8[2^C(k,2), k]
    edge_orbit_of: dict     # k -> int8[2^C(k,2), C(k,2)], 0 where not an edge
    graphlet_size: np.ndarray        # [30]
    graphlet_of_orbit: np.ndarray    # [73]
    graphlet_of_edge_orbit: np.ndarray  # [70], slot 0 unused
    sign_positive: dict     # graphlet id -> tuple of edge orbit ids
    sign_negative: dict

    def orbits_of_graphlet(self, gid: int):
        return tuple(np.flatnonzero(self.graphlet_of_orbit == gid))

    def classify_mask(self, mask: int, k: int) -> int:
        return int(self.class_of[k][mask])

    def table_rows(self):
        """Signed relation as (graphlet, positive-ids, negative-ids) rows."""
        for g in range(N_GRAPHLETS):
            yield g, self.sign_positive[g], self.sign_negative[g]


def _fill_lookups():
    class_of = {}
    node_orbit_of = {}
    edge_orbit_of = {}
    for k in SIZES:
        size = 1 << N_PAIRS[k]
        class_of[k] = np.full(size, NON_GRAPHLET, dtype=np.int8)
        node_orbit_of[k] = np.full((size, k), -1, dtype=np.int8)
        edge_orbit_of[k] = np.zeros((size, N_PAIRS[k]), dtype=np.int8)

    graphlet_size = np.zeros(N_GRAPHLETS, dtype=int)
    graphlet_of_orbit = np.full(N_NODE_ORBITS, -1, dtype=int)
    graphlet_of_edge_orbit = np.full(N_EDGE_ORBITS + 1, -1, dtype=int)

    for gid, (k, edges, node_orbits, edge_orbits) in enumerate(GRAPHLETS):
        graphlet_size[gid] = k
        for orb in node_orbits:
            if graphlet_of_orbit[orb] not in (-1, gid):
                raise CatalogError(f"orbit {orb} claimed by two graphlets")
            graphlet_of_orbit[orb] = gid
        for eid in edge_orbits.values():
            if graphlet_of_edge_orbit[eid] not in (-1, gid):
                raise CatalogError(f"edge orbit E{eid} claimed by two graphlets")
            graphlet_of_edge_orbit[eid] = gid

        bits = PAIR_BITS[k]
        for perm in itertools.permutations(range(k)):
            mask = 0
            for p, q in edges:
                a, b = perm[p], perm[q]
                if a > b:
                    a, b = b, a
                mask |= 1 << bits[(a, b)]
            prev = class_of[k][mask]
            if prev == NON_GRAPHLET:
                class_of[k][mask] = gid
                for node, orb in enumerate(node_orbits):
                    node_orbit_of[k][mask, perm[node]] = orb
                for (p, q), eid in edge_orbits.items():
                    a, b = perm[p], perm[q]
                    if a > b:
                        a, b = b, a
                    edge_orbit_of[k][mask, bits[(a, b)]] = eid
            else:
                # Same labeled mask reached twice: the composed relabeling is
                # an automorphism, so all assignments must agree.
                if prev != gid:
                    raise CatalogError(
                        f"mask {mask:#x} (k={k}) classified as G{prev} and G{gid}"
                    )
                for node, orb in enumerate(node_orbits):
                    if node_orbit_of[k][mask, perm[node]] != orb:
                        raise CatalogError(
                            f"orbit assignment of G{gid} not automorphism-invariant"
                        )
                for (p, q), eid in edge_orbits.items():
                    a, b = perm[p], perm[q]
                    if a > b:
                        a, b = b, a
                    if edge_orbit_of[k][mask, bits[(a, b)]] != eid:
                        raise CatalogError(
                            f"edge orbit assignment of G{gid} not automorphism-invariant"
                        )
    return (
        class_of,
        node_orbit_of,
        edge_orbit_of,
        graphlet_size,
        graphlet_of_orbit,
        graphlet_of_edge_orbit,
    )


def _check_coverage(class_of):
    """Every connected labeled graph must be classified; nothing else may be."""
    per_size = {2: 0, 3: 0, 4: 0, 5: 0}
    for k in SIZES:
        ids = set()
        for mask in range(1 << N_PAIRS[k]):
            assigned = class_of[k][mask] != NON_GRAPHLET
            if _mask_connected(mask, k) != assigned:
                raise CatalogError(
                    f"coverage failure at k={k}, mask={mask:#x} "
                    f"(connected={not assigned})"
                )
            if assigned:
                ids.add(int(class_of[k][mask]))
        per_size[k] = len(ids)
    if per_size != {2: 1, 3: 2, 4: 6, 5: 21}:
        raise CatalogError(f"connected class counts {per_size} != 1/2/6/21")


def derive_sign_table(class_of):
    """Re-derive the signed graphlet/edge-orbit relation by edge deletion.

    Placing edge orbit E on an added edge always completes a copy of its
    owner graphlet (positive side); deleting that edge leaves, when the
    remainder stays connected, an induced copy of some smaller-edge-count
    class (negative side).
    """
    positive = {g: set() for g in range(N_GRAPHLETS)}
    negative = {g: set() for g in range(N_GRAPHLETS)}
    for gid, (k, edges, _orbs, edge_orbits) in enumerate(GRAPHLETS):
        bits = PAIR_BITS[k]
        full = 0
        for p, q in edges:
            full |= 1 << bits[(p, q)]
        for (p, q), eid in edge_orbits.items():
            positive[gid].add(eid)
            reduced = full & ~(1 << bits[(p, q)])
            target = int(class_of[k][reduced])
            if target != NON_GRAPHLET:
                negative[target].add(eid)
    return (
        {g: tuple(sorted(v)) for g, v in positive.items()},
        {g: tuple(sorted(v)) for g, v in negative.items()},
    )


def build_catalog() -> Catalog:
    (
        class_of,
        node_orbit_of,
        edge_orbit_of,
        graphlet_size,
        graphlet_of_orbit,
        graphlet_of_edge_orbit,
    ) = _fill_lookups()

    _check_coverage(class_of)
    if np.any(graphlet_of_orbit < 0):
        raise CatalogError("node orbits do not cover 0..72")
    if np.any(graphlet_of_edge_orbit[1:] < 0):
        raise CatalogError("edge orbits do not cover 1..69")

    positive, negative = derive_sign_table(class_of)
    for g in range(N_GRAPHLETS):
        if positive[g] != tuple(sorted(TABLE_POSITIVE[g])):
            raise CatalogError(
                f"derived positive edge orbits of G{g} = {positive[g]} "
                f"!= reference {tuple(sorted(TABLE_POSITIVE[g]))}"
            )
        if negative[g] != tuple(sorted(TABLE_NEGATIVE[g])):
            raise CatalogError(
                f"derived negative edge orbits of G{g} = {negative[g]} "
                f"!= reference {tuple(sorted(TABLE_NEGATIVE[g]))}"
            )

    return Catalog(
        class_of=class_of,
        node_orbit_of=node_orbit_of,
        edge_orbit_of=edge_orbit_of,
        graphlet_size=graphlet_size,
        graphlet_of_orbit=graphlet_of_orbit,
        graphlet_of_edge_orbit=graphlet_of_edge_orbit,
        sign_positive=positive,
        sign_negative=negative,
    )


@lru_cache(maxsize=1)
def get_catalog() -> Catalog:
    return build_catalog()


def induced_mask(g, nodes) -> int:
    """Adjacency bitmask of the induced subgraph on an ordered node tuple."""
    mask = 0
    b = 0
    for qi in range(1, len(nodes)):
        nb = g.neighbor_bits(nodes[qi])
        for pi in range(qi):
            if (nb >> nodes[pi]) & 1:
                mask |= 1 << b
            b += 1
    return mask


def classify_induced(g, nodes, catalog: Catalog | None = None):
    """Classify the induced subgraph on 2-5 distinct nodes.

    Returns (graphlet id or None, per-node orbit tuple, per-edge orbit dict
    keyed by node pairs).  Disconnected induced subgraphs give (None, (), {}).
    """
    nodes = tuple(nodes)
    k = len(nodes)
    if k < 2 or k > 5:
        raise ValueError(f"induced classification needs 2-5 nodes, got {k}")
    if len(set(nodes)) != k:
        raise ValueError("nodes must be distinct")
    cat = catalog or get_catalog()
    mask = induced_mask(g, nodes)
    gid = int(cat.class_of[k][mask])
    if gid == NON_GRAPHLET:
        return None, (), {}
    orbits = tuple(int(o) for o in cat.node_orbit_of[k][mask])
    edge_orbits = {}
    for (p, q), b in PAIR_BITS[k].items():
        eid = int(cat.edge_orbit_of[k][mask, b])
        if eid:
            edge_orbits[(nodes[p], nodes[q])] = eid
    return gid, orbits, edge_orbits
