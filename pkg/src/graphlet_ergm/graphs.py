"""Undirected simple graphs with typed node attributes.

Nodes are dense 0-based indices internally; external string identifiers are
kept in a label map.  The adjacency is stored twice: as per-node membership
sets (O(1) edge tests) and as per-node integer bitmasks, from which sorted
neighbor arrays are derived on demand.  Subgraph classification leans on the
bitmasks, the samplers on the sets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "ToggleReceipt",
    "NumericAttribute",
    "CategoricalAttribute",
    "load_edge_list",
    "load_attributes",
]


class GraphError(ValueError):
    """Raised for malformed graph input or contract violations."""


@dataclass(frozen=True)
class ToggleReceipt:
    i: int
    j: int
    was_present: bool


@dataclass(frozen=True)
class NumericAttribute:
    name: str
    values: np.ndarray  # one finite float per node

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(vals)):
            raise GraphError(f"attribute {self.name!r} has non-finite values")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CategoricalAttribute:
    name: str
    values: tuple  # category label per node
    categories: tuple = field(default=())  # distinct labels, lexicographic

    def __post_init__(self):
        cats = tuple(sorted(set(self.values)))
        if self.categories and tuple(self.categories) != cats:
            raise GraphError(f"attribute {self.name!r}: categories do not match values")
        object.__setattr__(self, "categories", cats)

    def codes(self) -> np.ndarray:
        """Category index per node, in lexicographic category order."""
        index = {c: k for k, c in enumerate(self.categories)}
        return np.array([index[v] for v in self.values], dtype=int)


class Graph:
    """Mutable undirected simple graph on n nodes (no loops, no multi-edges)."""

    def __init__(self, n: int, labels=None):
        if n <= 0:
            raise GraphError("graph needs at least one node")
        self.n = n
        self.labels = list(labels) if labels is not None else [str(v) for v in range(n)]
        if len(self.labels) != n:
            raise GraphError("label count does not match node count")
        self._sets = [set() for _ in range(n)]
        self._bits = [0] * n
        self._sorted = [None] * n  # lazily rebuilt neighbor tuples
        self.edge_count = 0
        self.attributes: dict[str, NumericAttribute | CategoricalAttribute] = {}

    # -- structure ---------------------------------------------------------

    def _check_dyad(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"node out of range: ({i}, {j}) with n={self.n}")
        if i == j:
            raise GraphError(f"self-loop ({i}, {i}) violates the loopless contract")

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._sets[i]

    def add_edge(self, i: int, j: int):
        self._check_dyad(i, j)
        if j not in self._sets[i]:
            self._sets[i].add(j)
            self._sets[j].add(i)
            self._bits[i] |= 1 << j
            self._bits[j] |= 1 << i
            self._sorted[i] = self._sorted[j] = None
            self.edge_count += 1

    def toggle_edge(self, i: int, j: int) -> ToggleReceipt:
        """Flip the state of dyad (i, j); toggling twice restores the graph."""
        self._check_dyad(i, j)
        present = j in self._sets[i]
        if present:
            self._sets[i].discard(j)
            self._sets[j].discard(i)
            self._bits[i] &= ~(1 << j)
            self._bits[j] &= ~(1 << i)
            self.edge_count -= 1
        else:
            self._sets[i].add(j)
            self._sets[j].add(i)
            self._bits[i] |= 1 << j
            self._bits[j] |= 1 << i
            self.edge_count += 1
        self._sorted[i] = self._sorted[j] = None
        return ToggleReceipt(i, j, present)

    def degree(self, v: int) -> int:
        return len(self._sets[v])

    def neighbors(self, v: int) -> tuple:
        """Sorted neighbor tuple of v."""
        cached = self._sorted[v]
        if cached is None:
            cached = tuple(sorted(self._sets[v]))
            self._sorted[v] = cached
        return cached

    def neighbor_set(self, v: int) -> set:
        return self._sets[v]

    def neighbor_bits(self, v: int) -> int:
        return self._bits[v]

    def edges(self):
        for i in range(self.n):
            for j in self._sets[i]:
                if i < j:
                    yield (i, j)

    def degree_sequence(self) -> np.ndarray:
        return np.array([len(s) for s in self._sets], dtype=int)

    def density(self) -> float:
        return self.edge_count / (self.n * (self.n - 1) / 2)

    def copy(self) -> "Graph":
        g = Graph(self.n, self.labels)
        g._sets = [set(s) for s in self._sets]
        g._bits = list(self._bits)
        g.edge_count = self.edge_count
        g.attributes = dict(self.attributes)
        return g

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._bits == other._bits
        )

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def load_edge_list(path, labels=None) -> Graph:
    """Read an edge list file into a Graph.

    Format: two whitespace-separated node identifiers per line, `#` comments.
    A comment of the form `#nodes: a b c` declares nodes up front (allows
    isolates).  Duplicate and reversed duplicate lines collapse to one edge,
    with a single warning per file.  Self-loop lines are rejected.
    """
    declared = []
    raw_edges = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                body = stripped.lstrip("#").strip()
                if body.lower().startswith("nodes:"):
                    declared.extend(body[len("nodes:"):].split())
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise GraphError(
                    f"{path}:{lineno}: expected two node identifiers, got {stripped!r}"
                )
            a, b = parts
            if a == b:
                raise GraphError(f"{path}:{lineno}: self-loop on {a!r} is not allowed")
            raw_edges.append((a, b))

    order = []
    seen = set()
    for name in declared:
        if name not in seen:
            seen.add(name)
            order.append(name)
    for a, b in raw_edges:
        for name in (a, b):
            if name not in seen:
                seen.add(name)
                order.append(name)
    if labels is not None:
        missing = [x for x in order if x not in set(labels)]
        if missing:
            raise GraphError(f"{path}: identifiers not in supplied label set: {missing}")
        order = list(labels)
    if not order:
        raise GraphError(f"{path}: no nodes found")

    index = {name: k for k, name in enumerate(order)}
    g = Graph(len(order), labels=order)
    duplicates = 0
    for a, b in raw_edges:
        i, j = index[a], index[b]
        if g.has_edge(i, j):
            duplicates += 1
        else:
            g.add_edge(i, j)
    if duplicates:
        warnings.warn(f"{path}: collapsed {duplicates} duplicate edge line(s)")
    return g


def load_attributes(path, g: Graph, numeric=()) -> dict:
    """Read a CSV attribute table and attach the attributes to g.

    First row is the header, first column `node` holds the node identifier.
    Columns named in `numeric` parse as finite reals; everything else becomes
    categorical.  Every graph node must appear exactly once.
    """
    import csv

    numeric = set(numeric)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GraphError(f"{path}: empty attribute table") from None
        if not header or header[0] != "node":
            raise GraphError(f"{path}: first column must be 'node', got {header[:1]}")
        columns = header[1:]
        unknown = numeric - set(columns)
        if unknown:
            raise GraphError(f"{path}: numeric columns not in table: {sorted(unknown)}")
        rows = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise GraphError(f"{path}:{lineno}: expected {len(header)} cells")
            name = row[0]
            if name in rows:
                raise GraphError(f"{path}:{lineno}: duplicate row for node {name!r}")
            rows[name] = row[1:]

    missing = [lbl for lbl in g.labels if lbl not in rows]
    if missing:
        raise GraphError(f"{path}: missing rows for nodes {missing}")

    result = {}
    for c, col in enumerate(columns):
        cells = [rows[lbl][c] for lbl in g.labels]
        if col in numeric:
            try:
                values = np.array([float(x) for x in cells])
            except ValueError as exc:
                raise GraphError(f"{path}: column {col!r}: {exc}") from None
            if not np.all(np.isfinite(values)):
                raise GraphError(f"{path}: column {col!r} has non-finite entries")
            result[col] = NumericAttribute(col, values)
        else:
            result[col] = CategoricalAttribute(col, tuple(cells))
    g.attributes.update(result)
    return result
