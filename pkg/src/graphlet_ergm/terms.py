"""Model term families and the incremental change-score engine.

Four families of sufficient statistics are supported, all built on induced
subgraph classes of 2-5 nodes:

* ``graphlet_count``: number of copies of selected classes,
* ``orbit_cov``: sum over nodes of orbit degree times a numeric attribute,
* ``orbit_factor``: orbit degree totals split by a categorical attribute,
* ``orbit_dist``: number of nodes with a given orbit degree (orbits 0-14).

The change-score engine answers: how does each statistic move when one dyad
is toggled?  It enumerates exactly the connected node sets that contain both
endpoints (treating the toggled edge as present), classifies each set with
the edge and without it, and accumulates the difference.  No full recount
is ever done outside the census oracle.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .catalog import N_GRAPHLETS, get_catalog
from .census import CensusResult, full_census
from .graphs import CategoricalAttribute, NumericAttribute

__all__ = [
    "TermSpec",
    "TermError",
    "parse_term",
    "term_statistic_names",
    "term_max_size",
    "evaluate_from_census",
    "affected_sets",
    "toggle_deltas",
    "change_scores",
    "ChangeScorePlan",
    "GdvCache",
    "commit_toggle",
]

FAMILIES = ("graphlet_count", "orbit_cov", "orbit_factor", "orbit_dist")

_BIT_BASE = (0, 0, 1, 3, 6)


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class TermSpec:
    """Declarative description of one term family instance.

    ``base`` follows the factor-term convention: (0,) keeps every category,
    otherwise it lists 1-based indices of categories (in lexicographic
    order) to drop; the default drops the first.
    """

    family: str
    graphlets: tuple = ()       # graphlet_count
    orbits: tuple = ()          # orbit_cov / orbit_factor / orbit_dist
    attribute: str | None = None
    base: tuple = (1,)          # orbit_factor
    degrees: tuple = ()         # orbit_dist
    alias: str | None = None    # display name override (the `edges` sugar)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise TermError(f"unknown term family {self.family!r}")
        if self.family == "graphlet_count":
            ids = self.graphlets or tuple(range(N_GRAPHLETS))
            kept = tuple(i for i in ids if 0 <= i < N_GRAPHLETS)
            if len(kept) != len(ids):
                warnings.warn("graphlet ids outside 0..29 ignored")
            if not kept:
                raise TermError("graphlet_count term selects no graphlets")
            object.__setattr__(self, "graphlets", kept)
        else:
            hi = 14 if self.family == "orbit_dist" else 72
            ids = self.orbits or tuple(range(hi + 1))
            kept = tuple(i for i in ids if 0 <= i <= hi)
            if len(kept) != len(ids):
                warnings.warn(f"orbit ids outside 0..{hi} ignored")
            if not kept:
                raise TermError(f"{self.family} term selects no orbits")
            object.__setattr__(self, "orbits", kept)
        if self.family in ("orbit_cov", "orbit_factor") and not self.attribute:
            raise TermError(f"{self.family} requires an attribute name")
        if self.family == "orbit_dist" and not self.degrees:
            raise TermError("orbit_dist requires a degree list")

    def to_json(self):
        d = {"family": self.family}
        if self.family == "graphlet_count":
            d["graphlets"] = list(self.graphlets)
        else:
            d["orbits"] = list(self.orbits)
        if self.attribute:
            d["attribute"] = self.attribute
        if self.family == "orbit_factor":
            d["base"] = list(self.base)
        if self.family == "orbit_dist":
            d["degrees"] = list(self.degrees)
        if self.alias:
            d["alias"] = self.alias
        return d

    @classmethod
    def from_json(cls, d):
        return cls(
            family=d["family"],
            graphlets=tuple(d.get("graphlets", ())),
            orbits=tuple(d.get("orbits", ())),
            attribute=d.get("attribute"),
            base=tuple(d.get("base", (1,))),
            degrees=tuple(d.get("degrees", ())),
            alias=d.get("alias"),
        )


def edges_term() -> TermSpec:
    """The plain edge-count term, sugar for counting the single-edge class."""
    return TermSpec(family="graphlet_count", graphlets=(0,), alias="edges")


# -- term mini-language -----------------------------------------------------

_POSITIONAL = {
    "graphletCount": ("g",),
    "grorbitCov": ("attr", "orbits"),
    "grorbitFactor": ("attr", "orbits", "base"),
    "grorbitDist": ("orbits", "d"),
}
_FAMILY_OF = {
    "graphletCount": "graphlet_count",
    "grorbitCov": "orbit_cov",
    "grorbitFactor": "orbit_factor",
    "grorbitDist": "orbit_dist",
}


def _int_list(text):
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            lo, hi = chunk.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return tuple(out)


def parse_term(text: str) -> TermSpec:
    """Parse one term in the CLI mini-language.

    Examples: ``edges``, ``graphletCount(0,2,8)``,
    ``grorbitCov(attr=score, orbits=9:11)``,
    ``grorbitFactor(attr=loc, orbits=9:11, base=1)``,
    ``grorbitDist(orbits=0:14, d=0:10)``.
    """
    text = text.strip()
    if text == "edges":
        return edges_term()
    m = re.fullmatch(r"(\w+)\s*(?:\(\s*(.*?)\s*\))?", text, re.S)
    if not m or m.group(1) not in _FAMILY_OF:
        raise TermError(f"cannot parse term {text!r}")
    name, body = m.group(1), m.group(2) or ""

    # commas both separate arguments and join id lists; a bare chunk extends
    # the previous value only when that value is an unambiguous id list
    # (given as key=..., or the single graphletCount argument)
    list_keys = {"g", "orbits", "d", "base"}
    args = []  # [key, value, was_keyworded]
    positional = list(_POSITIONAL[name])
    for chunk in body.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk and not chunk.split("=")[0].strip().isdigit():
            key, val = chunk.split("=", 1)
            key = val_key = key.strip()
            if val_key in positional:
                positional.remove(val_key)
            args.append([key, val.strip(), True])
        elif args and args[-1][0] in list_keys and (args[-1][2] or args[-1][0] == "g"):
            args[-1][1] += "," + chunk
        else:
            if not positional:
                raise TermError(f"too many positional arguments in {text!r}")
            args.append([positional.pop(0), chunk, False])
    kwargs = {key: val for key, val, _ in args}

    family = _FAMILY_OF[name]
    if family == "graphlet_count":
        g = _int_list(kwargs["g"]) if "g" in kwargs else ()
        return TermSpec(family=family, graphlets=g)
    if family == "orbit_cov":
        return TermSpec(
            family=family,
            attribute=kwargs.get("attr"),
            orbits=_int_list(kwargs["orbits"]) if "orbits" in kwargs else (),
        )
    if family == "orbit_factor":
        return TermSpec(
            family=family,
            attribute=kwargs.get("attr"),
            orbits=_int_list(kwargs["orbits"]) if "orbits" in kwargs else (),
            base=_int_list(kwargs["base"]) if "base" in kwargs else (1,),
        )
    if "d" not in kwargs:
        raise TermError(f"grorbitDist needs a degree list (d=...): {text!r}")
    return TermSpec(
        family=family,
        orbits=_int_list(kwargs["orbits"]) if "orbits" in kwargs else (),
        degrees=_int_list(kwargs["d"]),
    )


# -- layout -----------------------------------------------------------------

def _factor_categories(term: TermSpec, g) -> tuple:
    attr = g.attributes.get(term.attribute)
    if attr is None:
        raise TermError(f"attribute {term.attribute!r} not found on graph")
    if not isinstance(attr, CategoricalAttribute):
        raise TermError(f"attribute {term.attribute!r} is not categorical")
    cats = attr.categories
    if term.base == (0,):
        return cats
    drop = {b - 1 for b in term.base}
    kept = tuple(c for k, c in enumerate(cats) if k not in drop)
    if not kept:
        raise TermError(f"base={term.base} drops every category of {term.attribute!r}")
    return kept


def term_statistic_names(term: TermSpec, g) -> list:
    if term.alias:
        return [term.alias]
    if term.family == "graphlet_count":
        return [f"graphlet.{i}.Count" for i in term.graphlets]
    if term.family == "orbit_cov":
        return [f"grorbitCov.orb_{o}.{term.attribute}" for o in term.orbits]
    if term.family == "orbit_factor":
        cats = _factor_categories(term, g)
        return [
            f"grorbitFactor.orb_{o}.attr_{c}" for o in term.orbits for c in cats
        ]
    return [
        f"grorbitDist.orb_{o}.deg_{d}" for o in term.orbits for d in term.degrees
    ]


def term_max_size(term: TermSpec) -> int:
    """Largest subgraph size this term can see."""
    cat = get_catalog()
    if term.family == "graphlet_count":
        return int(max(cat.graphlet_size[i] for i in term.graphlets))
    if term.family == "orbit_dist":
        return 4
    owners = [int(cat.graphlet_of_orbit[o]) for o in term.orbits]
    return int(max(cat.graphlet_size[g] for g in owners))


# -- exact evaluation from a census ----------------------------------------

def _numeric_values(term, g):
    attr = g.attributes.get(term.attribute)
    if attr is None:
        raise TermError(f"attribute {term.attribute!r} not found on graph")
    if not isinstance(attr, NumericAttribute):
        raise TermError(f"attribute {term.attribute!r} is not numeric")
    return attr.values


def evaluate_from_census(census: CensusResult, term: TermSpec, g) -> np.ndarray:
    if term.family == "graphlet_count":
        return census.counts[list(term.graphlets)].astype(float)
    gd = census.gd
    if term.family == "orbit_cov":
        x = _numeric_values(term, g)
        return np.array([float(gd[:, o] @ x) for o in term.orbits])
    if term.family == "orbit_factor":
        cats = _factor_categories(term, g)
        codes = g.attributes[term.attribute].codes()
        all_cats = g.attributes[term.attribute].categories
        out = []
        for o in term.orbits:
            for c in cats:
                out.append(float(gd[codes == all_cats.index(c), o].sum()))
        return np.array(out)
    # orbit_dist
    out = []
    for o in term.orbits:
        for d in term.degrees:
            out.append(float(np.count_nonzero(gd[:, o] == d)))
    return np.array(out)


# -- change-score engine ----------------------------------------------------

def affected_sets(g, i, j, max_size: int = 5):
    """Yield each connected node set containing dyad (i, j), exactly once.

    Connectivity is judged with the (i, j) edge treated as present; each set
    has 2..max_size nodes.  Expansion follows the same exclusive-neighborhood
    rule as the census, anchored at the dyad instead of a root node.
    """
    if i == j:
        raise ValueError("dyad endpoints must differ (loopless contract)")
    adj_bits = g.neighbor_bits
    neighbors = g.neighbors

    def extend(S, ext, nbh):
        yield tuple(S)
        if len(S) == max_size:
            return
        for idx in range(len(ext)):
            w = ext[idx]
            newext = ext[idx + 1:] + [
                u for u in neighbors(w) if not (nbh >> u) & 1
            ]
            yield from extend(S + [w], newext, nbh | adj_bits(w))

    nbh = adj_bits(i) | adj_bits(j) | (1 << i) | (1 << j)
    ext = sorted(
        (set(g.neighbor_set(i)) | set(g.neighbor_set(j))) - {i, j}
    )
    yield from extend([i, j], ext, nbh)


@lru_cache(maxsize=8)
def _engine_tables(max_size: int):
    """Plain-list classification tables for the hot enumeration loop."""
    cat = get_catalog()
    class_of = {k: cat.class_of[k].tolist() for k in range(2, max_size + 1)}
    orbit_rows = {
        k: [tuple(r) for r in cat.node_orbit_of[k]] for k in range(2, max_size + 1)
    }
    return class_of, orbit_rows


def toggle_deltas(g, i, j, max_size: int = 5, want_nodes: bool = True):
    """Count and orbit-degree deltas for dyad (i, j) in the with-edge
    convention: returns t(y+) - t(y-) components.

    Returns (dcounts, dorb) where dcounts is a length-30 list and dorb maps
    node -> {orbit: delta}.  ``want_nodes=False`` skips dorb for count-only
    models.
    """
    if i == j:
        raise ValueError("dyad endpoints must differ (loopless contract)")
    class_of, orbit_rows = _engine_tables(max_size)
    adj_bits = g._bits
    neighbors = g.neighbors

    dcounts = [0] * N_GRAPHLETS
    dorb: dict = {}

    def record(S, mask):
        k = len(S)
        mask_plus = mask | 1
        gid_plus = class_of[k][mask_plus]
        dcounts[gid_plus] += 1
        gid_minus = class_of[k][mask & ~1]
        if gid_minus >= 0:
            dcounts[gid_minus] -= 1
        if want_nodes:
            plus = orbit_rows[k][mask_plus]
            if gid_minus >= 0:
                minus = orbit_rows[k][mask & ~1]
                for p in range(k):
                    op, om = plus[p], minus[p]
                    if op != om:
                        node = dorb.setdefault(S[p], {})
                        node[op] = node.get(op, 0) + 1
                        node[om] = node.get(om, 0) - 1
            else:
                for p in range(k):
                    node = dorb.setdefault(S[p], {})
                    node[plus[p]] = node.get(plus[p], 0) + 1

    def extend(S, mask, ext, nbh):
        record(S, mask)
        k = len(S)
        if k == max_size:
            return
        base = _BIT_BASE[k]
        for idx in range(len(ext)):
            w = ext[idx]
            wbits = adj_bits[w]
            newmask = mask
            for p in range(k):
                if (wbits >> S[p]) & 1:
                    newmask |= 1 << (base + p)
            newext = ext[idx + 1:] + [
                u for u in neighbors(w) if not (nbh >> u) & 1
            ]
            extend(S + [w], newmask, newext, nbh | wbits)

    mask0 = 1 if (adj_bits[i] >> j) & 1 else 0
    nbh0 = adj_bits[i] | adj_bits[j] | (1 << i) | (1 << j)
    ext0 = sorted((set(g.neighbor_set(i)) | set(g.neighbor_set(j))) - {i, j})
    extend([i, j], mask0, ext0, nbh0)
    return dcounts, dorb


class GdvCache:
    """Orbit-degree matrix kept in sync with a graph across committed toggles."""

    def __init__(self, g, max_size: int = 4):
        self.max_size = max_size
        self.gd = full_census(g, max_size=max_size).gd

    def apply(self, dorb, sign: int):
        for node, per_orbit in dorb.items():
            for orb, delta in per_orbit.items():
                self.gd[node, orb] += sign * delta


def commit_toggle(g, i, j, cache: GdvCache | None = None, dorb=None):
    """Toggle dyad (i, j) and update the cached orbit degrees incrementally.

    ``dorb`` are the per-node orbit deltas already evaluated for this dyad
    (with-edge convention); when omitted they are recomputed.
    """
    if cache is not None and dorb is None:
        _, dorb = toggle_deltas(g, i, j, max_size=cache.max_size)
    receipt = g.toggle_edge(i, j)
    if cache is not None:
        cache.apply(dorb, -1 if receipt.was_present else +1)
    return receipt


class ChangeScorePlan:
    """Compiled mapping from raw toggle deltas to one model's statistics.

    Binds the term list to a specific graph's attributes (factor categories,
    covariate vectors) so the per-toggle work is pure accumulation.
    """

    def __init__(self, terms, g):
        self.terms = tuple(terms)
        self.names = []
        self.smax = 2
        self.wants_nodes = False
        self.needs_cache = False
        # accumulation tables
        self._count_slots = {}        # graphlet id -> [positions]
        self._cov_slots = {}          # orbit -> [(position, values array)]
        self._factor_slots = {}       # (orbit, code) -> [positions]
        self._factor_codes = {}
        self._dist_slots = {}         # (orbit, degree) -> [positions]
        self._dist_orbits = set()

        for term in self.terms:
            offset = len(self.names)
            self.names.extend(term_statistic_names(term, g))
            self.smax = max(self.smax, term_max_size(term))
            if term.family == "graphlet_count":
                for pos, gid in enumerate(term.graphlets):
                    self._count_slots.setdefault(gid, []).append(offset + pos)
            elif term.family == "orbit_cov":
                vals = _numeric_values(term, g)
                self.wants_nodes = True
                for pos, orb in enumerate(term.orbits):
                    self._cov_slots.setdefault(orb, []).append((offset + pos, vals))
            elif term.family == "orbit_factor":
                cats = _factor_categories(term, g)
                attr = g.attributes[term.attribute]
                codes = attr.codes()
                self.wants_nodes = True
                kept_codes = [attr.categories.index(c) for c in cats]
                for oi, orb in enumerate(term.orbits):
                    for ci, code in enumerate(kept_codes):
                        pos = offset + oi * len(cats) + ci
                        self._factor_slots.setdefault((orb, code), []).append(pos)
                self._factor_codes[id(term)] = codes
                self._codes = codes  # single attribute per plan in practice
            else:  # orbit_dist
                self.wants_nodes = True
                self.needs_cache = True
                for oi, orb in enumerate(term.orbits):
                    self._dist_orbits.add(orb)
                    for di, d in enumerate(term.degrees):
                        pos = offset + oi * len(term.degrees) + di
                        self._dist_slots.setdefault((orb, d), []).append(pos)
        self.p = len(self.names)
        self._factor_code_of = {}
        for term in self.terms:
            if term.family == "orbit_factor":
                self._factor_code_of = dict(
                    enumerate(g.attributes[term.attribute].codes())
                )

    def evaluate(self, g, i, j, add: bool, cache: GdvCache | None = None):
        """Change in the statistic vector for toggling dyad (i, j).

        Returns (delta vector, dorb) where dorb is needed for a later commit.
        """
        if self.needs_cache and cache is None:
            raise TermError("orbit_dist terms require a GdvCache")
        dcounts, dorb = toggle_deltas(
            g, i, j, max_size=self.smax, want_nodes=self.wants_nodes
        )
        sign = 1 if add else -1
        out = np.zeros(self.p)
        for gid, positions in self._count_slots.items():
            d = dcounts[gid]
            if d:
                for pos in positions:
                    out[pos] = sign * d
        if self._cov_slots or self._factor_slots:
            for node, per_orbit in dorb.items():
                for orb, delta in per_orbit.items():
                    if delta == 0:
                        continue
                    for pos, vals in self._cov_slots.get(orb, ()):
                        out[pos] += sign * delta * vals[node]
                    if self._factor_slots:
                        code = self._factor_code_of.get(node)
                        for pos in self._factor_slots.get((orb, code), ()):
                            out[pos] += sign * delta
        if self._dist_slots:
            gd = cache.gd
            for node, per_orbit in dorb.items():
                for orb, delta in per_orbit.items():
                    if delta == 0 or orb not in self._dist_orbits:
                        continue
                    d1 = int(gd[node, orb])
                    d2 = d1 + sign * delta
                    for pos in self._dist_slots.get((orb, d1), ()):
                        out[pos] -= 1
                    for pos in self._dist_slots.get((orb, d2), ()):
                        out[pos] += 1
        return out, dorb


def change_scores(g, i, j, add: bool, terms, cache: GdvCache | None = None):
    """One-shot change-score computation (builds a plan per call).

    ``add=True`` requires the edge to be currently absent, ``add=False``
    present; the result is the actual change t(after) - t(before) for the
    stated move.
    """
    present = g.has_edge(i, j)
    if add and present:
        raise TermError(f"edge ({i}, {j}) already present; cannot add")
    if not add and not present:
        raise TermError(f"edge ({i}, {j}) absent; cannot remove")
    plan = ChangeScorePlan(terms, g)
    vec, _ = plan.evaluate(g, i, j, add, cache=cache)
    return vec
