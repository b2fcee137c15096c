"""Simulation-based goodness-of-fit.

Graphs are simulated from the fitted model and compared to the observed
graph on auxiliary statistics that are not (necessarily) in the model:
degree distribution, geodesic distance distribution, edgewise shared
partners, the undirected triad census, and optionally the graphlet counts
themselves.  Each bin gets simulation quantiles and a Monte Carlo p-value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .census import full_census
from .sampler import SamplerConfig, simulate

__all__ = [
    "GofReport",
    "GofFamily",
    "gof",
    "quantile_test",
    "degree_distribution",
    "geodesic_distribution",
    "esp_distribution",
    "triad_census",
]

QUANTILES = (0.0, 0.025, 0.25, 0.5, 0.75, 0.975, 1.0)
TRIAD_LABELS = ("empty", "one-edge", "two-path", "triangle")


# -- auxiliary statistic tabulators -----------------------------------------

def degree_distribution(g) -> np.ndarray:
    """Number of nodes of each degree 0..n-1."""
    out = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        out[g.degree(v)] += 1
    return out

def geodesic_distribution(g) -> np.ndarray:
    """Number of dyads at each geodesic distance 1..n-1, then unreachable."""
    n = g.n
    out = np.zeros(n, dtype=np.int64)  # slot d-1 for distance d, slot n-1 inf
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            v = q.popleft()
            for w in g.neighbor_set(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q.append(w)
        for t in range(s + 1, n):
            if dist[t] > 0:
                out[dist[t] - 1] += 1
            else:
                out[n - 1] += 1
    return out

def esp_distribution(g) -> np.ndarray:
    """Number of edges with each shared-partner count 0..n-2."""
    out = np.zeros(max(g.n - 1, 1), dtype=np.int64)
    for i, j in g.edges():
        out[len(g.neighbor_set(i) & g.neighbor_set(j))] += 1
    return out

def triad_census(g) -> np.ndarray:
    """Counts of the four undirected triad classes.

    Triangles are counted directly; the rest follow from the identities
    two-path = wedges - 3 triangles and
    one-edge = |E| (n-2) - 2 wedges + 3 triangles.
    """
    n = g.n
    tri3 = 0
    for i, j in g.edges():
        tri3 += len(g.neighbor_set(i) & g.neighbor_set(j))
    triangles = tri3 // 3
    wedges = sum(d * (d - 1) // 2 for d in (g.degree(v) for v in range(n)))
    two_path = wedges - 3 * triangles
    one_edge = g.edge_count * (n - 2) - 2 * wedges + 3 * triangles
    total = n * (n - 1) * (n - 2) // 6
    empty = total - one_edge - two_path - triangles
    return np.array([empty, one_edge, two_path, triangles], dtype=np.int64)

def graphlet_count_vector(g) -> np.ndarray:
    return full_census(g).counts


_FAMILIES = {
    "degree": (degree_distribution, lambda g: [f"deg_{d}" for d in range(g.n)]),
    "distance": (
        geodesic_distribution,
        lambda g: [f"dist_{d}" for d in range(1, g.n)] + ["unreachable"],
    ),
    "esp": (esp_distribution, lambda g: [f"esp_{s}" for s in range(max(g.n - 1, 1))]),
    "triad": (triad_census, lambda g: list(TRIAD_LABELS)),
    "graphlets": (
        graphlet_count_vector,
        lambda g: [f"graphlet.{k}.Count" for k in range(30)],
    ),
}

DEFAULT_FAMILIES = ("degree", "distance", "esp", "triad")


def quantile_test(observed: float, sims: np.ndarray, rng=None):
    """Position of an observed value inside its simulated distribution.

    Returns (fraction of simulations <= observed, two-sided Monte Carlo
    p-value, randomized PIT value).  The p-value uses the add-one rule so it
    is never exactly zero; the PIT draw breaks ties so that discrete
    statistics still give uniform values under the model.
    """
    sims = np.asarray(sims, dtype=float)
    nsim = len(sims)
    n_le = int(np.sum(sims <= observed))
    n_ge = int(np.sum(sims >= observed))
    n_lt = int(np.sum(sims < observed))
    n_eq = n_le - n_lt
    frac_leq = n_le / nsim
    pval = min(1.0, 2.0 * min(n_ge + 1, n_le + 1) / (nsim + 1))
    u = np.random.default_rng().random() if rng is None else rng.random()
    pit = (n_lt + u * (1 + n_eq)) / (nsim + 1)
    return frac_leq, pval, pit


@dataclass
class GofFamily:
    name: str
    labels: list
    observed: np.ndarray
    sims: np.ndarray          # [nsim, nbins]
    quantiles: np.ndarray     # [len(QUANTILES), nbins]
    frac_leq: np.ndarray
    pvals: np.ndarray
    pit: np.ndarray

    def outside_band(self) -> np.ndarray:
        """True per bin where the observation leaves the central 95% band."""
        lo, hi = self.quantiles[1], self.quantiles[5]
        return (self.observed < lo) | (self.observed > hi)

    def table(self) -> str:
        head = (f"{'':>12} {'obs':>8} {'min':>8} {'2.5%':>8} {'25%':>8} "
                f"{'50%':>8} {'75%':>8} {'97.5%':>8} {'max':>8} {'p':>7}")
        lines = [f"[{self.name}]", head]
        flags = self.outside_band()
        for b, lab in enumerate(self.labels):
            q = self.quantiles[:, b]
            lines.append(
                f"{lab:>12} {self.observed[b]:>8.0f} "
                + " ".join(f"{v:>8.1f}" for v in q)
                + f" {self.pvals[b]:>7.3f}"
                + (" *" if flags[b] else "")
            )
        return "\n".join(lines)


@dataclass
class GofReport:
    families: dict
    nsim: int
    seed: object

    def summary(self) -> str:
        return "\n\n".join(f.table() for f in self.families.values())


@dataclass
class HoldoutResult:
    names: list
    observed: np.ndarray
    frac_leq: np.ndarray      # quantile of the observation among simulations
    pvals: np.ndarray
    pit: np.ndarray
    degenerate: np.ndarray    # True where the simulated reference is constant


def holdout_quantile_test(model, g, holdout, nsim: int = 199,
                          config: SamplerConfig | None = None) -> HoldoutResult:
    """Locate held-out statistics within the reduced model's simulations.

    ``holdout`` is a term spec that must not be part of the model; its
    observed value on g is compared with its distribution over graphs
    simulated from the model.  A constant simulated reference triggers a
    degenerate-reference warning and a quantile of 0, 0.5, or 1.
    """
    import warnings

    from .census import count_statistic
    from .terms import term_statistic_names

    if any(t == holdout for t in model.terms):
        raise ValueError("holdout term is already part of the model")
    config = config or SamplerConfig(
        burnin=10_000, interval=1_000, sample_size=nsim, return_graphs=True
    )
    config.sample_size = nsim
    config.return_graphs = True
    res = simulate(model, g, config)
    rng = np.random.default_rng(
        None if config.seed is None else config.seed + 0x9E3779B9
    )

    names = term_statistic_names(holdout, g)
    observed = count_statistic(g, holdout)
    sims = np.array([count_statistic(h, holdout) for h in res.graphs])
    p = len(names)
    frac = np.empty(p)
    pvals = np.empty(p)
    pit = np.empty(p)
    degenerate = np.zeros(p, dtype=bool)
    for b in range(p):
        col = sims[:, b]
        if np.all(col == col[0]):
            degenerate[b] = True
            warnings.warn(
                f"simulated reference for {names[b]} is constant at {col[0]}"
            )
            if observed[b] < col[0]:
                frac[b] = 0.0
            elif observed[b] > col[0]:
                frac[b] = 1.0
            else:
                frac[b] = 0.5
            _, pvals[b], pit[b] = quantile_test(observed[b], col, rng)
        else:
            frac[b], pvals[b], pit[b] = quantile_test(observed[b], col, rng)
    return HoldoutResult(
        names=names, observed=observed, frac_leq=frac,
        pvals=pvals, pit=pit, degenerate=degenerate,
    )


def gof(model, g, nsim: int = 100, config: SamplerConfig | None = None,
        families=DEFAULT_FAMILIES) -> GofReport:
    """Simulate nsim graphs from the model and compare auxiliary statistics.

    ``model`` must carry coefficients (a fitted model's ``.model`` works).
    """
    for fam in families:
        if fam not in _FAMILIES:
            raise ValueError(
                f"unknown gof family {fam!r}; choose from {sorted(_FAMILIES)}"
            )
    config = config or SamplerConfig(
        burnin=10_000, interval=1_000, sample_size=nsim, return_graphs=True
    )
    config.sample_size = nsim
    config.return_graphs = True
    res = simulate(model, g, config)
    rng = np.random.default_rng(
        None if config.seed is None else config.seed + 0x9E3779B9
    )

    report = {}
    for fam in families:
        tab, labfn = _FAMILIES[fam]
        observed = np.asarray(tab(g), dtype=float)
        sims = np.array([tab(h) for h in res.graphs], dtype=float)
        quants = np.quantile(sims, QUANTILES, axis=0)
        frac = np.empty(sims.shape[1])
        pvals = np.empty(sims.shape[1])
        pit = np.empty(sims.shape[1])
        for b in range(sims.shape[1]):
            frac[b], pvals[b], pit[b] = quantile_test(observed[b], sims[:, b], rng)
        report[fam] = GofFamily(
            name=fam,
            labels=labfn(g),
            observed=observed,
            sims=sims,
            quantiles=quants,
            frac_leq=frac,
            pvals=pvals,
            pit=pit,
        )
    return GofReport(families=report, nsim=nsim, seed=config.seed)
