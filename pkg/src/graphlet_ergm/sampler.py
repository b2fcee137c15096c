"""Metropolis-Hastings simulation over the dyad toggle chain.

Each proposal toggles one dyad; the acceptance ratio needs only the dyad's
change-score vector, so statistics are accumulated incrementally and no full
recount happens inside the chain.  Two proposal kernels are available:
uniform dyad selection, and a tie/no-tie mixture that picks an existing edge
with fixed probability (much better mixing on sparse graphs), with the
matching Hastings correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .census import full_census
from .graphs import Graph
from .terms import commit_toggle

__all__ = [
    "SamplerConfig",
    "SamplerError",
    "SimulationResult",
    "simulate",
    "simulate_chains",
    "bernoulli_graph",
]


class SamplerError(RuntimeError):
    pass


@dataclass
class SamplerConfig:
    burnin: int = 10_000
    interval: int = 1_000
    sample_size: int = 100
    seed: int | None = None
    proposal: str = "uniform"  # "uniform" or "tnt"
    tnt_prob: float = 0.5      # tie/no-tie mixture weight on the edge pick
    check_every: int = 0       # >0: revalidate incremental state this often
    return_graphs: bool = False

    def __post_init__(self):
        if self.proposal not in ("uniform", "tnt"):
            raise SamplerError(f"unknown proposal kernel {self.proposal!r}")
        if not (0.0 < self.tnt_prob < 1.0) and self.proposal == "tnt":
            raise SamplerError("tnt_prob must be in (0, 1)")
        for name in ("burnin", "interval", "sample_size"):
            if getattr(self, name) < 0 or (name != "burnin" and getattr(self, name) == 0):
                raise SamplerError(f"{name} must be positive")


@dataclass
class SimulationResult:
    stats: np.ndarray       # [sample_size, p]
    names: list
    acceptance_rate: float
    seed: object            # entropy actually used, always reportable
    final_graph: Graph
    graphs: list | None = None


def bernoulli_graph(n: int, p: float, seed=None) -> Graph:
    """Erdos-Renyi G(n, p) draw."""
    rng = np.random.default_rng(seed)
    g = Graph(n)
    iu, ju = np.triu_indices(n, k=1)
    hit = rng.random(len(iu)) < p
    for i, j in zip(iu[hit], ju[hit]):
        g.add_edge(int(i), int(j))
    return g


class _Chain:
    """One running chain: graph, incremental statistics, edge registry."""

    def __init__(self, model, g, plan, rng, config):
        self.model = model
        self.g = g.copy()
        self.plan = plan
        self.theta = np.asarray(model.theta, dtype=float)
        self.rng = rng
        self.config = config
        self.cache = model.make_cache(self.g, plan)
        census = full_census(self.g, max_size=plan.smax)
        from .terms import evaluate_from_census

        self.stats = np.concatenate(
            [evaluate_from_census(census, t, self.g) for t in model.terms]
        )
        self.edges = list(self.g.edges())
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.ndyads = self.g.n * (self.g.n - 1) // 2
        self.accepted = 0
        self.proposed = 0
        self._since_check = 0

    # dyad bookkeeping for the tie/no-tie kernel
    def _register_add(self, i, j):
        e = (i, j) if i < j else (j, i)
        self.edge_index[e] = len(self.edges)
        self.edges.append(e)

    def _register_remove(self, i, j):
        e = (i, j) if i < j else (j, i)
        k = self.edge_index.pop(e)
        last = self.edges.pop()
        if last != e:
            self.edges[k] = last
            self.edge_index[last] = k

    def _propose(self):
        """Pick a dyad; return (i, j, log Hastings ratio)."""
        cfg = self.config
        n = self.g.n
        if cfg.proposal == "tnt" and self.edges and self.rng.random() < cfg.tnt_prob:
            i, j = self.edges[self.rng.integers(len(self.edges))]
        else:
            i = int(self.rng.integers(n))
            j = int(self.rng.integers(n - 1))
            if j >= i:
                j += 1
        if cfg.proposal == "uniform":
            return i, j, 0.0
        p, d = cfg.tnt_prob, self.ndyads
        ne = len(self.edges)
        if self.g.has_edge(i, j):
            # removal: forward picks an edge or the dyad, reverse only the dyad
            fwd = p / ne + (1.0 - p) / d
            rev = (1.0 - p) / d
        else:
            fwd = (1.0 - p) / d
            rev = p / (ne + 1) + (1.0 - p) / d
        return i, j, math.log(rev) - math.log(fwd)

    def step(self):
        i, j, log_q = self._propose()
        add = not self.g.has_edge(i, j)
        delta, dorb = self.plan.evaluate(self.g, i, j, add, cache=self.cache)
        log_r = float(self.theta @ delta) + log_q
        self.proposed += 1
        if log_r >= 0 or self.rng.random() < math.exp(log_r):
            commit_toggle(self.g, i, j, cache=self.cache, dorb=dorb)
            self.stats += delta
            if add:
                self._register_add(i, j)
            else:
                self._register_remove(i, j)
            self.accepted += 1
            self._since_check += 1
            if self.config.check_every and self._since_check >= self.config.check_every:
                self._revalidate()
                self._since_check = 0

    def _revalidate(self):
        census = full_census(self.g, max_size=self.plan.smax)
        from .terms import evaluate_from_census

        fresh = np.concatenate(
            [evaluate_from_census(census, t, self.g) for t in self.model.terms]
        )
        if not np.allclose(self.stats, fresh):
            raise SamplerError(
                "incremental statistics drifted from a fresh census; "
                f"max abs error {np.max(np.abs(self.stats - fresh))}"
            )
        if self.cache is not None and not np.array_equal(self.cache.gd, census.gd):
            raise SamplerError("cached orbit degrees drifted from a fresh census")


def _run_chain(model, g, plan, config, rng) -> SimulationResult:
    chain = _Chain(model, g, plan, rng, config)
    for _ in range(config.burnin):
        chain.step()
    rows = np.empty((config.sample_size, plan.p))
    graphs = [] if config.return_graphs else None
    for s in range(config.sample_size):
        for _ in range(config.interval):
            chain.step()
        rows[s] = chain.stats
        if graphs is not None:
            graphs.append(chain.g.copy())
    rate = chain.accepted / max(chain.proposed, 1)
    return SimulationResult(
        stats=rows,
        names=plan.names,
        acceptance_rate=rate,
        seed=config.seed,
        final_graph=chain.g,
        graphs=graphs,
    )


def simulate(model, g: Graph, config: SamplerConfig | None = None) -> SimulationResult:
    """Draw graph statistics from the model by MCMC, starting from g."""
    from .model import ModelError

    if model.theta is None:
        raise ModelError("simulation needs model coefficients")
    config = config or SamplerConfig()
    plan = model.plan(g)
    rng = np.random.default_rng(config.seed)
    return _run_chain(model, g, plan, config, rng)


def simulate_chains(model, g: Graph, config: SamplerConfig, nchains: int) -> list:
    """Run several chains with seeds split from the configured master seed."""
    from .model import ModelError

    if model.theta is None:
        raise ModelError("simulation needs model coefficients")
    plan = model.plan(g)
    master = np.random.SeedSequence(config.seed)
    results = []
    for child in master.spawn(nchains):
        rng = np.random.default_rng(child)
        results.append(_run_chain(model, g, plan, config, rng))
    return results
