"""Per-toggle change-score cost versus average degree on sparse graphs.

The incremental engine visits the connected node sets around the toggled
dyad, so its cost grows with local density rather than graph size.  This
script measures the mean per-toggle time on 1000-node random graphs while
doubling the average degree, and prints the growth factor.

Usage: python scripts/benchmark_change_scores.py [--nodes 1000] [--reps 30]
"""

import argparse
import time

import numpy as np

from graphlet_ergm.sampler import bernoulli_graph
from graphlet_ergm.terms import ChangeScorePlan, TermSpec


def mean_toggle_time(n, avg_degree, reps, seed):
    g = bernoulli_graph(n, avg_degree / (n - 1), seed=seed)
    plan = ChangeScorePlan(
        [TermSpec(family="graphlet_count", graphlets=tuple(range(30)))], g
    )
    rng = np.random.default_rng(seed + 1)
    t0 = time.perf_counter()
    for _ in range(reps):
        i, j = map(int, rng.choice(n, size=2, replace=False))
        plan.evaluate(g, i, j, not g.has_edge(i, j))
    return (time.perf_counter() - t0) / reps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=1000)
    ap.add_argument("--reps", type=int, default=30)
    ap.add_argument("--degrees", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    prev = None
    for deg in args.degrees:
        t = mean_toggle_time(args.nodes, deg, args.reps, args.seed)
        growth = "" if prev is None else f"  (x{t / prev:.1f} vs previous)"
        print(f"avg degree {deg:>3}: {t * 1e3:8.2f} ms per toggle{growth}")
        prev = t


if __name__ == "__main__":
    main()
