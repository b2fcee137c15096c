"""End-to-end demo: build a toy network, fit, and print a GOF report.

Usage: python scripts/gof_demo.py [--seed 7]
"""

import argparse

from graphlet_ergm.gof import gof
from graphlet_ergm.inference import mple, summarize_fit
from graphlet_ergm.model import ModelSpec
from graphlet_ergm.sampler import SamplerConfig, bernoulli_graph


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--nodes", type=int, default=25)
    ap.add_argument("--density", type=float, default=0.15)
    ap.add_argument("--nsim", type=int, default=100)
    args = ap.parse_args()

    g = bernoulli_graph(args.nodes, args.density, seed=args.seed)
    model = ModelSpec(("edges", "graphletCount(g=2)"))
    fit = mple(model, g)
    print(summarize_fit(fit))
    print()
    cfg = SamplerConfig(burnin=20_000, interval=2_000, sample_size=args.nsim,
                        seed=args.seed, proposal="tnt", return_graphs=True)
    report = gof(fit.model, g, nsim=args.nsim, config=cfg)
    print(report.summary())


if __name__ == "__main__":
    main()
