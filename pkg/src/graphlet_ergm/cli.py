"""Command line interface.

Subcommands: summary, catalog, simulate, fit, gof.  Exit codes are stable:
0 success, 1 usage error, 2 data error, 3 numerical failure.  Every failure
prints a single machine-parsable line on stderr of the form
``graphlet-ergm: <category>: <reason>`` and every stochastic run prints the
seed it used so results can be reproduced.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .catalog import get_catalog
from .census import full_census
from .gof import DEFAULT_FAMILIES, gof
from .graphs import GraphError, load_attributes, load_edge_list
from .inference import (
    FitConfig,
    InferenceError,
    mcmc_mle,
    mple,
    summarize_fit,
)
from .model import ModelError, ModelSpec, load_model, save_model
from .sampler import SamplerConfig, SamplerError, bernoulli_graph, simulate
from .terms import TermError, parse_term

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class _CliError(Exception):
    def __init__(self, category, message, code):
        super().__init__(message)
        self.category = category
        self.code = code


def _fail_usage(msg):
    raise _CliError("usage", msg, EXIT_USAGE)


def _resolve_seed(seed):
    """Always report a concrete seed, drawing one when none was given."""
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
    print(f"seed: {seed}")
    return seed


def _load_graph(args):
    g = load_edge_list(args.graph)
    if getattr(args, "attrs", None):
        numeric = []
        if getattr(args, "numeric", None):
            numeric = [c.strip() for c in args.numeric.split(",") if c.strip()]
        load_attributes(args.attrs, g, numeric=numeric)
    return g


def _build_model(args, need_theta=False):
    if getattr(args, "model", None):
        model = load_model(args.model)
        if args.terms:
            _fail_usage("give either --model or --terms, not both")
    elif args.terms:
        model = ModelSpec(tuple(parse_term(t) for t in args.terms))
    else:
        _fail_usage("a model is required (--model FILE or --terms ...)")
    if need_theta and model.theta is None:
        raise _CliError(
            "data", "model file has no coefficients (theta)", EXIT_DATA
        )
    return model


# -- subcommands ------------------------------------------------------------

def cmd_summary(args):
    g = _load_graph(args)
    print(f"nodes: {g.n}")
    print(f"edges: {g.edge_count}")
    print(f"density: {g.density():.4f}")
    degs = g.degree_sequence()
    print(f"degree: min {degs.min()} median {np.median(degs):.1f} max {degs.max()}")
    if g.attributes:
        print("attributes: " + ", ".join(sorted(g.attributes)))
    census = full_census(g)
    print("graphlet counts:")
    for k in range(30):
        print(f"  graphlet.{k}.Count  {census.counts[k]}")
    return EXIT_OK


def cmd_catalog(args):
    cat = get_catalog()
    if args.dump_sign_table:
        writer = csv.writer(sys.stdout)
        writer.writerow(["graphlet", "positive_edge_orbits", "negative_edge_orbits"])
        for gid, pos, neg in cat.table_rows():
            writer.writerow([
                f"G{gid}",
                " ".join(f"E{e}" for e in pos),
                " ".join(f"E{e}" for e in neg),
            ])
        return EXIT_OK
    sizes = cat.graphlet_size
    print("30 connected graph classes on 2-5 nodes, 73 node orbits, "
          "69 edge orbits")
    for gid in range(30):
        orbs = cat.orbits_of_graphlet(gid)
        print(f"G{gid}: {sizes[gid]} nodes, node orbits "
              + ",".join(str(o) for o in orbs))
    return EXIT_OK


def cmd_simulate(args):
    model = _build_model(args, need_theta=True)
    if args.graph:
        g = _load_graph(args)
    elif args.nodes:
        g = bernoulli_graph(args.nodes, args.init_density, seed=args.seed)
    else:
        _fail_usage("give a starting point: GRAPH file or --nodes N")
    seed = _resolve_seed(args.seed)
    cfg = SamplerConfig(
        burnin=args.burnin,
        interval=args.interval,
        sample_size=args.samples,
        seed=seed,
        proposal=args.proposal,
        tnt_prob=args.tnt_prob,
    )
    res = simulate(model, g, cfg)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(res.names)
        for row in res.stats:
            writer.writerow([f"{v:g}" for v in row])
    finally:
        if args.output:
            out.close()
            print(f"wrote {args.samples} sampled statistic rows to {args.output}")
    print(f"acceptance rate: {res.acceptance_rate:.3f}")
    return EXIT_OK


def cmd_fit(args):
    g = _load_graph(args)
    model = _build_model(args)
    seed = _resolve_seed(args.seed)
    if args.method == "mple":
        fit = mple(model, g)
    else:
        cfg = FitConfig(
            seed=seed,
            max_iter=args.max_iter,
            sample_size=args.samples,
            burnin=args.burnin,
            interval=args.interval,
            loglik_bridges=0 if args.no_loglik else args.bridges,
        )
        fit = mcmc_mle(model, g, cfg)
    print(summarize_fit(fit))
    if not fit.converged:
        print(f"warning: estimation stopped with status {fit.status!r}",
              file=sys.stderr)
    if args.output:
        save_model(fit.model, args.output)
        print(f"wrote fitted model to {args.output}")
    return EXIT_OK


def cmd_gof(args):
    g = _load_graph(args)
    model = _build_model(args, need_theta=True)
    seed = _resolve_seed(args.seed)
    families = DEFAULT_FAMILIES
    if args.families:
        families = tuple(f.strip() for f in args.families.split(",") if f.strip())
    cfg = SamplerConfig(
        burnin=args.burnin,
        interval=args.interval,
        sample_size=args.nsim,
        seed=seed,
        proposal=args.proposal,
        return_graphs=True,
    )
    try:
        report = gof(model, g, nsim=args.nsim, config=cfg, families=families)
    except ValueError as exc:
        _fail_usage(str(exc))
    print(report.summary())
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_graph_args(p):
    p.add_argument("graph", help="edge list file")
    p.add_argument("--attrs", help="node attribute CSV (first column 'node')")
    p.add_argument("--numeric", help="comma-separated numeric attribute columns")


def _add_model_args(p):
    p.add_argument("--model", help="model JSON file")
    p.add_argument("--terms", nargs="+", default=(),
                   help="term expressions, e.g. edges 'graphletCount(g=2)'")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphlet-ergm",
        description="Random graph models with graphlet and orbit-degree statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summary", help="describe a graph and its graphlet counts")
    _add_graph_args(p)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("catalog", help="list the graph classes and orbits")
    p.add_argument("--dump-sign-table", action="store_true",
                   help="CSV of the signed graphlet/edge-orbit relation")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("simulate", help="draw statistics from a model by MCMC")
    p.add_argument("graph", nargs="?", help="starting graph edge list")
    p.add_argument("--attrs"), p.add_argument("--numeric")
    _add_model_args(p)
    p.add_argument("--nodes", type=int, help="start from a random graph on N nodes")
    p.add_argument("--init-density", type=float, default=0.1)
    p.add_argument("--burnin", type=int, default=10_000)
    p.add_argument("--interval", type=int, default=1_000)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--proposal", choices=("uniform", "tnt"), default="uniform")
    p.add_argument("--tnt-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="write sampled statistics CSV here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("fit", help="estimate model coefficients")
    _add_graph_args(p)
    _add_model_args(p)
    p.add_argument("--method", choices=("mple", "mcmc"), default="mcmc")
    p.add_argument("--max-iter", type=int, default=20)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--burnin", type=int, default=10_000)
    p.add_argument("--interval", type=int, default=100)
    p.add_argument("--bridges", type=int, default=12)
    p.add_argument("--no-loglik", action="store_true",
                   help="skip likelihood estimation (faster)")
    p.add_argument("--seed", type=int)
    p.add_argument("--output", help="write the fitted model JSON here")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("gof", help="simulation-based goodness-of-fit")
    _add_graph_args(p)
    _add_model_args(p)
    p.add_argument("--nsim", type=int, default=100)
    p.add_argument("--burnin", type=int, default=10_000)
    p.add_argument("--interval", type=int, default=1_000)
    p.add_argument("--proposal", choices=("uniform", "tnt"), default="uniform")
    p.add_argument("--families",
                   help="comma list from degree,distance,esp,triad,graphlets")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gof)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"graphlet-ergm: {exc.category}: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, ModelError, TermError, FileNotFoundError) as exc:
        print(f"graphlet-ergm: data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (InferenceError, SamplerError, np.linalg.LinAlgError) as exc:
        print(f"graphlet-ergm: numerical: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
