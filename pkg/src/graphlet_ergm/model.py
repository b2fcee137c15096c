"""Model specification: term list plus natural parameters.

A model is a list of term specs together with a coefficient vector laid out
statistic by statistic in term order.  The probability of a graph is
proportional to exp(theta . t(y)); the conditional log-odds of a single dyad
given the rest of the graph is theta . delta, where delta is that dyad's
change-score vector.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .census import full_census
from .terms import (
    ChangeScorePlan,
    GdvCache,
    TermError,
    TermSpec,
    evaluate_from_census,
    parse_term,
    term_statistic_names,
)

__all__ = ["ModelSpec", "ModelError", "load_model", "save_model"]


class ModelError(ValueError):
    pass


@dataclass
class ModelSpec:
    terms: tuple
    theta: np.ndarray | None = None

    def __post_init__(self):
        self.terms = tuple(
            parse_term(t) if isinstance(t, str) else t for t in self.terms
        )
        if not self.terms:
            raise ModelError("model needs at least one term")
        if self.theta is not None:
            self.theta = np.asarray(self.theta, dtype=float)

    # -- layout --------------------------------------------------------------

    def statistic_names(self, g) -> list:
        names = []
        for t in self.terms:
            names.extend(term_statistic_names(t, g))
        return names

    def plan(self, g) -> ChangeScorePlan:
        """Compile the change-score plan for this model against g's attributes."""
        plan = ChangeScorePlan(self.terms, g)
        if self.theta is not None and len(self.theta) != plan.p:
            raise ModelError(
                f"theta has {len(self.theta)} entries but the model produces "
                f"{plan.p} statistics"
            )
        return plan

    def dimension(self, g) -> int:
        return len(self.statistic_names(g))

    def with_theta(self, theta) -> "ModelSpec":
        return ModelSpec(self.terms, np.asarray(theta, dtype=float))

    # -- evaluation ----------------------------------------------------------

    def observed_statistics(self, g, census=None) -> np.ndarray:
        """Exact statistic vector t(g), via the census oracle."""
        plan = self.plan(g)
        if census is None:
            census = full_census(g, max_size=plan.smax)
        return np.concatenate(
            [evaluate_from_census(census, t, g) for t in self.terms]
        )

    def make_cache(self, g, plan=None) -> GdvCache | None:
        plan = plan or self.plan(g)
        return GdvCache(g, max_size=plan.smax) if plan.needs_cache else None

    def conditional_edge_probability(self, g, i, j, plan=None, cache=None) -> float:
        """P(edge (i,j) present | rest of g) under theta."""
        if self.theta is None:
            raise ModelError("model has no coefficients")
        plan = plan or self.plan(g)
        if plan.needs_cache and cache is None:
            cache = self.make_cache(g, plan)
        add = not g.has_edge(i, j)
        delta, _ = plan.evaluate(g, i, j, add, cache=cache)
        if not add:
            delta = -delta  # orient as t(y+) - t(y-)
        lp = float(self.theta @ delta)
        # numerically safe logistic
        if lp >= 0:
            return 1.0 / (1.0 + math.exp(-lp))
        e = math.exp(lp)
        return e / (1.0 + e)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        d = {"terms": [t.to_json() for t in self.terms]}
        if self.theta is not None:
            d["theta"] = [float(x) for x in self.theta]
        return d

    @classmethod
    def from_json(cls, d) -> "ModelSpec":
        try:
            raw_terms = d["terms"]
        except (KeyError, TypeError):
            raise ModelError("model file needs a 'terms' list") from None
        terms = []
        for item in raw_terms:
            if isinstance(item, str):
                terms.append(parse_term(item))
            elif isinstance(item, dict):
                terms.append(TermSpec.from_json(item))
            else:
                raise ModelError(f"cannot interpret term entry {item!r}")
        theta = d.get("theta")
        m = cls(tuple(terms), None if theta is None else np.asarray(theta, float))
        return m


def load_model(path) -> ModelSpec:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelError(f"{path}: invalid JSON ({exc})") from None
    try:
        return ModelSpec.from_json(d)
    except TermError as exc:
        raise ModelError(f"{path}: {exc}") from None


def save_model(model: ModelSpec, path):
    with open(path, "w") as fh:
        json.dump(model.to_json(), fh, indent=2)
        fh.write("\n")
