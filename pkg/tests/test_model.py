import itertools
import math

import numpy as np
import pytest

from conftest import random_graph
from graphlet_ergm.graphs import Graph, NumericAttribute
from graphlet_ergm.model import ModelError, ModelSpec, load_model, save_model
from graphlet_ergm.terms import TermSpec


def test_names_and_dimension():
    g = random_graph(6, 0.5, 0)
    m = ModelSpec(("edges", "graphletCount(g=2,8)"))
    assert m.statistic_names(g) == ["edges", "graphlet.2.Count",
                                    "graphlet.8.Count"]
    assert m.dimension(g) == 3


def test_theta_length_mismatch():
    g = random_graph(5, 0.5, 1)
    m = ModelSpec(("edges",), np.array([1.0, 2.0]))
    with pytest.raises(ModelError):
        m.plan(g)


def test_empty_model_rejected():
    with pytest.raises(ModelError):
        ModelSpec(())


def test_observed_statistics_triangle():
    g = Graph(3)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        g.add_edge(i, j)
    m = ModelSpec(("edges", "graphletCount(g=2)"))
    assert np.array_equal(m.observed_statistics(g), [3.0, 1.0])


def test_json_round_trip(tmp_path):
    m = ModelSpec(
        ("edges", "grorbitCov(attr=score, orbits=9:11)"),
        np.array([-1.5, 0.25, 0.1, 0.0]),
    )
    path = tmp_path / "model.json"
    save_model(m, path)
    m2 = load_model(path)
    assert m2.terms == m.terms
    assert np.array_equal(m2.theta, m.theta)


def test_load_model_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ModelError):
        load_model(bad)
    bad.write_text('{"no_terms": []}')
    with pytest.raises(ModelError):
        load_model(bad)


def brute_conditional(m, g, i, j):
    """Oracle: P(edge | rest) from the two full graph weights."""
    h = g.copy()
    if not h.has_edge(i, j):
        h.add_edge(i, j)
    t_plus = m.observed_statistics(h)
    h.toggle_edge(i, j)
    t_minus = m.observed_statistics(h)
    a = math.exp(float(m.theta @ t_plus))
    b = math.exp(float(m.theta @ t_minus))
    return a / (a + b)


def test_conditional_probability_matches_enumeration():
    rng = np.random.default_rng(4)
    for trial in range(5):
        g = random_graph(5, 0.5, trial)
        g.attributes["x"] = NumericAttribute("x", rng.normal(size=5))
        m = ModelSpec(
            ("edges", "graphletCount(g=2)", "grorbitCov(attr=x, orbits=0:2)"),
            rng.normal(scale=0.7, size=5),
        )
        plan = m.plan(g)
        for i, j in itertools.combinations(range(5), 2):
            got = m.conditional_edge_probability(g, i, j, plan=plan)
            assert got == pytest.approx(brute_conditional(m, g, i, j), abs=1e-12)


def test_conditional_probability_requires_theta():
    g = random_graph(4, 0.5, 0)
    with pytest.raises(ModelError):
        ModelSpec(("edges",)).conditional_edge_probability(g, 0, 1)
