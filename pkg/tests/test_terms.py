import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_graph
from graphlet_ergm.census import count_statistic, full_census
from graphlet_ergm.graphs import CategoricalAttribute, Graph, NumericAttribute
from graphlet_ergm.terms import (
    ChangeScorePlan,
    GdvCache,
    TermError,
    TermSpec,
    affected_sets,
    change_scores,
    commit_toggle,
    edges_term,
    evaluate_from_census,
    parse_term,
    term_max_size,
    term_statistic_names,
    toggle_deltas,
)

ALL_COUNTS = TermSpec(family="graphlet_count", graphlets=tuple(range(30)))


def attach_attrs(g, seed=0):
    rng = np.random.default_rng(seed)
    g.attributes["score"] = NumericAttribute("score", rng.normal(size=g.n))
    # cycle the categories so all three are always present
    g.attributes["loc"] = CategoricalAttribute(
        "loc", tuple("ABC"[(v + int(rng.integers(3))) % 3] for v in range(g.n))
    )
    return g


# -- parsing ----------------------------------------------------------------

def test_parse_round_trip_examples():
    cases = {
        "edges": {"family": "graphlet_count", "graphlets": [0], "alias": "edges"},
        "graphletCount(g=0,2,8)": {"family": "graphlet_count",
                                   "graphlets": [0, 2, 8]},
        "grorbitCov(attr=score, orbits=9:11)": {
            "family": "orbit_cov", "orbits": [9, 10, 11], "attribute": "score"},
        "grorbitFactor(attr=loc, orbits=9:11, base=1)": {
            "family": "orbit_factor", "orbits": [9, 10, 11],
            "attribute": "loc", "base": [1]},
        "grorbitDist(orbits=0:14, d=0:10)": {
            "family": "orbit_dist", "orbits": list(range(15)),
            "degrees": list(range(11))},
    }
    for text, expected in cases.items():
        spec = parse_term(text)
        assert spec.to_json() == expected
        assert TermSpec.from_json(spec.to_json()) == spec


def test_parse_positional():
    assert parse_term("graphletCount(0,2,8)").graphlets == (0, 2, 8)
    t = parse_term("grorbitFactor(loc, 9:11, 0)")
    assert t.attribute == "loc" and t.orbits == (9, 10, 11) and t.base == (0,)


def test_parse_errors():
    with pytest.raises(TermError):
        parse_term("nonsense(1)")
    with pytest.raises(TermError):
        parse_term("grorbitDist(orbits=0:5)")  # missing d
    with pytest.raises(TermError):
        parse_term("grorbitCov(orbits=0:5)")  # missing attr


def test_out_of_range_ids_warn_and_drop():
    with pytest.warns(UserWarning):
        t = TermSpec(family="graphlet_count", graphlets=(0, 2, 99))
    assert t.graphlets == (0, 2)
    with pytest.warns(UserWarning):
        t = TermSpec(family="orbit_dist", orbits=(0, 15), degrees=(0,))
    assert t.orbits == (0,)
    with pytest.raises(TermError):
        TermSpec(family="graphlet_count", graphlets=(77,))


def test_term_max_size():
    assert term_max_size(edges_term()) == 2
    assert term_max_size(TermSpec(family="graphlet_count", graphlets=(2,))) == 3
    assert term_max_size(ALL_COUNTS) == 5
    assert term_max_size(
        TermSpec(family="orbit_cov", attribute="x", orbits=(0, 3))
    ) == 3
    assert term_max_size(
        TermSpec(family="orbit_dist", orbits=(0,), degrees=(1,))
    ) == 4


# -- statistic naming and exact evaluation ----------------------------------

def test_statistic_names():
    g = attach_attrs(random_graph(6, 0.5, 0))
    assert term_statistic_names(edges_term(), g) == ["edges"]
    t = TermSpec(family="orbit_factor", attribute="loc", orbits=(11,))
    names = term_statistic_names(t, g)
    # default base drops the lexicographically first category
    assert names == ["grorbitFactor.orb_11.attr_B", "grorbitFactor.orb_11.attr_C"]
    t0 = TermSpec(family="orbit_factor", attribute="loc", orbits=(11,), base=(0,))
    assert len(term_statistic_names(t0, g)) == 3


def test_evaluate_fixtures():
    g = Graph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.attributes["x"] = NumericAttribute("x", np.array([1.0, 10.0, 100.0]))
    census = full_census(g)
    cov = evaluate_from_census(
        census, TermSpec(family="orbit_cov", attribute="x", orbits=(0, 1, 2)), g
    )
    # orbit 0 is plain degree; the path center holds the middle orbit
    assert np.allclose(cov, [1 + 20 + 100, 101.0, 10.0])
    dist = evaluate_from_census(
        census,
        TermSpec(family="orbit_dist", orbits=(0,), degrees=(0, 1, 2)),
        g,
    )
    assert np.allclose(dist, [0, 2, 1])


def test_attribute_type_errors():
    g = attach_attrs(random_graph(5, 0.5, 1))
    census = full_census(g)
    with pytest.raises(TermError):
        evaluate_from_census(
            census, TermSpec(family="orbit_cov", attribute="loc", orbits=(0,)), g
        )
    with pytest.raises(TermError):
        evaluate_from_census(
            census,
            TermSpec(family="orbit_factor", attribute="score", orbits=(0,)),
            g,
        )
    with pytest.raises(TermError):
        evaluate_from_census(
            census,
            TermSpec(family="orbit_cov", attribute="missing", orbits=(0,)),
            g,
        )


# -- affected set enumeration -----------------------------------------------

def test_affected_sets_unique_and_anchored():
    g = random_graph(9, 0.4, 5)
    i, j = 2, 6
    sets = [frozenset(s) for s in affected_sets(g, i, j)]
    assert len(sets) == len(set(sets))
    for s in sets:
        assert i in s and j in s and 2 <= len(s) <= 5


def test_affected_sets_are_exactly_connected_supersets():
    """Against brute force: a set is affected iff it is connected once the
    dyad's edge is present."""
    import itertools

    from graphlet_ergm.catalog import classify_induced

    g = random_graph(8, 0.35, 9)
    i, j = 0, 5
    got = {frozenset(s) for s in affected_sets(g, i, j)}
    h = g.copy()
    if not h.has_edge(i, j):
        h.add_edge(i, j)
    expected = set()
    for k in range(2, 6):
        for nodes in itertools.combinations(range(8), k):
            if i in nodes and j in nodes:
                gid, _, _ = classify_induced(h, nodes)
                if gid is not None:
                    expected.add(frozenset(nodes))
    assert got == expected


# -- change scores against the census oracle --------------------------------

def full_stat_vector(g, terms, max_size=5):
    census = full_census(g, max_size=max_size)
    return np.concatenate([evaluate_from_census(census, t, g) for t in terms])


def test_path_closure_example():
    g = Graph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    delta = change_scores(g, 0, 2, True, [ALL_COUNTS])
    assert delta[1] == -1 and delta[2] == 1 and delta[0] == 1


def test_change_scores_precondition():
    g = Graph(3)
    g.add_edge(0, 1)
    with pytest.raises(TermError):
        change_scores(g, 0, 1, True, [ALL_COUNTS])
    with pytest.raises(TermError):
        change_scores(g, 1, 2, False, [ALL_COUNTS])


def test_change_scores_match_census_all_families():
    for seed in range(6):
        g = attach_attrs(random_graph(8, 0.35 + 0.05 * seed, seed), seed)
        terms = [
            ALL_COUNTS,
            TermSpec(family="orbit_cov", attribute="score",
                     orbits=tuple(range(73))),
            TermSpec(family="orbit_factor", attribute="loc",
                     orbits=tuple(range(73)), base=(1,)),
            TermSpec(family="orbit_dist", orbits=tuple(range(15)),
                     degrees=tuple(range(11))),
        ]
        plan = ChangeScorePlan(terms, g)
        cache = GdvCache(g, max_size=plan.smax)
        rng = np.random.default_rng(seed + 100)
        for _ in range(10):
            i, j = map(int, rng.choice(g.n, size=2, replace=False))
            add = not g.has_edge(i, j)
            before = full_stat_vector(g, terms)
            delta, dorb = plan.evaluate(g, i, j, add, cache=cache)
            commit_toggle(g, i, j, cache=cache, dorb=dorb)
            after = full_stat_vector(g, terms)
            assert np.allclose(delta, after - before, atol=1e-12)


def test_reverse_move_negates():
    g = attach_attrs(random_graph(7, 0.5, 42), 42)
    terms = [ALL_COUNTS,
             TermSpec(family="orbit_cov", attribute="score",
                      orbits=tuple(range(73)))]
    d1 = change_scores(g, 1, 4, not g.has_edge(1, 4), terms)
    g.toggle_edge(1, 4)
    d2 = change_scores(g, 1, 4, not g.has_edge(1, 4), terms)
    assert np.allclose(d1, -d2)


def test_gdv_cache_tracks_commits():
    g = random_graph(10, 0.3, 17)
    cache = GdvCache(g, max_size=5)
    rng = np.random.default_rng(18)
    for _ in range(40):
        i, j = map(int, rng.choice(g.n, size=2, replace=False))
        commit_toggle(g, i, j, cache=cache)
    assert np.array_equal(cache.gd, full_census(g, max_size=5).gd)


def test_dist_requires_cache():
    g = random_graph(6, 0.5, 3)
    t = TermSpec(family="orbit_dist", orbits=(0,), degrees=(0, 1, 2))
    plan = ChangeScorePlan([t], g)
    with pytest.raises(TermError):
        plan.evaluate(g, 0, 1, not g.has_edge(0, 1), cache=None)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_count_change_scores_property(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 9))
    g = random_graph(n, float(rng.uniform(0.1, 0.8)), seed)
    i, j = map(int, rng.choice(n, size=2, replace=False))
    add = not g.has_edge(i, j)
    before = count_statistic(g, ALL_COUNTS)
    delta = change_scores(g, i, j, add, [ALL_COUNTS])
    g.toggle_edge(i, j)
    after = count_statistic(g, ALL_COUNTS)
    assert np.array_equal(delta, after - before)
