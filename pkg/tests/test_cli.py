import csv
import io
import json

import numpy as np
import pytest

from graphlet_ergm.catalog import get_catalog
from graphlet_ergm.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("a b\nb c\nc a\n")
    return str(p)


@pytest.fixture
def small_graph(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("#nodes: a b c d e f\na b\nb c\nc a\nc d\nd e\ne f\n")
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_summary_on_triangle(capsys, triangle):
    code, out, _ = run(capsys, ["summary", triangle])
    assert code == EXIT_OK
    assert "nodes: 3" in out
    assert "graphlet.0.Count  3" in out
    assert "graphlet.2.Count  1" in out
    assert "graphlet.1.Count  0" in out


def test_catalog_dump_sign_table(capsys):
    code, out, _ = run(capsys, ["catalog", "--dump-sign-table"])
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["graphlet", "positive_edge_orbits", "negative_edge_orbits"]
    assert len(rows) == 31
    cat = get_catalog()
    for gid, pos, neg in cat.table_rows():
        row = rows[gid + 1]
        assert row[0] == f"G{gid}"
        assert row[1] == " ".join(f"E{e}" for e in pos)
        assert row[2] == " ".join(f"E{e}" for e in neg)


def test_usage_error_exit_1(capsys, triangle):
    code, _, _ = run(capsys, ["fit", triangle])  # no model or terms
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, ["frobnicate"])
    assert code == EXIT_USAGE


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, ["summary", "does-not-exist.txt"])
    assert code == EXIT_DATA
    assert err.startswith("graphlet-ergm: data:")


def test_missing_attribute_exit_2(capsys, small_graph):
    code, _, err = run(
        capsys,
        ["fit", small_graph, "--terms", "grorbitCov(attr=ghost, orbits=0)",
         "--method", "mple"],
    )
    assert code == EXIT_DATA
    assert "ghost" in err


def test_fit_mple_prints_seed_and_table(capsys, small_graph, tmp_path):
    out_model = tmp_path / "fit.json"
    code, out, _ = run(
        capsys,
        ["fit", small_graph, "--terms", "edges", "--method", "mple",
         "--seed", "4", "--output", str(out_model)],
    )
    assert code == EXIT_OK
    assert "seed: 4" in out
    assert "Estimate" in out
    saved = json.loads(out_model.read_text())
    assert saved["theta"] is not None and len(saved["theta"]) == 1


def test_simulate_reproducible(capsys, tmp_path):
    model = tmp_path / "m.json"
    model.write_text('{"terms": ["edges"], "theta": [-1.0]}')
    argv = ["simulate", "--model", str(model), "--nodes", "8",
            "--burnin", "200", "--interval", "20", "--samples", "5",
            "--seed", "11"]
    code, out1, _ = run(capsys, argv)
    assert code == EXIT_OK and "seed: 11" in out1
    code, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_simulate_requires_start(capsys, tmp_path):
    model = tmp_path / "m.json"
    model.write_text('{"terms": ["edges"], "theta": [-1.0]}')
    code, _, err = run(capsys, ["simulate", "--model", str(model)])
    assert code == EXIT_USAGE
    assert "usage" in err


def test_gof_runs(capsys, small_graph, tmp_path):
    model = tmp_path / "m.json"
    model.write_text('{"terms": ["edges"], "theta": [-1.2]}')
    code, out, _ = run(
        capsys,
        ["gof", small_graph, "--model", str(model), "--nsim", "10",
         "--burnin", "200", "--interval", "20", "--seed", "3",
         "--families", "degree,triad"],
    )
    assert code == EXIT_OK
    assert "[degree]" in out and "[triad]" in out and "[esp]" not in out


def test_gof_without_theta_exit_2(capsys, small_graph):
    code, _, err = run(capsys, ["gof", small_graph, "--terms", "edges"])
    assert code == EXIT_DATA
    assert "coefficients" in err
