import csv
import io

import numpy as np
import pytest

from fairsc.cli import main
from fairsc.graph import format_edges
from conftest import two_cliques

MODEL = ["--a", "0.5", "--b", "0.4", "--c", "0.3", "--d", "0.2"]


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_generate_deterministic(tmp_path):
    for name in ("x", "y"):
        code, out = run(["generate", "--n", "80", "--k", "2", *MODEL, "--seed", "5",
                         "--out", str(tmp_path / name)])
        assert code == 0 and out.startswith("n=80 edges=")
    for ext in ("edges", "groups", "truth"):
        assert (tmp_path / f"x.{ext}").read_bytes() == (tmp_path / f"y.{ext}").read_bytes()
    assert len((tmp_path / "x.groups").read_text().splitlines()) == 80
    assert len((tmp_path / "x.truth").read_text().splitlines()) == 80


def test_generate_zero_probabilities(tmp_path):
    code, out = run(["generate", "--n", "20", "--k", "2", "--a", "0", "--b", "0", "--c", "0",
                     "--d", "0", "--no-validate", "--out", str(tmp_path / "z")])
    assert code == 0
    assert (tmp_path / "z.edges").read_text() == ""
    assert "edges=0" in out


def test_generate_rejects_bad_ordering(tmp_path):
    code, _ = run(["generate", "--n", "20", "--k", "2", "--a", "0.2", "--b", "0.4", "--c", "0.1",
                   "--d", "0.05", "--out", str(tmp_path / "z")])
    assert code == 2


@pytest.fixture
def clique_files(tmp_path):
    (tmp_path / "g.edges").write_text(format_edges(two_cliques()))
    (tmp_path / "one.groups").write_text("0\n" * 8)
    (tmp_path / "two.groups").write_text("0\n1\n" * 4)
    (tmp_path / "g.truth").write_text("0\n" * 4 + "1\n" * 4)
    return tmp_path


def test_cluster_two_cliques(clique_files):
    code, out = run(["cluster", "--graph", str(clique_files / "g.edges"), "--algo", "sc-u",
                     "--k", "2", "--truth", str(clique_files / "g.truth"), "--no-runtime"])
    assert code == 0
    (row,) = rows(out)
    assert float(row["ratiocut"]) == 0 and float(row["error"]) == 0
    assert row["n"] == "8" and row["h"] == "1" and row["runtime_ms"] == ""


def test_cluster_single_group_matches_standard(clique_files):
    outs = []
    for algo, extra in (("sc-u", []), ("fair-u", ["--groups", str(clique_files / "one.groups")])):
        dest = clique_files / f"{algo}.labels"
        code, _ = run(["cluster", "--graph", str(clique_files / "g.edges"), "--algo", algo,
                       "--k", "2", "--seed", "3", "--out", str(dest), *extra])
        assert code == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]


def test_cluster_fair_requires_groups(clique_files):
    code, _ = run(["cluster", "--graph", str(clique_files / "g.edges"), "--algo", "fair-n",
                   "--k", "2"])
    assert code == 2


def test_cluster_parse_error_names_line(tmp_path, capsys):
    (tmp_path / "bad.edges").write_text("0 1 1\n1 2\n")
    code, _ = run(["cluster", "--graph", str(tmp_path / "bad.edges"), "--algo", "sc-u",
                   "--k", "2", "--n", "3"])
    assert code == 2
    assert "line 2" in capsys.readouterr().err


def test_cluster_isolated_vertex_normalized(tmp_path):
    (tmp_path / "g.edges").write_text("0 1 1\n1 2 1\n")
    code, _ = run(["cluster", "--graph", str(tmp_path / "g.edges"), "--algo", "sc-n",
                   "--k", "2", "--n", "4"])
    assert code == 4


def test_cluster_largest_component(tmp_path):
    (tmp_path / "g.edges").write_text("0 1 1\n1 2 1\n0 2 1\n2 3 1\n")
    (tmp_path / "g.groups").write_text("0\n1\n0\n1\n0\n")
    code, out = run(["cluster", "--graph", str(tmp_path / "g.edges"), "--groups",
                     str(tmp_path / "g.groups"), "--algo", "fair-n", "--k", "2",
                     "--largest-component"])
    assert code == 0
    assert rows(out)[0]["n"] == "4"


def test_cluster_missing_file(tmp_path):
    code, _ = run(["cluster", "--graph", str(tmp_path / "nope"), "--algo", "sc-u", "--k", "2"])
    assert code == 3


def _experiment(extra):
    return run(["experiment", "--sweep", "n", "--values", "200,400", "--trials", "3",
                "--algos", "sc-n,fair-n", "--k", "2", *MODEL, "--no-runtime", *extra])


def test_experiment_shape_and_determinism():
    code, first = _experiment([])
    assert code == 0
    table = rows(first)
    assert len(table) == 12
    assert {r["algo"] for r in table} == {"sc-n", "fair-n"}
    assert all(r["runtime_ms"] == "" for r in table)
    _, second = _experiment([])
    assert first == second


def test_experiment_zero_perturbation_is_identity():
    _, base = _experiment([])
    _, zero = _experiment(["--perturb-p", "0"])
    assert base == zero


def test_experiment_p_sweep():
    code, out = run(["experiment", "--sweep", "p", "--values", "0,1", "--trials", "2",
                     "--algos", "sc-n,fair-n", "--n", "120", "--k", "2", *MODEL, "--no-runtime"])
    assert code == 0
    table = rows(out)
    assert len(table) == 8
    at_one = [r for r in table if r["value"] == "1"]
    by_trial = {}
    for r in at_one:
        by_trial.setdefault(r["trial"], {})[r["algo"]] = r["error"]
    # with every vertex in one group the fair variant reduces to the standard one
    for errs in by_trial.values():
        assert errs["sc-n"] == errs["fair-n"]


def test_experiment_k_sweep_rounds_n():
    code, out = run(["experiment", "--sweep", "k", "--values", "3", "--trials", "1",
                     "--algos", "sc-u", "--n", "100", *MODEL, "--no-runtime"])
    assert code == 0
    assert len(rows(out)) == 1


def test_spectrum_check_pass():
    code, out = run(["spectrum-check", "--n", "24", "--k", "2", "--a", "0.8", "--b", "0.6",
                     "--c", "0.4", "--d", "0.2"])
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("PASS")


def test_spectrum_check_three_groups():
    code, _ = run(["spectrum-check", "--n", "120", "--k", "4", "--h", "3", "--a", "0.8",
                   "--b", "0.6", "--c", "0.4", "--d", "0.2"])
    assert code == 0


def test_spectrum_check_invalid_ordering():
    code, _ = run(["spectrum-check", "--n", "24", "--k", "2", "--a", "0.5", "--b", "0.6",
                   "--c", "0.4", "--d", "0.2"])
    assert code == 2


def test_spectrum_check_too_large():
    code, _ = run(["spectrum-check", "--n", "1000", "--k", "2", *MODEL])
    assert code == 2
