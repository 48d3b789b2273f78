"""End-to-end tests of the command-line surface: reports on stdout, exit codes."""
import json

import pytest

from app.cli import run
from app.cli.output import CSV_COLUMNS
from app.main import main


@pytest.fixture
def cli(cache_dir, capsys):
    """Run one command; returns (exit code, stdout)."""

    def invoke(*argv):
        code = run(list(argv) + ["--cache-dir", str(cache_dir)])
        return code, capsys.readouterr().out

    return invoke


def test_gamma_of_d4(cli):
    code, out = cli("gamma", "--type", "D", "--rank", "4")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["order"] == 6
    assert "(1 3 4)" in report["elements"]


def test_roots(cli):
    code, out = cli("roots", "--type", "G", "--rank", "2")
    assert code == 0
    report = json.loads(out)
    assert report["root_count"] == 12
    assert report["gamma"] == ["()"]


def test_reidemeister_unipotent_conjugation(cli):
    code, out = cli("reidemeister", "--group", "U:3:5", "--phi", "unipotent-conj:d=1,2,4")
    assert code == 0
    report = json.loads(out)
    assert report["R"] == 1
    assert report["fixed_subgroup_order"] == 1
    assert report["classes"][0]["size"] == 125


def test_reidemeister_product(cli):
    code, out = cli("reidemeister", "--group", "prod:SL:2:3^2", "--phi", "product:inner:g1;identity:sigma=(1 2)")
    assert code == 0
    assert json.loads(out)["R"] == 7


def test_group_build_forms(cli):
    code, out = cli("group", "build", "--classical", "SL", "--n", "2", "--p", "3")
    assert code == 0
    assert json.loads(out)["order"] == 24
    code, out = cli("group", "build", "--family", "A", "--rank", "1", "--p", "3")
    assert json.loads(out) == {"schema": 1, "label": "A1-adjoint-p3", "order": 12, "generator_count": 2}
    code, out = cli("group", "build", "--group", "B2:5")
    assert json.loads(out)["order"] == 20


def test_solve_unipotent(cli):
    code, out = cli("solve-unipotent", "--d", "1,2", "--g", "1,1;0,1", "--p", "5")
    assert code == 0
    report = json.loads(out)
    assert report["y"] == [[1, 3], [0, 1]]
    assert report["verified"] is True


def test_torus_fixed(cli):
    code, out = cli("torus-fixed", "--type", "A", "--rank", "2", "--rho", "(1 2)", "--p", "5")
    assert code == 0
    report = json.loads(out)
    assert report["witness_kind"] == "CaseII"
    assert report["d"] == 1


def test_verify_chevalley_relations(cli):
    code, out = cli("verify", "--suite", "chevalley-relations", "--type", "A", "--rank", "2", "--p", "3")
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "chevalley-relations"
    assert report["passed"] is True
    assert all(row["passed"] for row in report["results"])


def test_verify_csv(cli):
    code, out = cli("verify", "--suite", "chevalley-relations", "--type", "A", "--rank", "1", "--p", "3",
                    "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS) == "name,passed,checked,detail"
    assert len(lines) > 1


def test_verify_is_deterministic(cli):
    argv = ("verify", "--suite", "chevalley-relations", "--type", "A", "--rank", "1", "--p", "5", "--seed", "7")
    first, second = cli(*argv), cli(*argv)
    assert first == second
    assert json.loads(first[1])["seed"] == 7


@pytest.mark.parametrize(
    "argv",
    [("gamma", "--type", "A", "--rank", "2", "--format", "csv"),
     ("reidemeister", "--group", "Q:2:3", "--phi", "identity"),
     ("reidemeister", "--group", "SL:2:3", "--phi", "frobenius"),
     ("reidemeister", "--group", "SL:2:3", "--phi", "diagram:(1 2)"),
     ("roots", "--type", "B", "--rank", "1"),
     ("group", "build", "--classical", "SL", "--n", "2", "--p", "1"),
     ("group", "build", "--classical", "SL", "--p", "3"),
     ("solve-unipotent", "--d", "1,1", "--g", "1,1;0,1", "--p", "5"),
     ("verify", "--suite", "everything")],
)
def test_usage_errors_exit_2(cli, argv):
    code, out = cli(*argv)
    assert code == 2
    assert out == ""


def test_cap_exceeded_exits_1(cli):
    code, out = cli("reidemeister", "--group", "GL:2:3", "--phi", "identity", "--cap", "10")
    assert code == 1
    assert out == ""


def test_missing_command_and_help(capsys):
    assert run([]) == 2
    assert run(["--help"]) == 0
    capsys.readouterr()


def test_main_entry_point(cache_dir, capsys):
    assert main(["gamma", "--type", "E", "--rank", "6", "--cache-dir", str(cache_dir)]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 2
