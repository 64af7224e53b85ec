"""Tests for the monores command line"""

import json

import pytest

from monores_core.cli import (
    EXIT_OK,
    EXIT_TRUNCATED,
    EXIT_USAGE,
    main,
    parse_args,
)


def run_cli(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_malformed_flags_exit_with_usage_error():
    """Bad flags and non-positive exponents exit with status 1."""
    with pytest.raises(SystemExit) as e:
        parse_args(["resolve", "--exponents", "2,x", "--critical", "2"])
    assert e.value.code == EXIT_USAGE

    with pytest.raises(SystemExit) as e:
        parse_args(["resolve", "--exponents", "0,3", "--critical", "2"])
    assert e.value.code == EXIT_USAGE

    with pytest.raises(SystemExit) as e:
        parse_args(["resolve", "--exponents", "2,3", "--critical", "2", "--exceptional", "3"])
    assert e.value.code == EXIT_USAGE


def test_resolve_text(capsys):
    """Text output leads with the tree statistics."""
    status, out = run_cli(capsys, "resolve", "--exponents", "2,3", "--critical", "2")
    assert status == EXIT_OK
    assert out.startswith("root: J=X1^2*X2^3 c=2")
    assert "truncated: no" in out
    assert "t:([5/2,0],[1,0])" in out


def test_resolve_sing_empty(capsys):
    """d < c is reported and succeeds."""
    status, out = run_cli(capsys, "resolve", "--exponents", "1,1", "--critical", "3")
    assert status == EXIT_OK
    assert out == "Sing empty: d=2 < c=3\n"


def test_resolve_largest_branch(capsys):
    """The greedy branch of (2,3) has length 3."""
    status, out = run_cli(
        capsys, "resolve", "--exponents", "2,3", "--critical", "2", "--mode", "largest-branch"
    )
    assert status == EXIT_OK
    assert out.rstrip().endswith("length: 3")


def test_resolve_largest_branch_unsupported(capsys):
    """Strategy errors exit with status 1."""
    status, _ = run_cli(
        capsys, "resolve", "--exponents", "1,3", "--critical", "2", "--mode", "largest-branch"
    )
    assert status == EXIT_USAGE


def test_toric_matches_resolve(capsys):
    """Z^c - x^a resolves like (x^a, c)."""
    _, toric = run_cli(
        capsys, "resolve", "--exponents", "2,3", "--critical", "2", "--mode", "toric", "--format", "json"
    )
    _, plain = run_cli(capsys, "resolve", "--exponents", "2,3", "--critical", "2", "--format", "json")
    assert toric == plain


def test_resolve_json_is_deterministic(capsys):
    """Two runs print byte-identical JSON."""
    argv = ["resolve", "--exponents", "5,4,1", "--critical", "4", "--format", "json"]
    _, first = run_cli(capsys, *argv)
    _, second = run_cli(capsys, *argv)
    assert first == second
    payload = json.loads(first)
    assert payload["stats"]["truncated"] is False
    assert payload["nodes"][0]["id"] == 0


def test_resolve_jobs_do_not_change_output(capsys):
    """Parallel exploration prints the same tree."""
    argv = ["resolve", "--exponents", "2,3", "--critical", "2", "--format", "json"]
    _, serial = run_cli(capsys, *argv, "--jobs", "1")
    _, parallel = run_cli(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_resolve_dot(capsys):
    """DOT nodes carry the serialized invariant and edges the chart and any renaming."""
    status, out = run_cli(capsys, "resolve", "--exponents", "2,3", "--critical", "2", "--format", "dot")
    assert status == EXIT_OK
    assert out.startswith("digraph resolution {")
    assert '"0" [label="depth:0 t:[{\\"t\\":[\\"5\\",\\"2\\",0]},{\\"t\\":[\\"1\\",\\"1\\",0]}] J:X1^2*X2^3"];' in out
    assert 'label="chart X1' in out
    assert 'label="chart X2"' in out
    for line in out.splitlines():
        if "->" in line and "(" in line:
            assert "X1->X2,X2->X1" in line



def test_resolve_truncated_exit_code(capsys):
    """Hitting the depth guard exits with status 2."""
    status, out = run_cli(
        capsys, "resolve", "--exponents", "2,2,2", "--critical", "2", "--max-depth", "1"
    )
    assert status == EXIT_TRUNCATED
    assert "truncated: yes" in out


def test_resolve_below_critical_exponent_is_not_cut(capsys):
    """a_i < c roots get the hard limit as depth guard."""
    status, out = run_cli(capsys, "resolve", "--exponents", "1,9", "--critical", "9")
    assert status == EXIT_OK
    assert "truncated: no" in out


def test_principalize_rounds_finish(capsys):
    """Every principalization round of (2,3) runs to the end."""
    status, _ = run_cli(
        capsys, "resolve", "--exponents", "2,3", "--critical", "2", "--mode", "principalize"
    )
    assert status == EXIT_OK



def test_resolve_writes_out_file(capsys, tmp_path):
    """--out redirects the artifact."""
    target = tmp_path / "tree.json"
    status, out = run_cli(
        capsys,
        "resolve", "--exponents", "2,3", "--critical", "2",
        "--format", "json", "--out", str(target),
    )
    assert status == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["stats"]["max_depth"] >= 3


def test_bounds_json(capsys):
    """Bounds as exact strings."""
    status, out = run_cli(
        capsys, "bounds", "--exponents", "2,2,2", "--critical", "2", "--format", "json"
    )
    assert status == EXIT_OK
    assert json.loads(out)["global_bound"] == "1027"


def test_bounds_sing_empty(capsys):
    """No bounds when d < c."""
    status, _ = run_cli(capsys, "bounds", "--exponents", "1,1", "--critical", "3")
    assert status == EXIT_USAGE


def test_verify_catalan(capsys):
    """The identity suite passes."""
    status, out = run_cli(capsys, "verify", "--suite", "catalan")
    assert status == EXIT_OK
    assert out.startswith("✅ suite catalan")


def test_verify_catalan_up_to_twenty(capsys):
    """p(j-1, j) > p(j, j) on the diagonal is not a failure."""
    status, out = run_cli(capsys, "verify", "--suite", "catalan", "--n-max", "20")
    assert status == EXIT_OK
    assert "monotone in i" not in out



def test_table(capsys):
    """Text and JSON tables."""
    status, out = run_cli(capsys, "table", "--n-max", "3")
    assert status == EXIT_OK
    assert out.startswith("p(i,j)")

    status, out = run_cli(capsys, "table", "--n-max", "3", "--format", "json")
    rows = json.loads(out)["bounds"]
    assert [row["partial_sum"] for row in rows] == ["1", "3", "8"]
