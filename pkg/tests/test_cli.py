"""Command-line interface: output bytes, exit codes, determinism."""

import io
import json
import os
import subprocess
import sys

import pytest

from conftest import CORPUS, DEGENERATE
from newton_spectra import BirkhoffObstruction
from newton_spectra import frobenius as frobenius_mod
from newton_spectra.cli import main


def run_cli(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_proc(argv, stdin=None, hashseed="0"):
    env = dict(os.environ, PYTHONHASHSEED=hashseed)
    return subprocess.run(
        [sys.executable, "-m", "newton_spectra.cli"] + argv,
        input=stdin, capture_output=True, text=True, env=env,
    )


def test_spectrum_exact_bytes(capsys):
    rc, out, err = run_cli(capsys, ["spectrum", "u1 + u1^-1"])
    assert rc == 0
    assert out == "0: 1\n1: 1\nSP(S) = S*(S+1)\n"
    assert err == ""


def test_mu_values_across_corpus(capsys):
    for expr, _, mu in CORPUS:
        rc, out, _ = run_cli(capsys, ["mu", expr])
        assert rc == 0 and out == "%d\n" % mu, expr


def test_basis_human_output(capsys):
    rc, out, _ = run_cli(capsys, ["basis", "u1 + u1^-2"])
    assert rc == 0
    assert out.splitlines() == [
        "0: 1  (alpha = 0)",
        "1: u1^-1  (alpha = 1/2)",
        "2: u1  (alpha = 1)",
        "graded dims: 1 1 1",
    ]


def test_not_convenient_exits_2(capsys):
    rc, out, err = run_cli(capsys, ["polytope", "u1 + u2"])
    assert rc == 2
    assert "not convenient" in err


def test_parse_error_exits_2(capsys):
    rc, _, err = run_cli(capsys, ["mu", "2*"])
    assert rc == 2
    assert "error" in err


def test_degenerate_exits_2(capsys):
    rc, _, err = run_cli(capsys, ["spectrum", DEGENERATE])
    assert rc == 2
    assert "degenerate" in err


def test_assumed_degenerate_caught_downstream(capsys):
    # skipping the certificate must not let the degenerate input through:
    # the graded-band guard on the quotient stops it with exit code 2
    rc, _, err = run_cli(capsys, ["check", DEGENERATE, "--assume-nondegenerate"])
    assert rc == 2
    assert "graded quotient" in err


def test_both_sources_rejected(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("u1 + u1^-1\n")
    rc, _, err = run_cli(capsys, ["mu", "u1 + u1^-1", "--file", str(path)])
    assert rc == 2
    assert "exactly one input source" in err


def test_missing_file_exits_2(capsys, tmp_path):
    rc, _, err = run_cli(capsys, ["mu", "--file", str(tmp_path / "nope")])
    assert rc == 2


def test_file_input(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("u1 + u2 + u1^-1*u2^-1\n")
    rc, out, _ = run_cli(capsys, ["mu", "--file", str(path)])
    assert rc == 0 and out == "3\n"


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("u1 + u1^-2\n"))
    rc, out, _ = run_cli(capsys, ["mu", "-"])
    assert rc == 0 and out == "3\n"


def test_explicit_variable_names(capsys):
    rc, out, _ = run_cli(capsys, ["frobenius", "x + x^-1", "--vars", "x"])
    assert rc == 0
    assert "E = t0*d0 + 2*d1" in out


def test_analyze_human_summary(capsys):
    rc, out, _ = run_cli(capsys, ["analyze", "u1 + u1^-1"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "input: u1 + u1^-1"
    assert "n = 1, scale = 1, mu = 2" in lines
    assert "SP(S) = S*(S+1)" in lines
    assert "D = 1" in lines
    assert "E = t0*d0 + 2*d1" in lines
    assert any(l.startswith("birkhoff: diagonal-ansatz") for l in lines)


def test_analyze_json_schema_and_sections(capsys):
    rc, out, _ = run_cli(capsys, ["analyze", "u1 + u2 + u1^-1*u2^-1", "--json"])
    assert rc == 0
    report = json.loads(out)
    assert report["schema"] == "newton-spectra/1"
    assert list(report) == [
        "schema", "input", "polytope", "nondegeneracy", "mu", "basis",
        "spectrum", "pencil", "birkhoff", "frobenius", "error",
    ]
    assert report["mu"] == 3
    assert report["birkhoff"]["flags"] == {
        "v_solution": True, "v_plus": True, "opposite": True, "b_opposed": True,
    }
    assert report["frobenius"]["euler_field"] == "t0*d0 + 3*d1 - t2*d2"
    assert report["error"] is None


def test_analyze_json_on_invalid_input_carries_error(capsys):
    rc, out, _ = run_cli(capsys, ["analyze", "u1 + u2", "--json"])
    assert rc == 2
    report = json.loads(out)
    assert report["error"]["stage"] == "polytope"
    assert report["mu"] is None


def test_section_json_wrapper(capsys):
    rc, out, _ = run_cli(capsys, ["spectrum", "u1 + u1^-2", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["schema"] == "newton-spectra/1"
    assert obj["command"] == "spectrum"
    assert obj["spectrum"]["factored"] == "S*(S+1/2)*(S+1)"


def test_check_command_all_pass(capsys):
    rc, out, _ = run_cli(capsys, ["check", "u1 + u2 + u1^-1*u2^-1"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[-1] == "10 passed, 0 failed"
    assert all(l.startswith("PASS ") for l in lines[:-1])
    assert len(lines) == 11


def test_check_three_variables(capsys):
    rc, out, _ = run_cli(capsys, ["check", "u1*u2*u3 + u1^-1 + u2^-1 + u3^-1"])
    assert rc == 0
    assert out.splitlines()[-1] == "10 passed, 0 failed"


def test_obstruction_exit_code_3(capsys, monkeypatch):
    obs = BirkhoffObstruction(
        message="synthetic", equations=1, unknowns=0,
        system_rank=0, augmented_rank=1, sweeps=16,
        unsatisfiable=((2, 0, 1),),
    )
    monkeypatch.setattr(frobenius_mod, "solve_birkhoff", lambda pencil: obs)
    rc, out, err = run_cli(capsys, ["frobenius", "u1 + u1^-1"])
    assert rc == 3
    assert "obstruction" in err
    assert "caveat: pencil not normalized" in out

    rc, out, err = run_cli(capsys, ["birkhoff", "u1 + u1^-1"])
    assert rc == 3
    assert "obstruction: synthetic" in out
    assert "(2, 0, 1)" in out


def test_obstruction_does_not_change_other_commands(capsys, monkeypatch):
    obs = BirkhoffObstruction(
        message="synthetic", equations=1, unknowns=0,
        system_rank=0, augmented_rank=1, sweeps=16,
    )
    monkeypatch.setattr(frobenius_mod, "solve_birkhoff", lambda pencil: obs)
    rc, _, _ = run_cli(capsys, ["spectrum", "u1 + u1^-1"])
    assert rc == 0
    rc, _, _ = run_cli(capsys, ["analyze", "u1 + u1^-1"])
    assert rc == 0


def test_subprocess_end_to_end():
    proc = run_proc(["spectrum", "u1 + u1^-1"])
    assert proc.returncode == 0
    assert proc.stdout == "0: 1\n1: 1\nSP(S) = S*(S+1)\n"
    proc = run_proc(["mu", "-"], stdin="u1^2 + u2^2 + u1^-1*u2^-1\n")
    assert proc.returncode == 0 and proc.stdout == "8\n"


def test_json_output_deterministic_across_hash_seeds():
    # set/dict iteration must never leak into the report: identical bytes
    # under different interpreter hash seeds
    for expr in ("u1 + u2 + u1^-1*u2^-1", "u1 + u2 + u3 + u1^-1 + u2^-1 + u3^-1"):
        a = run_proc(["analyze", expr, "--json"], hashseed="0")
        b = run_proc(["analyze", expr, "--json"], hashseed="12345")
        assert a.returncode == 0 and b.returncode == 0
        assert a.stdout == b.stdout, expr
