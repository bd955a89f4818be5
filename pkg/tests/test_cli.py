"""Command-line interface: exit codes, diagnostics, machine output."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from telesum.cli import main
from telesum.hyperterm import parse_term, shift_quotient
from telesum.serialize import record_to_ratfun
from telesum.suite import mutation_catalog

CRUX = "binom(n,k)^3"
SUMMAND_11897 = "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)"
F_11916 = "binom(n+r,n)binom(r+k,r-1)binom(n+k,n)"
G_11916 = "(-1)binom(n+r,n)binom(r+k,r-1)binom(n+k,n)*k(k+1)/(n+1)"


def _machine_lines(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.strip().splitlines()]


def test_gosper_summable_exit_zero(capsys):
    assert main(["gosper", "k*fact(k)"]) == 0
    out = capsys.readouterr().out
    assert "summable" in out
    assert "R(n,k)" in out


def test_gosper_not_summable_exit_two(capsys):
    assert main(["gosper", "binom(n,k)"]) == 2
    assert "not summable" in capsys.readouterr().out


def test_gosper_machine_record_round_trip(capsys):
    assert main(["gosper", "--machine", "k*fact(k)"]) == 0
    (rec,) = _machine_lines(capsys)
    assert rec["status"] == "ok"
    r = shift_quotient(parse_term("k*fact(k)"), "k")
    big_r = record_to_ratfun(rec["R"])
    assert (big_r.shift(1) * r - big_r).is_one()


def test_parse_error_exit_one_with_caret(capsys):
    assert main(["gosper", "binom(n,k"]) == 1
    err = capsys.readouterr().err
    assert "parse error" in err
    assert "^" in err
    caret_line = err.splitlines()[-1]
    assert caret_line.index("^") == 2 + len("binom(n,k")


def test_unbound_parameter_exit_one(capsys):
    assert main(["gosper", "binom(n+r,k)"]) == 1
    assert "--param" in capsys.readouterr().err


def test_bad_param_syntax_exit_one(capsys):
    assert main(["gosper", "--param", "r=x", "binom(n,k)"]) == 1
    assert "NAME=INT" in capsys.readouterr().err


def test_zeil_exit_zero_prints_operator(capsys):
    assert main(["zeil", CRUX]) == 0
    out = capsys.readouterr().out
    assert "w(n+2)" in out


def test_zeil_exhausted_exit_three(capsys):
    assert main(["zeil", CRUX, "--jmax", "1"]) == 3
    assert "no recurrence" in capsys.readouterr().out


def test_zeil_machine_matches_plain_run(capsys):
    assert main(["zeil", "--machine", "binom(n,k)"]) == 0
    (rec,) = _machine_lines(capsys)
    assert rec["status"] == "ok"
    assert rec["order"] == "1"


def test_wz_check_true_pair_exit_zero(capsys):
    code = main(
        [
            "wz-check",
            F_11916,
            G_11916,
            "--coeff=n",
            "--coeff=-n-1",
            "--param",
            "r=2",
        ]
    )
    assert code == 0
    assert "verified" in capsys.readouterr().out


def test_wz_check_false_pair_exit_four(capsys):
    code = main(
        ["wz-check", "binom(n,k)", "binom(n,k)", "--coeff=n", "--coeff=-n-1"]
    )
    assert code == 4
    assert "failed" in capsys.readouterr().out


def test_wz_check_k_coefficient_rejected(capsys):
    code = main(["wz-check", "binom(n,k)", "binom(n,k)", "--coeff=k"])
    assert code == 1
    assert "may not involve k" in capsys.readouterr().err


def test_sum_explicit_range(capsys):
    code = main(["sum", "binom(n,k)", "--n", "0", "4", "--from", "0", "--to", "n"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["0: 1", "1: 2", "2: 4", "3: 8", "4: 16"]


def test_sum_natural_range_machine(capsys):
    assert main(["sum", "--machine", "binom(n,k)^2", "--n", "3", "3"]) == 0
    (rec,) = _machine_lines(capsys)
    assert rec == {"n": "3", "value": "20"}


def test_sum_half_open_bounds_rejected(capsys):
    code = main(["sum", "binom(n,k)", "--n", "0", "2", "--from", "0"])
    assert code == 1
    assert "together" in capsys.readouterr().err


def test_series_catalan(capsys):
    assert main(["series", "catalan", "--order", "6"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[:4] == ["0: 1", "1: 1", "2: 2", "3: 5"]
    assert lines[6] == "6: 132"


def test_series_unknown_name_exit_one(capsys):
    assert main(["series", "no-such-series"]) == 1
    assert "no-such-series" in capsys.readouterr().err


def test_suite_passing_and_failing(tmp_path, capsys):
    good = tmp_path / "good.suite"
    good.write_text(
        json.dumps(
            {
                "suite": "smoke",
                "cases": [
                    {
                        "id": "vandermonde",
                        "kind": "sum_identity",
                        "grid": {"n": [0, 6], "m": [0, 6]},
                        "sides": [
                            [{"sum": "binom(n,k)*binom(m,n-k)", "from": "0", "to": "n"}],
                            [{"term": "binom(n+m,n)"}],
                        ],
                    }
                ],
            }
        )
    )
    assert main(["suite", str(good)]) == 0
    assert "PASS vandermonde" in capsys.readouterr().out

    bad = tmp_path / "bad.suite"
    bad.write_text(json.dumps({"suite": "broken", "cases": [mutation_catalog()[0]]}))
    assert main(["suite", str(bad)]) == 4
    out = capsys.readouterr().out
    assert "FAIL mut-scaled-rhs" in out
    assert "0/1 cases pass" in out


def test_suite_missing_file_exit_one(capsys):
    assert main(["suite", "/nonexistent/missing.suite"]) == 1
    assert "usage error" in capsys.readouterr().err


def test_missing_subcommand_exit_one(capsys):
    assert main([]) == 1
    assert "usage error" in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    assert main(["zeil", "--machine", CRUX]) == 0
    first = capsys.readouterr().out
    assert main(["zeil", "--machine", CRUX]) == 0
    assert capsys.readouterr().out == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "telesum", "series", "central", "--order", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().splitlines() == ["0: 1", "1: 2", "2: 6", "3: 20"]
