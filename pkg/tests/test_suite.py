"""Identity-suite loading, execution, mutation fixtures, and reporting."""

from __future__ import annotations

import copy
from importlib import resources
from pathlib import Path

import pytest

from telesum.suite import (
    CaseResult,
    bundled_suite,
    load_suite,
    mutation_catalog,
    report_lines,
    run_case,
    run_identity_suite,
)

REPO_SUITE = Path(__file__).resolve().parent.parent / "paper.suite"


def test_bundled_matches_repo_copy():
    res = resources.files("telesum").joinpath("data").joinpath("paper.suite")
    assert res.read_bytes() == REPO_SUITE.read_bytes()


def test_load_suite_explicit_path():
    manifest = load_suite(REPO_SUITE)
    cases = manifest["cases"]
    assert len(cases) == 8
    assert [c["id"] for c in cases[:3]] == ["p11897", "p11899", "p11916"]


def test_load_suite_fallback_to_bundle(tmp_path):
    manifest = load_suite(tmp_path / "paper.suite")
    assert len(manifest["cases"]) == 8
    assert manifest == bundled_suite()


def test_load_suite_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_suite(tmp_path / "nope.suite")


def test_full_suite_passes():
    results = run_identity_suite(load_suite(REPO_SUITE))
    assert len(results) == 8
    assert all(r.ok for r in results), [r.detail for r in results if not r.ok]


def test_report_lines_format():
    results = [
        CaseResult("alpha", True, "", 0.1),
        CaseResult("beta", False, "value mismatch", 0.2),
    ]
    lines = report_lines(results)
    assert lines[0] == "PASS alpha"
    assert lines[1] == "FAIL beta: value mismatch"
    assert lines[-1] == "1/2 cases pass"


def test_report_lines_omit_timing():
    results = [CaseResult("alpha", True, "", 12.5)]
    assert "12.5" not in "\n".join(report_lines(results))


def test_mutation_catalog_all_fail():
    muts = mutation_catalog()
    assert len(muts) >= 8
    for case in muts:
        result = run_case(case)
        assert not result.ok, case["id"]
        assert result.detail


def test_unknown_kind_fails_gracefully():
    result = run_case({"id": "mystery", "kind": "no-such-kind"})
    assert not result.ok
    assert "kind" in result.detail


def test_broken_case_reports_error_detail():
    case = copy.deepcopy(load_suite(REPO_SUITE)["cases"][0])
    case["id"] = "broken"
    case["sides"][0][0]["sum"] = "binom(n,k"  # malformed on purpose
    result = run_case(case)
    assert not result.ok
    assert result.detail.startswith("error:")
