"""Identity suite runner: JSON manifests of summation identities checked
against the brute-force oracles, with a deterministic pass/fail report.

A manifest is {"suite": name, "cases": [...]}; each case carries a
"kind" that selects its checker.  All checking is exact; a case fails on
the first grid point where the identity breaks, and the report says
where.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .hyperterm import HyperTerm, LinearForm, eval_term, parse_linear_form, parse_term
from .series import check_convolution_11897, check_shifted_central_identity
from .verify import (
    SequenceSpec,
    binomial_column_sequence,
    binomial_row_sequence,
    catalan_sequence,
    check_binomial_transform,
    check_lower_triangle_identity,
    check_transform_power_identity,
    oracle_sum,
    seeded_random_sequences,
)

BUNDLED_SUITE = "paper.suite"


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    ok: bool
    detail: str
    elapsed: float


def load_suite(path: str) -> dict:
    """Load a manifest from a file path, falling back to the bundled
    resource of the same basename when no such file exists."""
    p = Path(path)
    if p.is_file():
        with open(p, "r", encoding="utf-8") as fh:
            return json.load(fh)
    name = p.name
    res = resources.files("telesum").joinpath("data").joinpath(name)
    if res.is_file():
        return json.loads(res.read_text(encoding="utf-8"))
    raise FileNotFoundError(f"no suite file {path!r} and no bundled suite named {name!r}")


def bundled_suite() -> dict:
    return load_suite(BUNDLED_SUITE)


# ---------------------------------------------------------------------------
# grids and side evaluation


def _grid_points(grid: dict) -> list[dict]:
    names = list(grid)
    ranges = [range(int(lo), int(hi) + 1) for lo, hi in (grid[v] for v in names)]
    return [dict(zip(names, combo)) for combo in itertools.product(*ranges)]


def _bound_value(text: str, point: dict) -> int:
    lf = parse_linear_form(text)
    params = {v: point[v] for v in point if v != "n"}
    return lf.bind(params).evaluate(point.get("n", 0), 0)


def _side_value(side: list[dict], point: dict) -> Fraction:
    n = point.get("n", 0)
    params = {v: point[v] for v in point if v != "n"}
    total = Fraction(0)
    for comp in side:
        if "sum" in comp:
            term = parse_term(comp["sum"], params)
            lo = _bound_value(comp["from"], point)
            hi = _bound_value(comp["to"], point)
            total += oracle_sum(term, n, lo, hi)
        elif "term" in comp:
            term = parse_term(comp["term"], params)
            total += eval_term(term, n, 0)
        else:
            raise ValueError(f"unknown side component {comp!r}")
    return total


def _check_sum_identity(case: dict) -> str | None:
    sides = case["sides"]
    if len(sides) < 2:
        raise ValueError(f"case {case.get('id')}: need at least two sides")
    for point in _grid_points(case["grid"]):
        values = [_side_value(side, point) for side in sides]
        first = values[0]
        for i, v in enumerate(values[1:], start=2):
            if v != first:
                at = ", ".join(f"{k}={point[k]}" for k in point)
                return f"side 1 gives {first} but side {i} gives {v} at {at}"
    return None


# ---------------------------------------------------------------------------
# sequence transforms


def _sequences(specs: list[str], length: int) -> list[SequenceSpec]:
    out: list[SequenceSpec] = []
    for spec in specs:
        head, *rest = spec.split(":")
        if head == "catalan":
            out.append(catalan_sequence(length))
        elif head == "binom_row":
            out.append(binomial_row_sequence(int(rest[0]), length))
        elif head == "binom_column":
            out.append(binomial_column_sequence(int(rest[0]), length))
        elif head == "random":
            count, seed = int(rest[0]), int(rest[1])
            out.extend(seeded_random_sequences(count, length, seed))
        else:
            raise ValueError(f"unknown sequence spec {spec!r}")
    return out


def _transform_grid(grid: dict) -> list[tuple[int, int]]:
    if "total_max" in grid:
        t = int(grid["total_max"])
        return [(n, m) for n in range(t + 1) for m in range(t + 1 - n)]
    n_max, m_max = int(grid["n_max"]), int(grid["m_max"])
    return [(n, m) for n in range(n_max + 1) for m in range(m_max + 1)]


def _check_transform_identity(case: dict) -> str | None:
    points = _transform_grid(case["grid"])
    length = max(n + m for n, m in points) + 1
    for seq in _sequences(case["sequences"], length):
        for n, m in points:
            if not check_binomial_transform(seq, n, m):
                return f"transform fails for sequence {seq.name} at n={n}, m={m}"
    return None


def _check_lower_triangle(case: dict) -> str | None:
    for n in range(int(case["n_max"]) + 1):
        if not check_lower_triangle_identity(n):
            return f"lower-triangle identity fails at n={n}"
    return None


def _check_power_identity(case: dict) -> str | None:
    for n in range(int(case["n_max"]) + 1):
        for m in range(int(case["m_max"]) + 1):
            if not check_transform_power_identity(n, m):
                return f"power identity fails at n={n}, m={m}"
    return None


_SERIES_CHECKS = {
    "shifted_central": check_shifted_central_identity,
    "catalan_convolution": check_convolution_11897,
}


def _check_convolution_identity(case: dict) -> str | None:
    order = int(case.get("order", 64))
    for name in case["checks"]:
        try:
            fn = _SERIES_CHECKS[name]
        except KeyError:
            raise ValueError(f"unknown series check {name!r}") from None
        if not fn(order):
            return f"series check {name} fails at order {order}"
    return None


_CHECKERS = {
    "sum_identity": _check_sum_identity,
    "transform_identity": _check_transform_identity,
    "lower_triangle_identity": _check_lower_triangle,
    "power_identity": _check_power_identity,
    "convolution_identity": _check_convolution_identity,
}


def run_case(case: dict) -> CaseResult:
    case_id = case.get("id", "<unnamed>")
    kind = case.get("kind")
    checker = _CHECKERS.get(kind)
    start = time.monotonic()
    if checker is None:
        return CaseResult(case_id, False, f"unknown case kind {kind!r}", 0.0)
    try:
        detail = checker(case)
    except Exception as exc:  # a broken case is a failing case, with the cause
        return CaseResult(
            case_id, False, f"error: {exc}", time.monotonic() - start
        )
    elapsed = time.monotonic() - start
    if detail is None:
        return CaseResult(case_id, True, "", elapsed)
    return CaseResult(case_id, False, detail, elapsed)


def run_identity_suite(manifest: dict) -> list[CaseResult]:
    return [run_case(case) for case in manifest["cases"]]


def report_lines(results: list[CaseResult]) -> list[str]:
    lines = []
    for r in results:
        if r.ok:
            lines.append(f"PASS {r.case_id}")
        else:
            lines.append(f"FAIL {r.case_id}: {r.detail}")
    passed = sum(1 for r in results if r.ok)
    lines.append(f"{passed}/{len(results)} cases pass")
    return lines


# ---------------------------------------------------------------------------
# mutation catalog: deliberately broken variants that the runner must reject


def mutation_catalog() -> list[dict]:
    """Cases that are each false; the suite runner must fail every one.

    They twist the bundled identities in typical wrong-by-one ways: a
    scaled right side, a clipped summation range, a shifted denominator,
    a dropped squaring, mismatched upper limits, and so on.
    """
    return [
        {
            "id": "mut-scaled-rhs",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)", "from": "0", "to": "n"}],
                [{"term": "3*binom(2n+2,n)"}],
            ],
        },
        {
            "id": "mut-clipped-range",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)", "from": "0", "to": "n-1"}],
                [{"term": "2*binom(2n+2,n)"}],
            ],
        },
        {
            "id": "mut-shifted-denominator",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+2)", "from": "0", "to": "n"}],
                [{"term": "2*binom(2n+2,n)"}],
            ],
        },
        {
            "id": "mut-dropped-doubling",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(2n,k)*binom(2n+1,k)", "from": "0", "to": "n"}],
                [{"term": "binom(4n+1,2n)"}, {"term": "binom(2n,n)^2"}],
            ],
        },
        {
            "id": "mut-unsquared-closed-form",
            "kind": "sum_identity",
            "grid": {"n": [1, 10]},
            "sides": [
                [{"sum": "2*binom(2n,k)*binom(2n+1,k)", "from": "0", "to": "n"}],
                [{"term": "binom(4n+1,2n)"}, {"term": "binom(2n,n)"}],
            ],
        },
        {
            "id": "mut-overlapping-split",
            "kind": "sum_identity",
            "grid": {"n": [1, 10]},
            "sides": [
                [{"sum": "binom(2n,k)*binom(2n+1,k)", "from": "0", "to": "n"},
                 {"sum": "binom(2n,k-1)*binom(2n+1,k)", "from": "n", "to": "2n+1"}],
                [{"term": "binom(4n+1,2n)"}, {"term": "binom(2n,n)^2"}],
            ],
        },
        {
            "id": "mut-swapped-upper-limits",
            "kind": "sum_identity",
            "grid": {"n": [1, 6], "r": [1, 4], "s": [1, 4]},
            "sides": [
                [{"sum": "binom(n+r,n)*binom(r+k,r-1)*binom(n+k,n)", "from": "0", "to": "r-1"}],
                [{"sum": "binom(n+s,n)*binom(s+k,s-1)*binom(n+k,n)", "from": "0", "to": "r-1"}],
            ],
        },
        {
            "id": "mut-squared-for-cubed",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(n,k)^2*binom(2k,n)", "from": "0", "to": "n"}],
                [{"sum": "binom(n,k)^2", "from": "0", "to": "n"}],
            ],
        },
        {
            "id": "mut-shifted-convolution-target",
            "kind": "sum_identity",
            "grid": {"n": [0, 10]},
            "sides": [
                [{"sum": "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)", "from": "0", "to": "n"}],
                [{"term": "2*binom(2n+2,n+1)"}],
            ],
        },
        {
            "id": "mut-bumped-vandermonde",
            "kind": "sum_identity",
            "grid": {"n": [0, 8], "m": [0, 8]},
            "sides": [
                [{"sum": "binom(n,k)*binom(m,n-k)", "from": "0", "to": "n"}],
                [{"term": "binom(n+m,n+1)"}],
            ],
        },
    ]
