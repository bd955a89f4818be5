"""Command-line front end.

Exit codes: 0 success, 1 usage or parse problems, 2 not summable,
3 a search bound was exhausted, 4 a verification failure.  Output is
deterministic for identical inputs; --machine switches to JSON lines
with every integer rendered as a decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .gosper import NotSummableError, gosper_antidifference
from .hyperterm import (
    DegenerateSampleError,
    ParseError,
    PoleError,
    UnboundParameterError,
    parse_linear_form,
    parse_term,
    _Parser as _TermParser,
    _poly_eval,
)
from .polynomials import POLY_N, Polynomial
from .series import known_gf
from .suite import load_suite, report_lines, run_identity_suite
from .verify import WZPair, VerificationError, oracle_sum
from .zeilberger import (
    BoundaryCheckError,
    NoRecurrenceFound,
    creative_telescope,
    natural_sum,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_SUMMABLE = 2
EXIT_SEARCH_EXHAUSTED = 3
EXIT_VERIFICATION = 4


class _UsageError(Exception):
    pass


class _Argv(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_params(pairs: list[str]) -> dict[str, int]:
    binding = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name or not value.lstrip("-").isdigit():
            raise _UsageError(f"--param expects NAME=INT, got {pair!r}")
        if len(name) != 1 or not name.islower() or name in ("n", "k"):
            raise _UsageError(f"parameter must be a single letter other than n, k: {name!r}")
        v = int(value)
        if v < 0:
            raise _UsageError(f"parameter {name} must be >= 0, got {v}")
        binding[name] = v
    return binding


def _parse_n_polynomial(text: str, binding: dict[str, int]) -> Polynomial:
    parser = _TermParser(f"({text})")
    ast = parser.parse_poly_primary()
    if parser.peek()[0] != "end":
        parser.fail("trailing input after polynomial")
    p = _poly_eval(ast, binding)
    if p.degree > 0:
        raise _UsageError(f"operator coefficient may not involve k: {text!r}")
    c = p.coeff(0)
    if c.den.degree != 0:
        raise _UsageError(f"operator coefficient must be polynomial in n: {text!r}")
    return c.num


def _stringify(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _emit_machine(record: dict) -> None:
    print(json.dumps(_stringify(record), separators=(", ", ": ")))


def _caret_diagnostic(err: ParseError) -> str:
    lines = [f"parse error: {err}"]
    if err.text:
        lines.append("  " + err.text)
        lines.append("  " + " " * err.pos + "^")
    return "\n".join(lines)


def _cmd_gosper(args) -> int:
    binding = _parse_params(args.param)
    term = parse_term(args.term, binding)
    try:
        cert = gosper_antidifference(term)
    except NotSummableError as exc:
        if args.machine:
            _emit_machine({"status": "not_summable", "reason": exc.reason})
        else:
            print(f"not summable: {exc.reason}")
        return EXIT_NOT_SUMMABLE
    if args.machine:
        record = {"status": "ok", "term": args.term}
        record.update(cert.record())
        _emit_machine(record)
    else:
        print("summable: G(n,k) = R(n,k) * F(n,k) telescopes F")
        print(cert.text())
    return EXIT_OK


def _cmd_zeil(args) -> int:
    binding = _parse_params(args.param)
    term = parse_term(args.term, binding)
    try:
        cert = creative_telescope(term, max_order=args.jmax)
    except NoRecurrenceFound as exc:
        if args.machine:
            _emit_machine({"status": "no_recurrence", "max_order": exc.max_order})
        else:
            print(f"no recurrence found: {exc}")
        return EXIT_SEARCH_EXHAUSTED
    if args.machine:
        record = {"status": "ok", "term": args.term}
        record.update(cert.record())
        _emit_machine(record)
    else:
        print(cert.text())
    return EXIT_OK


def _cmd_wz_check(args) -> int:
    binding = _parse_params(args.param)
    f = parse_term(args.f_term, binding)
    g = parse_term(args.g_term, binding)
    coeffs = tuple(_parse_n_polynomial(c, binding) for c in args.coeff)
    try:
        pair = WZPair(f, g, coeffs)
        ok = pair.check()
    except ValueError as exc:
        if args.machine:
            _emit_machine({"status": "fail", "reason": str(exc)})
        else:
            print(f"WZ check failed: {exc}")
        return EXIT_VERIFICATION
    if ok:
        if args.machine:
            _emit_machine({"status": "ok"})
        else:
            print("WZ pair verified")
        return EXIT_OK
    if args.machine:
        _emit_machine({"status": "fail", "reason": "telescoping identity does not hold"})
    else:
        print("WZ check failed: telescoping identity does not hold")
    return EXIT_VERIFICATION


def _cmd_sum(args) -> int:
    binding = _parse_params(args.param)
    term = parse_term(args.term, binding)
    n_lo, n_hi = args.n
    if n_hi < n_lo:
        raise _UsageError("--n expects LO HI with LO <= HI")
    explicit = args.k_from is not None or args.k_to is not None
    if explicit and (args.k_from is None or args.k_to is None):
        raise _UsageError("--from and --to must be given together")
    rows = []
    for n in range(n_lo, n_hi + 1):
        if explicit:
            lo = parse_linear_form(args.k_from).bind(binding).evaluate(n, 0)
            hi = parse_linear_form(args.k_to).bind(binding).evaluate(n, 0)
            rows.append((n, oracle_sum(term, n, lo, hi)))
        else:
            rows.append((n, natural_sum(term, n)))
    for n, value in rows:
        if args.machine:
            _emit_machine({"n": n, "value": value})
        else:
            print(f"{n}: {value}")
    return EXIT_OK


def _cmd_series(args) -> int:
    gf = known_gf(args.name, args.order, args.family_index)
    for i in range(gf.order + 1):
        if args.machine:
            _emit_machine({"index": i, "value": gf.coeff(i)})
        else:
            print(f"{i}: {gf.coeff(i)}")
    return EXIT_OK


def _cmd_suite(args) -> int:
    try:
        manifest = load_suite(args.path)
    except FileNotFoundError as exc:
        raise _UsageError(str(exc)) from None
    results = run_identity_suite(manifest)
    if args.machine:
        for r in results:
            _emit_machine({"case": r.case_id, "ok": r.ok, "detail": r.detail})
    else:
        for line in report_lines(results):
            print(line)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    top = _Argv(
        prog="telesum",
        description="Exact summation toolkit: indefinite and definite "
        "hypergeometric summation with checkable certificates.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--param",
            action="append",
            default=[],
            metavar="NAME=INT",
            help="bind an auxiliary parameter (repeatable)",
        )
        p.add_argument(
            "--machine", action="store_true", help="JSON-lines output, ints as strings"
        )

    p = sub.add_parser("gosper", help="indefinite summation certificate for a term")
    p.add_argument("term")
    common(p)
    p.set_defaults(fn=_cmd_gosper)

    p = sub.add_parser("zeil", help="telescoping recurrence for a definite sum")
    p.add_argument("term")
    p.add_argument("--jmax", type=int, default=6, help="largest recurrence order tried")
    common(p)
    p.set_defaults(fn=_cmd_zeil)

    p = sub.add_parser("wz-check", help="verify a summand/companion telescoping pair")
    p.add_argument("f_term")
    p.add_argument("g_term")
    p.add_argument(
        "--coeff",
        action="append",
        required=True,
        metavar="POLY",
        help="operator coefficient of w(n+j), in order from j=0 (repeatable)",
    )
    common(p)
    p.set_defaults(fn=_cmd_wz_check)

    p = sub.add_parser("sum", help="exact sums of a term over k for a range of n")
    p.add_argument("term")
    p.add_argument("--n", type=int, nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--from", dest="k_from", metavar="EXPR", help="lower k bound, linear in n")
    p.add_argument("--to", dest="k_to", metavar="EXPR", help="upper k bound, linear in n")
    common(p)
    p.set_defaults(fn=_cmd_sum)

    p = sub.add_parser("series", help="coefficients of a bundled generating function")
    p.add_argument("name")
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--family-index", type=int, default=None)
    common(p)
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("suite", help="run an identity suite manifest")
    p.add_argument("path")
    common(p)
    p.set_defaults(fn=_cmd_suite)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(_caret_diagnostic(exc), file=sys.stderr)
        return EXIT_USAGE
    except UnboundParameterError as exc:
        print(f"usage error: {exc} (use --param NAME=INT)", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"usage error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundaryCheckError, DegenerateSampleError) as exc:
        print(f"search bound exhausted: {exc}", file=sys.stderr)
        return EXIT_SEARCH_EXHAUSTED
    except (PoleError, VerificationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
