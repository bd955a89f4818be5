"""Proper hypergeometric terms: parsing, printing, evaluation, shift quotients.

A term is a product of binomial/factorial/power factors with integer-linear
arguments in (n, k) and optional auxiliary parameter symbols, times a
rational prefactor in the Q(n)[k] tower.  Shift quotients F(.., var+1)/F
are exact rational functions, which is what the Gosper and Zeilberger
layers consume.

Evaluation conventions (fixed, and relied on by every oracle):

* ``binom(a, b) = 0`` for ``b < 0``, and for ``a >= 0, b > a``;
* ``binom(a, b) = (-1)^b * binom(b-a-1, b)`` for ``a < 0, b >= 0``;
* a factorial at a negative integer makes the whole term 0;
* a vanishing prefactor denominator is a pole error naming the point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .polynomials import (
    POLY_K,
    QN,
    Polynomial,
    RationalFunction,
    eval_qnk,
    integer_qnk_pair,
    n_poly,
    shift_in_n,
)

ParamBinding = Mapping[str, int]


class TermError(Exception):
    pass


class ParseError(TermError):
    def __init__(self, message: str, pos: int, text: str = "") -> None:
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
        self.text = text


class UnboundParameterError(TermError):
    pass


class PoleError(TermError):
    def __init__(self, message: str, point: tuple[int, int] | None = None) -> None:
        super().__init__(message)
        self.point = point


class DegenerateSampleError(TermError):
    pass


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinearForm:
    """Integer-linear expression alpha*n + beta*k + gamma plus parameter terms."""

    coeff_n: int = 0
    coeff_k: int = 0
    constant: int = 0
    params: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def make(coeff_n=0, coeff_k=0, constant=0, params: Mapping[str, int] | None = None):
        items = tuple(sorted((s, c) for s, c in (params or {}).items() if c))
        return LinearForm(coeff_n, coeff_k, constant, items)

    def coeff(self, var: str) -> int:
        if var == "n":
            return self.coeff_n
        if var == "k":
            return self.coeff_k
        return dict(self.params).get(var, 0)

    def has_params(self) -> bool:
        return bool(self.params)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        merged = dict(self.params)
        for s, c in other.params:
            merged[s] = merged.get(s, 0) + c
        return LinearForm.make(
            self.coeff_n + other.coeff_n,
            self.coeff_k + other.coeff_k,
            self.constant + other.constant,
            merged,
        )

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + other.scale(-1)

    def scale(self, c: int) -> "LinearForm":
        return LinearForm.make(
            self.coeff_n * c,
            self.coeff_k * c,
            self.constant * c,
            {s: v * c for s, v in self.params},
        )

    def bind(self, binding: ParamBinding) -> "LinearForm":
        const = self.constant
        left = {}
        for s, c in self.params:
            if s in binding:
                const += c * int(binding[s])
            else:
                left[s] = c
        return LinearForm.make(self.coeff_n, self.coeff_k, const, left)

    def subst_k(self, value: int) -> "LinearForm":
        return LinearForm.make(
            self.coeff_n, 0, self.constant + self.coeff_k * value, dict(self.params)
        )

    def evaluate(self, n: int, k: int) -> int:
        if self.params:
            missing = ", ".join(s for s, _ in self.params)
            raise UnboundParameterError(f"unbound parameter(s): {missing}")
        return self.coeff_n * n + self.coeff_k * k + self.constant

    def to_kpoly(self) -> Polynomial:
        """As a polynomial in k over Q(n); parameters must already be bound."""
        if self.params:
            missing = ", ".join(s for s, _ in self.params)
            raise UnboundParameterError(f"unbound parameter(s): {missing}")
        const = QN.coerce(n_poly(self.constant, self.coeff_n))
        return Polynomial("k", QN, (const, QN.from_int(self.coeff_k)))

    def sort_key(self):
        return (self.coeff_n, self.coeff_k, self.params, self.constant)

    def to_string(self) -> str:
        pieces: list[tuple[int, str]] = []
        if self.coeff_n:
            pieces.append((self.coeff_n, "n"))
        if self.coeff_k:
            pieces.append((self.coeff_k, "k"))
        for s, c in self.params:
            pieces.append((c, s))
        if self.constant or not pieces:
            pieces.append((self.constant, ""))
        out = []
        for c, sym in pieces:
            if sym and c == 1:
                body = sym
            elif sym and c == -1:
                body = f"-{sym}"
            elif sym:
                body = f"{c}{sym}"
            else:
                body = str(c)
            if out and not body.startswith("-"):
                out.append("+" + body)
            else:
                out.append(body)
        return "".join(out)


# ---------------------------------------------------------------------------
# factors


@dataclass(frozen=True)
class BinomialFactor:
    top: LinearForm
    bottom: LinearForm

    def sort_key(self):
        return (0, self.top.sort_key(), self.bottom.sort_key())

    def to_string(self) -> str:
        return f"binom({self.top.to_string()},{self.bottom.to_string()})"


@dataclass(frozen=True)
class FactorialFactor:
    arg: LinearForm

    def sort_key(self):
        return (1, self.arg.sort_key(), ())

    def to_string(self) -> str:
        return f"fact({self.arg.to_string()})"


@dataclass(frozen=True)
class PowerFactor:
    base: Fraction
    exponent: LinearForm

    def sort_key(self):
        return (2, (self.base.numerator, self.base.denominator), self.exponent.sort_key())

    def to_string(self) -> str:
        if self.base.denominator == 1:
            base = str(self.base.numerator)
        else:
            base = f"({self.base.numerator}/{self.base.denominator})"
        return f"{base}^({self.exponent.to_string()})"


Factor = BinomialFactor | FactorialFactor | PowerFactor


def _bind_factor(f: Factor, binding: ParamBinding) -> Factor:
    if isinstance(f, BinomialFactor):
        return BinomialFactor(f.top.bind(binding), f.bottom.bind(binding))
    if isinstance(f, FactorialFactor):
        return FactorialFactor(f.arg.bind(binding))
    return PowerFactor(f.base, f.exponent.bind(binding))


def _factor_linforms(f: Factor) -> list[LinearForm]:
    if isinstance(f, BinomialFactor):
        return [f.top, f.bottom]
    if isinstance(f, FactorialFactor):
        return [f.arg]
    return [f.exponent]


# ---------------------------------------------------------------------------
# the term itself


class HyperTerm:
    """Canonical product of factors with a reduced rational prefactor."""

    __slots__ = ("factors", "prefactor")

    def __init__(self, factors: Iterable[tuple[Factor, int]], prefactor: RationalFunction):
        merged: dict[Factor, int] = {}
        for f, e in factors:
            merged[f] = merged.get(f, 0) + e
        canon = tuple(
            (f, e)
            for f, e in sorted(merged.items(), key=lambda fe: fe[0].sort_key())
            if e != 0
        )
        object.__setattr__(self, "factors", canon)
        object.__setattr__(self, "prefactor", prefactor)

    def __setattr__(self, name, value):
        raise AttributeError("HyperTerm is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HyperTerm)
            and self.factors == other.factors
            and self.prefactor == other.prefactor
        )

    def __hash__(self) -> int:
        return hash((self.factors, self.prefactor))

    def __repr__(self) -> str:
        return f"HyperTerm({term_to_string(self)!r})"

    def has_params(self) -> bool:
        return any(lf.has_params() for f, _ in self.factors for lf in _factor_linforms(f))

    def bind(self, binding: ParamBinding | None) -> "HyperTerm":
        if not binding:
            return self
        for value in binding.values():
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"parameter bindings must be integers >= 0, got {value!r}")
        return HyperTerm(
            [(_bind_factor(f, binding), e) for f, e in self.factors], self.prefactor
        )

    def require_bound(self) -> None:
        if self.has_params():
            syms = sorted(
                {
                    s
                    for f, _ in self.factors
                    for lf in _factor_linforms(f)
                    for s, _c in lf.params
                }
            )
            raise UnboundParameterError(f"unbound parameter(s): {', '.join(syms)}")

    def scale_rational(self, multiplier: RationalFunction) -> "HyperTerm":
        """The term multiplied by a rational function of (n, k)."""
        return HyperTerm(self.factors, self.prefactor * multiplier)

    def subst_k(self, value: int) -> "HyperTerm":
        """Substitute a concrete integer for k, leaving a term in n alone."""
        factors = []
        for f, e in self.factors:
            if isinstance(f, BinomialFactor):
                nf = BinomialFactor(f.top.subst_k(value), f.bottom.subst_k(value))
            elif isinstance(f, FactorialFactor):
                nf = FactorialFactor(f.arg.subst_k(value))
            else:
                nf = PowerFactor(f.base, f.exponent.subst_k(value))
            factors.append((nf, e))
        num = self.prefactor.num.evaluate(QN.from_int(value))
        den = self.prefactor.den.evaluate(QN.from_int(value))
        if not den:
            raise PoleError(f"prefactor pole on substituting k = {value}")
        pref = RationalFunction(
            Polynomial("k", QN, (num / den,)), POLY_K.one()
        )
        return HyperTerm(factors, pref)


# ---------------------------------------------------------------------------
# evaluation


def binomial_value(a: int, b: int) -> int:
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b) if b <= a else 0
    v = math.comb(b - a - 1, b)
    return -v if b % 2 else v


def eval_term(
    term: HyperTerm, n: int, k: int, binding: ParamBinding | None = None
) -> Fraction:
    t = term.bind(binding)
    t.require_bound()
    try:
        value = eval_qnk(t.prefactor, n, k)
    except ZeroDivisionError:
        raise PoleError(
            f"prefactor denominator vanishes at (n, k) = ({n}, {k})", (n, k)
        ) from None
    for f, e in t.factors:
        if isinstance(f, BinomialFactor):
            base = Fraction(binomial_value(f.top.evaluate(n, k), f.bottom.evaluate(n, k)))
        elif isinstance(f, FactorialFactor):
            arg = f.arg.evaluate(n, k)
            if arg < 0:
                return Fraction(0)
            base = Fraction(math.factorial(arg))
        else:
            exp = f.exponent.evaluate(n, k)
            if f.base == 0 and exp < 0:
                raise PoleError(f"zero base with negative exponent at (n, k) = ({n}, {k})", (n, k))
            base = f.base**exp
        if base == 0 and e < 0:
            raise PoleError(
                f"zero factor {f.to_string()} with negative exponent at (n, k) = ({n}, {k})",
                (n, k),
            )
        value *= base**e
    return value


# ---------------------------------------------------------------------------
# shift quotients


def _falling_product(arg: Polynomial, delta: int) -> tuple[Polynomial, Polynomial]:
    """fact(L + delta)/fact(L) as a (numerator, denominator) pair of k-polynomials."""
    num = POLY_K.one()
    den = POLY_K.one()
    if delta >= 0:
        for i in range(1, delta + 1):
            num = num * (arg + i)
    else:
        for i in range(0, -delta):
            den = den * (arg - i)
    return num, den


def _factor_quotient(f: Factor, var: str) -> tuple[Polynomial, Polynomial]:
    if isinstance(f, PowerFactor):
        delta = f.exponent.coeff(var)
        val = QN.coerce(f.base**delta)
        return POLY_K.constant(val), POLY_K.one()
    if isinstance(f, FactorialFactor):
        return _falling_product(f.arg.to_kpoly(), f.arg.coeff(var))
    top, bottom = f.top, f.bottom
    diff = top - bottom
    n1, d1 = _falling_product(top.to_kpoly(), top.coeff(var))
    n2, d2 = _falling_product(bottom.to_kpoly(), bottom.coeff(var))
    n3, d3 = _falling_product(diff.to_kpoly(), diff.coeff(var))
    return n1 * d2 * d3, d1 * n2 * n3


def shift_quotient(
    term: HyperTerm, var: str, binding: ParamBinding | None = None
) -> RationalFunction:
    """Exact rational function T(.., var+1, ..)/T as an element of Q(n)(k)."""
    if var not in ("n", "k"):
        raise ValueError(f"shift variable must be n or k, not {var!r}")
    t = term.bind(binding)
    t.require_bound()
    if not t.prefactor:
        raise ValueError("shift quotient of the zero term")
    num = POLY_K.one()
    den = POLY_K.one()
    for f, e in t.factors:
        qn_, qd = _factor_quotient(f, var)
        if e >= 0:
            num = num * qn_**e
            den = den * qd**e
        else:
            num = num * qd ** (-e)
            den = den * qn_ ** (-e)
    pref = t.prefactor
    shifted = pref.shift(1) if var == "k" else shift_in_n(pref, 1)
    num = num * shifted.num * pref.den
    den = den * shifted.den * pref.num
    return RationalFunction(num, den)


def ratio_rational(t1: HyperTerm, t2: HyperTerm) -> RationalFunction:
    """t1/t2 as a rational function; factor parts must cancel structurally."""
    merged: dict[Factor, int] = dict()
    for f, e in t1.factors:
        merged[f] = merged.get(f, 0) + e
    for f, e in t2.factors:
        merged[f] = merged.get(f, 0) - e
    leftovers = [f for f, e in merged.items() if e != 0]
    if leftovers:
        names = ", ".join(f.to_string() for f in leftovers)
        raise ValueError(f"terms differ by non-rational factors: {names}")
    if not t2.prefactor:
        raise ZeroDivisionError("ratio against the zero term")
    return t1.prefactor / t2.prefactor


def term_ratio_is_one(
    t1: HyperTerm,
    t2: HyperTerm,
    binding: ParamBinding | None = None,
    sample_limit: int = 400,
) -> bool:
    """True iff t1/t2 is identically 1.

    Both shift quotients of the ratio must be 1 and the values must agree
    at one sample point where neither term vanishes or poles; by the usual
    telescoping argument that pins the ratio everywhere.
    """
    a = t1.bind(binding)
    b = t2.bind(binding)
    a.require_bound()
    b.require_bound()
    if shift_quotient(a, "k") != shift_quotient(b, "k"):
        return False
    if shift_quotient(a, "n") != shift_quotient(b, "n"):
        return False
    tried = 0
    for total in range(0, 64):
        for k0 in range(0, total + 1):
            n0 = total - k0
            tried += 1
            if tried > sample_limit:
                break
            try:
                vb = eval_term(b, n0, k0)
                if vb == 0:
                    continue
                va = eval_term(a, n0, k0)
            except PoleError:
                continue
            return va == vb
    raise DegenerateSampleError(
        f"no usable sample point among {sample_limit} candidates"
    )


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>binom|fact)\b|(?P<int>\d+)|(?P<sym>[a-z])|(?P<op>[()^*/+,-]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        for kind in ("name", "int", "sym", "op"):
            val = m.group(kind)
            if val is not None:
                out.append((kind, val, m.start(kind)))
                break
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """Recursive-descent parser for the term grammar."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos, self.text)
        self.next()

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    # atoms are tagged tuples consumed by _assemble below

    def parse_term(self) -> tuple[list, list]:
        num = self.parse_product()
        den: list = []
        kind, val, _ = self.peek()
        if kind == "op" and val == "/":
            self.next()
            den = self.parse_product()
        if self.peek()[0] != "end":
            self.fail("trailing input after term")
        return num, den

    def parse_product(self) -> list:
        atoms = [self.parse_atom()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                atoms.append(self.parse_atom())
            elif kind in ("name", "int", "sym") or (kind == "op" and val == "("):
                atoms.append(self.parse_atom())
            else:
                break
        return atoms

    def parse_atom(self):
        kind, val, pos = self.peek()
        if kind == "name":
            self.next()
            self.expect_op("(")
            first = self.parse_linear()
            if val == "binom":
                self.expect_op(",")
                second = self.parse_linear()
                self.expect_op(")")
                return ("binom", first, second, self.parse_int_power())
            self.expect_op(")")
            return ("fact", first, self.parse_int_power())
        if kind == "int":
            self.next()
            base = int(val)
            nk, nv, npos = self.peek()
            if nk == "op" and nv == "^":
                self.next()
                kind2, val2, pos2 = self.peek()
                if kind2 == "int":
                    self.next()
                    return ("const_pow", base, int(val2))
                if kind2 == "op" and val2 == "-":
                    self.next()
                    kind3, val3, pos3 = self.peek()
                    if kind3 != "int":
                        raise ParseError("expected integer exponent", pos3, self.text)
                    self.next()
                    return ("const_pow", base, -int(val3))
                if kind2 == "op" and val2 == "(":
                    self.next()
                    lin = self.parse_linear()
                    self.expect_op(")")
                    return ("power", base, lin)
                if kind2 == "sym":
                    self.next()
                    return ("power", base, LinearForm.make(**_single_symbol(val2)))
                raise ParseError("expected exponent", pos2, self.text)
            return ("const", base)
        if kind == "sym" or (kind == "op" and val == "("):
            ast = self.parse_poly_primary()
            exp = 1
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "^":
                self.next()
                kind2, val2, pos2 = self.peek()
                if kind2 != "int":
                    raise ParseError(
                        "only integer bases may carry symbolic exponents", pos2, self.text
                    )
                self.next()
                exp = int(val2)
            return ("poly", ast, exp)
        raise ParseError("expected a factor", pos, self.text)

    def parse_int_power(self) -> int:
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, val2, pos2 = self.peek()
            sign = 1
            if kind2 == "op" and val2 == "-":
                self.next()
                sign = -1
                kind2, val2, pos2 = self.peek()
            if kind2 != "int":
                raise ParseError("expected integer exponent", pos2, self.text)
            self.next()
            return sign * int(val2)
        return 1

    # -- linear forms ---------------------------------------------------

    def parse_linear(self) -> LinearForm:
        total = LinearForm.make()
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        while True:
            total = total + self.parse_linear_term().scale(sign)
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                sign = -1 if val == "-" else 1
                continue
            return total

    def parse_linear_term(self) -> LinearForm:
        kind, val, pos = self.peek()
        if kind == "int":
            self.next()
            coeff = int(val)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "*":
                save = self.i
                self.next()
                nk, nv, _ = self.peek()
                if nk != "sym":
                    self.i = save
                    return LinearForm.make(constant=coeff)
            if self.peek()[0] == "sym":
                sym = self.next()[1]
                return LinearForm.make(**_single_symbol(sym, coeff))
            return LinearForm.make(constant=coeff)
        if kind == "sym":
            self.next()
            return LinearForm.make(**_single_symbol(val))
        raise ParseError("expected a linear term", pos, self.text)

    # -- polynomial expressions ----------------------------------------

    def parse_poly_primary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.next()
            ast = self.parse_poly_expr()
            self.expect_op(")")
            return ast
        if kind == "sym":
            self.next()
            return ("sym", val)
        if kind == "int":
            self.next()
            return ("lit", int(val))
        raise ParseError("expected a polynomial", pos, self.text)

    def parse_poly_expr(self):
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.next()
            negate = True
        ast = self.parse_poly_term()
        if negate:
            ast = ("neg", ast)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.parse_poly_term()
                ast = ("add", ast, rhs) if val == "+" else ("sub", ast, rhs)
            else:
                return ast

    def parse_poly_term(self):
        ast = self.parse_poly_factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                ast = ("mul", ast, self.parse_poly_factor())
            elif kind in ("sym", "int") or (kind == "op" and val == "("):
                ast = ("mul", ast, self.parse_poly_factor())
            else:
                return ast

    def parse_poly_factor(self):
        base = self.parse_poly_primary()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, val2, pos2 = self.peek()
            if kind2 != "int":
                raise ParseError("expected integer exponent", pos2, self.text)
            self.next()
            return ("pow", base, int(val2))
        return base


def _single_symbol(sym: str, coeff: int = 1) -> dict:
    if sym == "n":
        return {"coeff_n": coeff}
    if sym == "k":
        return {"coeff_k": coeff}
    return {"params": {sym: coeff}}


def _poly_eval(ast, binding: ParamBinding | None) -> Polynomial:
    """Evaluate a polynomial AST into Q(n)[k]; parameters need a binding."""
    tag = ast[0]
    if tag == "lit":
        return POLY_K.from_int(ast[1])
    if tag == "sym":
        sym = ast[1]
        if sym == "k":
            return POLY_K.gen()
        if sym == "n":
            return POLY_K.constant(QN.coerce(n_poly(0, 1)))
        if binding is not None and sym in binding:
            return POLY_K.from_int(int(binding[sym]))
        raise UnboundParameterError(
            f"parameter {sym!r} in a prefactor needs a concrete binding"
        )
    if tag == "neg":
        return -_poly_eval(ast[1], binding)
    if tag == "add":
        return _poly_eval(ast[1], binding) + _poly_eval(ast[2], binding)
    if tag == "sub":
        return _poly_eval(ast[1], binding) - _poly_eval(ast[2], binding)
    if tag == "mul":
        return _poly_eval(ast[1], binding) * _poly_eval(ast[2], binding)
    if tag == "pow":
        return _poly_eval(ast[1], binding) ** ast[2]
    raise AssertionError(f"unknown poly AST node {tag!r}")


def parse_linear_form(text: str) -> LinearForm:
    """Parse an integer-linear expression in n and parameter symbols."""
    parser = _Parser(text)
    lf = parser.parse_linear()
    if parser.peek()[0] != "end":
        parser.fail("trailing input after linear form")
    return lf


def parse_term(text: str, binding: ParamBinding | None = None) -> HyperTerm:
    """Parse the ASCII grammar into a canonical HyperTerm.

    With a binding, parameter symbols are substituted immediately (and may
    then appear inside rational prefactors); without one they stay symbolic
    and are restricted to binomial/factorial/power arguments.
    """
    parser = _Parser(text)
    num_atoms, den_atoms = parser.parse_term()
    factors: list[tuple[Factor, int]] = []
    pref_num = POLY_K.one()
    pref_den = POLY_K.one()

    def absorb(atoms: list, sign: int) -> None:
        nonlocal pref_num, pref_den
        for atom in atoms:
            tag = atom[0]
            if tag == "binom":
                _, top, bottom, e = atom
                if binding:
                    top, bottom = top.bind(binding), bottom.bind(binding)
                factors.append((BinomialFactor(top, bottom), sign * e))
            elif tag == "fact":
                _, arg, e = atom
                if binding:
                    arg = arg.bind(binding)
                factors.append((FactorialFactor(arg), sign * e))
            elif tag == "power":
                _, base, lin = atom
                if binding:
                    lin = lin.bind(binding)
                factors.append((PowerFactor(Fraction(base), lin), sign))
            elif tag == "const":
                value = Fraction(atom[1])
                if sign > 0:
                    pref_num = pref_num.mul_ground(QN.coerce(value))
                else:
                    pref_den = pref_den.mul_ground(QN.coerce(value))
            elif tag == "const_pow":
                value = Fraction(atom[1]) ** atom[2]
                if sign > 0:
                    pref_num = pref_num.mul_ground(QN.coerce(value))
                else:
                    pref_den = pref_den.mul_ground(QN.coerce(value))
            else:
                _, ast, e = atom
                p = _poly_eval(ast, binding) ** e
                if sign > 0:
                    pref_num = pref_num * p
                else:
                    pref_den = pref_den * p

    absorb(num_atoms, 1)
    absorb(den_atoms, -1)
    if not pref_den:
        raise ParseError("prefactor denominator is identically zero", 0, text)
    return HyperTerm(factors, RationalFunction(pref_num, pref_den))


# ---------------------------------------------------------------------------
# printing


def _monomial_string(coeff: int, n_exp: int, k_exp: int) -> str:
    parts = []
    if abs(coeff) != 1 or (n_exp == 0 and k_exp == 0):
        parts.append(str(abs(coeff)))
    if n_exp:
        parts.append("n" if n_exp == 1 else f"n^{n_exp}")
    if k_exp:
        parts.append("k" if k_exp == 1 else f"k^{k_exp}")
    return "*".join(parts)


def _bivariate_string(p: Polynomial) -> str:
    """Render a k-polynomial with Q[n] coefficients as parseable text."""
    terms = []
    for k_exp in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeff(k_exp)
        if not c:
            continue
        for n_exp in range(len(c.coeffs) - 1, -1, -1):
            v = c.coeff(n_exp)
            if not v:
                continue
            terms.append((int(v), n_exp, k_exp))
    if not terms:
        return "0"
    out = []
    for coeff, n_exp, k_exp in terms:
        body = _monomial_string(coeff, n_exp, k_exp)
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(("+" if coeff > 0 else "-") + body)
    return "".join(out)


def term_to_string(term: HyperTerm) -> str:
    num_parts: list[str] = []
    den_parts: list[str] = []
    for f, e in term.factors:
        target = num_parts if e > 0 else den_parts
        mag = abs(e)
        target.append(f.to_string() + (f"^{mag}" if mag != 1 else ""))
    pnum, pden = integer_qnk_pair(term.prefactor)
    ns = _bivariate_string(pnum)
    ds = _bivariate_string(pden)
    if ns != "1" or not num_parts:
        num_parts.append(ns if ns.lstrip("-").isdigit() and "-" not in ns else f"({ns})")
    if ds != "1":
        den_parts.append(ds if ds.isdigit() else f"({ds})")
    text = "*".join(num_parts)
    if den_parts:
        text += "/" + "*".join(den_parts)
    return text
