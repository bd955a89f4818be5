"""Indefinite hypergeometric summation.

Given a term F(k) with rational shift quotient r(k) = F(k+1)/F(k), decide
whether F has a hypergeometric antidifference G (so G(k+1) - G(k) = F(k))
and produce it with a checkable rational certificate R = G/F when it does.

The pipeline is the classical one: bring r into Gosper normal form
r = z * (a/b) * (c(k+1)/c(k)) with the shift-coprimality property, bound
the degree of a polynomial unknown, and solve

    z * a(k) * x(k+1) - b(k-1) * x(k) = c(k)

by linear algebra.  Then R = b(k-1) * x(k) / c(k), and soundness is the
exact identity R(k+1) * r(k) - R(k) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hyperterm import HyperTerm, ParamBinding, eval_term, shift_quotient, term_to_string
from .linalg import solve_linear_system
from .polynomials import (
    POLY_K,
    QN,
    Polynomial,
    RationalFunction,
    dispersion_set,
    poly_gcd,
)
from .serialize import ratfun_to_record, ratfun_to_text


class NotSummableError(Exception):
    """The term has no hypergeometric antidifference."""

    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class GosperNormalForm:
    """r = z * (a/b) * (c(k+1)/c(k)) with gcd(a(k), b(k+j)) = 1 for j >= 0."""

    z: RationalFunction
    a: Polynomial
    b: Polynomial
    c: Polynomial

    def ratio(self) -> RationalFunction:
        """Reconstruct the shift quotient this normal form came from."""
        return RationalFunction(self.a * self.c.shift(1), self.b * self.c) * self.z


def gosper_normal_form(ratio: RationalFunction) -> GosperNormalForm:
    z = QN.coerce(ratio.num.lc())
    a = ratio.num.monic()
    b = ratio.den
    c = POLY_K.one()
    for j in dispersion_set(a, b):
        if j == 0:
            continue
        g = poly_gcd(a, b.shift(j))
        if g.degree < 1:
            continue
        a = a.exact_div(g)
        b = b.exact_div(g.shift(-j))
        for i in range(1, j + 1):
            c = c * g.shift(-i)
    return GosperNormalForm(z, a, b, c)


def degree_bound(
    z: RationalFunction, a: Polynomial, b: Polynomial, c: Polynomial, rhs_extra: int = 0
) -> int | None:
    """Largest possible degree of x in z*a(k)*x(k+1) - b(k-1)*x(k) = rhs,
    where deg rhs <= deg c + rhs_extra.  None means no degree works."""
    B = b.shift(-1)
    na, nb = int(a.degree), int(B.degree)
    K = int(c.degree) + rhs_extra
    if na != nb or not (z - 1).is_zero():
        d = K - max(na, nb)
        return d if d >= 0 else None
    if na == 0:
        return max(K + 1, 0)
    candidates = []
    if K - na + 1 >= 0:
        candidates.append(K - na + 1)
    theta = B.coeff(na - 1) - a.coeff(na - 1)
    if theta.is_constant():
        tv = theta.constant_value()
        if tv.denominator == 1 and tv >= 0:
            candidates.append(int(tv))
    return max(candidates) if candidates else None


def solve_recurrence_polynomial(
    z: RationalFunction,
    a: Polynomial,
    b: Polynomial,
    rhs: Polynomial,
    degree: int,
) -> Polynomial | None:
    """A polynomial x with z*a(k)*x(k+1) - b(k-1)*x(k) = rhs, deg x <= degree."""
    B = b.shift(-1)
    k = POLY_K.gen()
    cols = []
    for i in range(degree + 1):
        mono = k**i
        cols.append((a * mono.shift(1)).mul_ground(z) - B * mono)
    height = max(
        [int(col.degree) for col in cols if col] + [int(rhs.degree) if rhs else 0]
    ) + 1
    matrix = [[col.coeff(r) for col in cols] for r in range(height)]
    target = [rhs.coeff(r) for r in range(height)]
    sol = solve_linear_system(matrix, target, field=QN)
    if sol is None:
        return None
    return Polynomial("k", QN, tuple(sol))


@dataclass(frozen=True)
class GosperCertificate:
    """Antidifference certificate: G = R * F satisfies G(k+1) - G(k) = F(k)."""

    term: HyperTerm
    ratio: RationalFunction
    normal_form: GosperNormalForm
    x: Polynomial
    certificate: RationalFunction

    def antidifference(self) -> HyperTerm:
        return self.term.scale_rational(self.certificate)

    def check(self) -> bool:
        """Exact soundness: R(k+1) * r(k) - R(k) = 1 in Q(n)(k)."""
        lhs = self.certificate.shift(1) * self.ratio - self.certificate
        return lhs.is_one()

    def text(self) -> str:
        return f"R(n,k) = {ratfun_to_text(self.certificate)}"

    def record(self) -> dict:
        nf = self.normal_form
        return {
            "x": ratfun_to_record(RationalFunction(self.x)),
            "a": ratfun_to_record(RationalFunction(nf.a)),
            "b": ratfun_to_record(RationalFunction(nf.b)),
            "c": ratfun_to_record(RationalFunction(nf.c)),
            "z": ratfun_to_record(RationalFunction(POLY_K.constant(nf.z))),
            "R": ratfun_to_record(self.certificate),
        }


def gosper_antidifference(
    term: HyperTerm, binding: ParamBinding | None = None
) -> GosperCertificate:
    """Decide indefinite summability of the term; raises NotSummableError."""
    t = term.bind(binding)
    t.require_bound()
    ratio = shift_quotient(t, "k")
    nf = gosper_normal_form(ratio)
    d = degree_bound(nf.z, nf.a, nf.b, nf.c)
    if d is None:
        raise NotSummableError(
            f"degree bound rules out a polynomial solution for {term_to_string(t)}"
        )
    x = solve_recurrence_polynomial(nf.z, nf.a, nf.b, nf.c, d)
    if x is None or not x:
        raise NotSummableError(
            f"no polynomial solution up to degree {d} for {term_to_string(t)}"
        )
    cert = RationalFunction(nf.b.shift(-1) * x, nf.c)
    result = GosperCertificate(t, ratio, nf, x, cert)
    if not result.check():
        raise AssertionError("internal error: certificate failed its own check")
    return result


def telescoped_sum(cert: GosperCertificate, n: int, lo: int, hi: int) -> Fraction:
    """Sum of F(k) for lo <= k <= hi via G(hi+1) - G(lo)."""
    if hi < lo:
        return Fraction(0)
    g = cert.antidifference()
    return eval_term(g, n, hi + 1) - eval_term(g, n, lo)
