"""Creative telescoping: linear recurrences for definite hypergeometric sums.

For a bivariate term F(n, k) this finds polynomials sigma_0..sigma_J in n
and a rational certificate R(n, k) with

    sum_j sigma_j(n) F(n+j, k) = G(n, k+1) - G(n, k),   G = R * F,

verified exactly in Q(n)(k).  Summing over k then turns the right side
into boundary terms; when the summand vanishes outside its natural
support the sum w(n) = sum_k F(n, k) satisfies sum_j sigma_j w(n+j) = 0.

The search runs Gosper's machinery with parameterized right-hand side,
increasing the order J until the homogeneous system has a solution that
actually involves the sigma's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .gosper import degree_bound, gosper_normal_form
from .hyperterm import (
    HyperTerm,
    ParamBinding,
    PoleError,
    eval_term,
    shift_quotient,
    term_to_string,
)
from .linalg import nullspace
from .polynomials import (
    POLY_K,
    POLY_N,
    QN,
    Polynomial,
    RationalFunction,
    eval_qn,
    poly_lcm,
    shift_in_n,
)
from .serialize import _npoly_string, npoly_to_list, ratfun_to_record, ratfun_to_text


class NoRecurrenceFound(Exception):
    def __init__(self, max_order: int) -> None:
        super().__init__(
            f"no telescoping recurrence of order <= {max_order}; "
            "raise the order limit to search further"
        )
        self.max_order = max_order


class BoundaryCheckError(Exception):
    """The summand does not vanish at the edge of the scanned k-window."""


class RecurrenceCheckError(Exception):
    pass


@dataclass(frozen=True)
class Recurrence:
    """sum_j coeffs[j](n) * w(n+j) = 0 (or a supplied right-hand side).

    Coefficients are integer polynomials in n with overall content 1 and a
    positive leading coefficient on the top one; the top one is nonzero.
    """

    coeffs: tuple[Polynomial, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def apply(self, values: Mapping[int, Fraction] | Callable[[int], Fraction], n: int) -> Fraction:
        get = values.__getitem__ if hasattr(values, "__getitem__") else values
        total = Fraction(0)
        for j, c in enumerate(self.coeffs):
            cv = c.evaluate(Fraction(n))
            if cv:
                total += cv * get(n + j)
        return total

    def to_text(self, rhs: str = "0") -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            arg = "n" if j == 0 else f"n+{j}"
            parts.append(f"({_npoly_string(c)})*w({arg})")
        return " + ".join(parts) + f" = {rhs}"

    def record(self) -> dict:
        return {"order": self.order, "sigma": [npoly_to_list(c) for c in self.coeffs]}


def operator_equal(r1: Recurrence, r2: Recurrence) -> bool:
    """Normalized recurrences are canonical, so equality is structural."""
    return r1.coeffs == r2.coeffs


def _normalize_solution(
    sigmas: list[RationalFunction], certificate: RationalFunction
) -> tuple[tuple[Polynomial, ...], RationalFunction]:
    """Scale so the sigma's are integer polynomials, content 1, positive lead."""
    while sigmas and sigmas[-1].is_zero():
        sigmas.pop()
    if not sigmas:
        raise ValueError("empty coefficient vector")
    common = POLY_N.one()
    for s in sigmas:
        if s:
            common = poly_lcm(common, s.den)
    polys = [
        s.num * common.exact_div(s.den) if s else POLY_N.zero() for s in sigmas
    ]
    dens = [c.denominator for p in polys for c in p.coeffs if c]
    scale = Fraction(math.lcm(*dens)) if dens else Fraction(1)
    ints = [int(c * scale) for p in polys for c in p.coeffs if c]
    if ints:
        scale /= math.gcd(*ints)
    if polys[-1].lc() * scale < 0:
        scale = -scale
    coeffs = tuple(p.mul_ground(scale) for p in polys)
    lam = QN.coerce(common.mul_ground(scale))
    return coeffs, certificate * lam


@dataclass(frozen=True)
class TelescopingCertificate:
    """Recurrence plus rational certificate, checkable without re-running."""

    term: HyperTerm
    recurrence: Recurrence
    certificate: RationalFunction

    def companion(self) -> HyperTerm:
        """G = R * F, the telescoped partner of the summand."""
        return self.term.scale_rational(self.certificate)

    def check(self) -> bool:
        """Exact identity sum_j sigma_j t_j = R(k+1) r(k) - R(k), where
        t_j = F(n+j,k)/F(n,k) and r is the k-shift quotient of F."""
        r_k = shift_quotient(self.term, "k")
        r_n = shift_quotient(self.term, "n")
        lhs = self.certificate.field.zero()
        t_j = self.certificate.field.one()
        for j, c in enumerate(self.recurrence.coeffs):
            if j > 0:
                t_j = t_j * shift_in_n(r_n, j - 1)
            if c:
                lhs = lhs + t_j * QN.coerce(c)
        rhs = self.certificate.shift(1) * r_k - self.certificate
        return lhs == rhs

    def text(self) -> str:
        return (
            self.recurrence.to_text()
            + f"\nR(n,k) = {ratfun_to_text(self.certificate)}"
        )

    def record(self) -> dict:
        rec = self.recurrence.record()
        rec["R"] = ratfun_to_record(self.certificate)
        return rec


def creative_telescope(
    term: HyperTerm,
    binding: ParamBinding | None = None,
    max_order: int = 6,
) -> TelescopingCertificate:
    """Minimal-order telescoping recurrence for the term, tried in
    ascending order up to max_order; raises NoRecurrenceFound."""
    t = term.bind(binding)
    t.require_bound()
    r_k = shift_quotient(t, "k")
    r_n = shift_quotient(t, "n")
    field = r_k.field
    t_list = [field.one()]
    for order in range(1, max_order + 1):
        t_list.append(t_list[-1] * shift_in_n(r_n, order - 1))
        found = _attempt(t, r_k, t_list, order)
        if found is not None:
            return found
    raise NoRecurrenceFound(max_order)


def _attempt(
    t: HyperTerm,
    r_k: RationalFunction,
    t_list: list[RationalFunction],
    order: int,
) -> TelescopingCertificate | None:
    q = POLY_K.one()
    for tj in t_list:
        q = poly_lcm(q, tj.den)
    p_list = [tj.num * q.exact_div(tj.den) for tj in t_list]
    rho = RationalFunction(r_k.num * q, r_k.den * q.shift(1))
    nf = gosper_normal_form(rho)
    extra = max(int(p.degree) for p in p_list)
    d = degree_bound(nf.z, nf.a, nf.b, nf.c, rhs_extra=extra)
    if d is None:
        d = -1
    B = nf.b.shift(-1)
    k = POLY_K.gen()
    cols = []
    for i in range(d + 1):
        mono = k**i
        cols.append((nf.a * mono.shift(1)).mul_ground(nf.z) - B * mono)
    for p in p_list:
        cols.append(-(nf.c * p))
    height = max(int(col.degree) for col in cols if col) + 1
    matrix = [[col.coeff(r) for col in cols] for r in range(height)]
    for vec in nullspace(matrix, field=QN, ncols=len(cols)):
        sig = list(vec[d + 1 :])
        if all(s.is_zero() for s in sig):
            continue
        x = Polynomial("k", QN, tuple(vec[: d + 1]))
        certificate = RationalFunction(B * x, nf.c * q)
        coeffs, certificate = _normalize_solution(sig, certificate)
        result = TelescopingCertificate(t, Recurrence(coeffs), certificate)
        if not result.check():
            raise AssertionError("internal error: telescoping check failed")
        return result
    return None


def natural_sum(
    term: HyperTerm,
    n: int,
    binding: ParamBinding | None = None,
    zero_run: int = 16,
    cap: int = 2048,
) -> Fraction:
    """sum_k F(n, k) over the term's natural support around k = 0.

    The window grows in each direction until a run of zero_run consecutive
    zero values; hitting the cap first raises BoundaryCheckError, which is
    the signal that the summand has no natural finite support there.
    """
    t = term.bind(binding)
    t.require_bound()
    total = eval_term(t, n, 0)
    for step in (1, -1):
        zeros = 0
        k = step
        while zeros < zero_run:
            if abs(k) > cap:
                raise BoundaryCheckError(
                    f"summand still nonzero near k = {k - step} at n = {n}; "
                    "no natural support edge found"
                )
            v = eval_term(t, n, k)
            if v:
                total += v
                zeros = 0
            else:
                zeros += 1
            k += step
    return total


def sum_recurrence_natural(
    term: HyperTerm,
    recurrence: Recurrence,
    binding: ParamBinding | None = None,
    n_lo: int = 0,
    n_hi: int = 25,
    rhs: Callable[[int], Fraction] | None = None,
) -> dict[int, Fraction]:
    """Check the recurrence against exact natural-support sums of the term.

    Returns the table of sums on success; raises RecurrenceCheckError at
    the first violated instance and BoundaryCheckError if the summand has
    no finite natural support.
    """
    t = term.bind(binding)
    values = {
        n: natural_sum(t, n) for n in range(n_lo, n_hi + recurrence.order + 1)
    }
    for n in range(n_lo, n_hi + 1):
        want = rhs(n) if rhs is not None else Fraction(0)
        got = recurrence.apply(values, n)
        if got != want:
            raise RecurrenceCheckError(
                f"recurrence fails at n = {n}: got {got}, expected {want}"
            )
    return values
