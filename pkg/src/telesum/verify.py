"""Independent verification layer: brute-force oracles and exact
certificate checks used to confirm every identity the engine handles.

Nothing here trusts the solvers.  Sums are evaluated term by term with
exact rationals; telescoping claims are re-checked as rational-function
identities in the Q(n)(k) tower; auxiliary parameters are instantiated
at concrete integer points before checking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .hyperterm import (
    HyperTerm,
    ParamBinding,
    binomial_value,
    eval_term,
    ratio_rational,
    shift_quotient,
    term_ratio_is_one,
)
from .polynomials import Polynomial, QN, shift_in_n


class VerificationError(Exception):
    pass


def oracle_sum(
    term: HyperTerm, n: int, k_lo: int, k_hi: int, binding: ParamBinding | None = None
) -> Fraction:
    """Plain exact summation over an explicit k-range; the ground truth."""
    t = term.bind(binding)
    total = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        total += eval_term(t, n, k)
    return total


def sum_table(
    term: HyperTerm,
    n_lo: int,
    n_hi: int,
    bounds: Callable[[int], tuple[int, int]],
    binding: ParamBinding | None = None,
) -> dict[int, Fraction]:
    t = term.bind(binding)
    return {
        n: oracle_sum(t, n, *bounds(n)) for n in range(n_lo, n_hi + 1)
    }


def check_telescoping(
    f: HyperTerm,
    g: HyperTerm,
    coeffs: Sequence[Polynomial],
    binding: ParamBinding | None = None,
) -> bool:
    """Exact identity sum_j sigma_j(n) f(n+j, k) = g(n, k+1) - g(n, k).

    g must be a rational multiple of f (same factor structure); the check
    happens in Q(n)(k) after dividing through by f.
    """
    fb = f.bind(binding)
    gb = g.bind(binding)
    fb.require_bound()
    gb.require_bound()
    cert = ratio_rational(gb, fb)
    r_k = shift_quotient(fb, "k")
    r_n = shift_quotient(fb, "n")
    lhs = cert.field.zero()
    t_j = cert.field.one()
    for j, c in enumerate(coeffs):
        if j > 0:
            t_j = t_j * shift_in_n(r_n, j - 1)
        if c:
            lhs = lhs + t_j * QN.coerce(c)
    return lhs == cert.shift(1) * r_k - cert


@dataclass(frozen=True)
class WZPair:
    """Summand f with companion g certifying an n-operator applied to f.

    coeffs[j] is the polynomial multiplying f(n+j, k); the pair is valid
    when sum_j coeffs[j](n) f(n+j,k) = g(n,k+1) - g(n,k) identically.
    """

    f: HyperTerm
    g: HyperTerm
    coeffs: tuple[Polynomial, ...]

    def check(self, binding: ParamBinding | None = None) -> bool:
        return check_telescoping(self.f, self.g, self.coeffs, binding)

    def vanishes_at_k(
        self, k0: int, binding: ParamBinding | None = None, n_lo: int = 0, n_hi: int = 12
    ) -> bool:
        """g(n, k0) = 0: structurally when the substituted prefactor dies,
        otherwise confirmed on a range of concrete n."""
        gb = self.g.bind(binding)
        gb.require_bound()
        fixed = gb.subst_k(k0)
        if fixed.prefactor.is_zero():
            return True
        return all(eval_term(fixed, n, 0) == 0 for n in range(n_lo, n_hi + 1))


def check_boundary_couple(
    f1: HyperTerm,
    g1: HyperTerm,
    upper1: str,
    f2: HyperTerm,
    g2: HyperTerm,
    upper2: str,
    coeffs: tuple[Polynomial, ...],
    rhs: HyperTerm,
    binding: ParamBinding,
    n_lo: int = 1,
    n_hi: int = 12,
) -> None:
    """Two sums with parameter-valued upper limits satisfying one
    inhomogeneous first-order equation, hence equal once initial values
    agree.

    For each member: the telescoping identity holds exactly, the
    companion vanishes at k = 0, and its value at the upper limit equals
    the common right-hand side.  Both boundary values are matched to each
    other and to rhs as whole terms in n.  Finally the two sums are
    compared directly over n_lo..n_hi.  Raises VerificationError.
    """
    hi1 = int(binding[upper1])
    hi2 = int(binding[upper2])
    pair1 = WZPair(f1.bind(binding), g1.bind(binding), coeffs)
    pair2 = WZPair(f2.bind(binding), g2.bind(binding), coeffs)
    if not pair1.check():
        raise VerificationError(f"telescoping fails for the first member at {binding}")
    if not pair2.check():
        raise VerificationError(f"telescoping fails for the second member at {binding}")
    if not pair1.vanishes_at_k(0, n_lo=n_lo, n_hi=n_hi):
        raise VerificationError(f"first companion nonzero at k = 0 at {binding}")
    if not pair2.vanishes_at_k(0, n_lo=n_lo, n_hi=n_hi):
        raise VerificationError(f"second companion nonzero at k = 0 at {binding}")
    b1 = pair1.g.subst_k(hi1)
    b2 = pair2.g.subst_k(hi2)
    rhs_b = rhs.bind(binding)
    if not term_ratio_is_one(b1, b2):
        raise VerificationError(f"boundary values disagree at {binding}")
    if not term_ratio_is_one(b1, rhs_b):
        raise VerificationError(
            f"boundary value differs from the stated right-hand side at {binding}"
        )
    for n in range(n_lo, n_hi + 1):
        s1 = oracle_sum(pair1.f, n, 0, hi1 - 1)
        s2 = oracle_sum(pair2.f, n, 0, hi2 - 1)
        if s1 != s2:
            raise VerificationError(
                f"sums disagree at n = {n}, {binding}: {s1} vs {s2}"
            )
        lhs_rec = sum(
            c.evaluate(Fraction(n)) * oracle_sum(pair1.f, n + j, 0, hi1 - 1)
            for j, c in enumerate(coeffs)
        )
        if lhs_rec != eval_term(rhs_b, n, 0):
            raise VerificationError(
                f"difference equation fails at n = {n}, {binding}"
            )


# ---------------------------------------------------------------------------
# sequences for the generic double-sum transform


@dataclass(frozen=True)
class SequenceSpec:
    """A named sequence a_0, a_1, ... with a hard validity bound."""

    name: str
    length: int
    _values: tuple[Fraction, ...]

    def value(self, i: int) -> Fraction:
        if not 0 <= i < self.length:
            raise IndexError(
                f"sequence {self.name} has no term {i} (length {self.length})"
            )
        return self._values[i]


def catalan_sequence(length: int = 64) -> SequenceSpec:
    vals = [Fraction(binomial_value(2 * i, i), i + 1) for i in range(length)]
    return SequenceSpec("catalan", length, tuple(vals))


def binomial_column_sequence(column: int, length: int = 64) -> SequenceSpec:
    vals = [Fraction(binomial_value(i, column)) for i in range(length)]
    return SequenceSpec(f"binom(i,{column})", length, tuple(vals))


def binomial_row_sequence(row: int, length: int = 64) -> SequenceSpec:
    vals = [Fraction(binomial_value(row, i)) for i in range(length)]
    return SequenceSpec(f"binom({row},i)", length, tuple(vals))


def rational_sequence(name: str, values: Sequence[Fraction | int]) -> SequenceSpec:
    return SequenceSpec(name, len(values), tuple(Fraction(v) for v in values))


def seeded_random_sequences(
    count: int, length: int, seed: int = 11928
) -> list[SequenceSpec]:
    """Deterministic pseudo-random rational sequences for transform tests."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        vals = tuple(
            Fraction(rng.randint(-99, 99), rng.randint(1, 12)) for _ in range(length)
        )
        out.append(SequenceSpec(f"random-{seed}-{i}", length, vals))
    return out


def check_binomial_transform(seq: SequenceSpec, n: int, m: int) -> bool:
    """sum_{i<=n} sum_{j<=m} binom(n,i) binom(m,j) a_{i+j}
       == sum_{k<=n+m} binom(n+m,k) a_k."""
    lhs = Fraction(0)
    for i in range(n + 1):
        bi = binomial_value(n, i)
        if not bi:
            continue
        for j in range(m + 1):
            bj = binomial_value(m, j)
            if bj:
                lhs += bi * bj * seq.value(i + j)
    rhs = sum(
        binomial_value(n + m, k) * seq.value(k) for k in range(n + m + 1)
    )
    return lhs == rhs


def check_transform_power_identity(n: int, m: int) -> bool:
    """sum_{i<=n} sum_{j<=m} binom(n,i) binom(m,j) binom(i+j,n)
       == binom(n+m,n) * 2^m."""
    lhs = Fraction(0)
    for i in range(n + 1):
        bi = binomial_value(n, i)
        if not bi:
            continue
        for j in range(m + 1):
            bj = binomial_value(m, j)
            if bj:
                lhs += bi * bj * binomial_value(i + j, n)
    return lhs == binomial_value(n + m, n) * 2**m


def check_lower_triangle_identity(n: int) -> bool:
    """sum_{i<j} binom(n,i) binom(n,j) binom(i+j,n)
       == sum_{i<j} binom(n,i) binom(n,j)^2, both over 0 <= i < j <= n."""
    lhs = Fraction(0)
    rhs = Fraction(0)
    for j in range(n + 1):
        bj = binomial_value(n, j)
        for i in range(j):
            bi = binomial_value(n, i)
            lhs += bi * bj * binomial_value(i + j, n)
            rhs += bi * bj * bj
    return lhs == rhs
