"""Exact arithmetic: rationals, dense polynomials, and rational functions.

Everything here is built from ``fractions.Fraction`` upward, so all results
are exact.  Polynomials are dense coefficient tuples over a pluggable
coefficient ring, which lets the same class serve as

* ``Q[k]`` (coefficients ``Fraction``),
* ``Q(n)[k]`` (coefficients ``RationalFunction`` in ``n``), and
* nested rings such as ``Q[n][j]`` used inside resultant computations.

The summation engine works over the tower ``Q -> Q[n] -> Q(n) -> Q(n)[k]
-> Q(n)(k)``; module-level singletons for those rings live at the bottom
of this file.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

BigRational = Fraction

NEG_INFINITY = float("-inf")


def rational(numerator: int, denominator: int = 1) -> Fraction:
    return Fraction(numerator, denominator)


class RationalField:
    """Descriptor for the base field Q with ``Fraction`` elements."""

    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, value: int) -> Fraction:
        return Fraction(value)

    def exact_div(self, a: Fraction, b: Fraction) -> Fraction:
        return a / b

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def __repr__(self) -> str:
        return "Q"


QQ = RationalField()


class PolynomialRing:
    """Descriptor for dense univariate polynomials over a coefficient ring."""

    def __init__(self, var: str, coeff_ring) -> None:
        self.var = var
        self.coeff_ring = coeff_ring

    def zero(self) -> "Polynomial":
        return Polynomial(self.var, self.coeff_ring, ())

    def one(self) -> "Polynomial":
        return Polynomial(self.var, self.coeff_ring, (self.coeff_ring.one(),))

    def from_int(self, value: int) -> "Polynomial":
        return Polynomial(self.var, self.coeff_ring, (self.coeff_ring.from_int(value),))

    def constant(self, value) -> "Polynomial":
        return Polynomial(self.var, self.coeff_ring, (self.coeff_ring.coerce(value),))

    def gen(self) -> "Polynomial":
        return Polynomial(
            self.var, self.coeff_ring, (self.coeff_ring.zero(), self.coeff_ring.one())
        )

    def poly(self, coeffs: Iterable) -> "Polynomial":
        return Polynomial(
            self.var, self.coeff_ring, tuple(self.coeff_ring.coerce(c) for c in coeffs)
        )

    def exact_div(self, a: "Polynomial", b: "Polynomial") -> "Polynomial":
        return a.exact_div(b)

    def coerce(self, value) -> "Polynomial":
        if (
            isinstance(value, Polynomial)
            and value.var == self.var
            and value.ring == self.coeff_ring
        ):
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.constant(value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialRing)
            and self.var == other.var
            and self.coeff_ring == other.coeff_ring
        )

    def __hash__(self) -> int:
        return hash(("PolynomialRing", self.var, self.coeff_ring))

    def __repr__(self) -> str:
        return f"{self.coeff_ring!r}[{self.var}]"


class FractionField:
    """Descriptor for the fraction field of a polynomial ring."""

    def __init__(self, poly_ring: PolynomialRing) -> None:
        self.poly_ring = poly_ring
        self.var = poly_ring.var

    def zero(self) -> "RationalFunction":
        return RationalFunction(self.poly_ring.zero(), self.poly_ring.one())

    def one(self) -> "RationalFunction":
        return RationalFunction(self.poly_ring.one(), self.poly_ring.one())

    def from_int(self, value: int) -> "RationalFunction":
        return RationalFunction(self.poly_ring.from_int(value), self.poly_ring.one())

    def exact_div(self, a: "RationalFunction", b: "RationalFunction") -> "RationalFunction":
        return a / b

    def coerce(self, value) -> "RationalFunction":
        if isinstance(value, RationalFunction) and value.field == self:
            return value
        return RationalFunction(self.poly_ring.coerce(value), self.poly_ring.one())

    def __eq__(self, other) -> bool:
        return isinstance(other, FractionField) and self.poly_ring == other.poly_ring

    def __hash__(self) -> int:
        return hash(("FractionField", self.poly_ring))

    def __repr__(self) -> str:
        return f"Frac({self.poly_ring!r})"


class Polynomial:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("var", "ring", "coeffs")

    def __init__(self, var: str, ring, coeffs: Sequence) -> None:
        n = len(coeffs)
        while n > 0 and not coeffs[n - 1]:
            n -= 1
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(coeffs[:n]))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- basic structure ------------------------------------------------

    @property
    def degree(self):
        """Degree, with the zero polynomial mapped to -infinity."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def lc(self):
        if not self.coeffs:
            return self.ring.zero()
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _spawn(self, coeffs: Sequence) -> "Polynomial":
        return Polynomial(self.var, self.ring, coeffs)

    def _coerce(self, other):
        if isinstance(other, Polynomial) and other.var == self.var and other.ring == self.ring:
            return other
        try:
            return self._spawn((self.ring.coerce(other),))
        except TypeError:
            return None

    # -- ring operations ------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (
                self.var == other.var
                and self.ring == other.ring
                and self.coeffs == other.coeffs
            )
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self.coeffs == p.coeffs

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        a, b = self.coeffs, p.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._spawn(out)

    __radd__ = __add__

    def __neg__(self):
        return self._spawn(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self + (-p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return p + (-self)

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        a, b = self.coeffs, p.coeffs
        if not a or not b:
            return self._spawn(())
        out = [self.ring.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return self._spawn(out)

    __rmul__ = __mul__

    def mul_ground(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        return self._spawn(tuple(a * c for a in self.coeffs))

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = self._spawn((self.ring.one(),))
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- division -------------------------------------------------------

    def __divmod__(self, other):
        """Long division; coefficient divisions go through the ring."""
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        if not p:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = len(p.coeffs) - 1, p.lc()
        if len(rem) - 1 < db:
            return self._spawn(()), self
        quot = [self.ring.zero()] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            if not rem[i]:
                continue
            q = self.ring.exact_div(rem[i], lb)
            quot[i - db] = q
            for j, cb in enumerate(p.coeffs):
                rem[i - db + j] = rem[i - db + j] - q * cb
        return self._spawn(quot), self._spawn(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"inexact polynomial division: {self!r} by {other!r}")
        return q

    def monic(self) -> "Polynomial":
        if not self:
            return self
        lead = self.lc()
        return self._spawn(tuple(self.ring.exact_div(c, lead) for c in self.coeffs))

    # -- substitution ---------------------------------------------------

    def shift(self, j) -> "Polynomial":
        """Substitute ``var + j`` for ``var`` (Horner on the shifted base)."""
        if not self.coeffs:
            return self
        jc = self.ring.coerce(j)
        base = self._spawn((jc, self.ring.one()))
        result = self._spawn(())
        for c in reversed(self.coeffs):
            result = result * base + c
        return result

    def evaluate(self, point):
        """Horner evaluation; the point is coerced into the coefficient ring."""
        x = self.ring.coerce(point)
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_poly(self, inner: "Polynomial") -> "Polynomial":
        result = inner._spawn(())
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def map_coeffs(self, fn, ring=None) -> "Polynomial":
        return Polynomial(self.var, ring if ring is not None else self.ring,
                          tuple(fn(c) for c in self.coeffs))

    # -- display --------------------------------------------------------

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = _coeff_string(c)
            if i == 0:
                piece = cs
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                if cs == "1":
                    piece = v
                elif cs == "-1":
                    piece = f"-{v}"
                else:
                    piece = f"{cs}*{v}"
            if parts and not piece.startswith("-"):
                parts.append("+" + piece)
            else:
                parts.append(piece)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.to_string()})"


def _coeff_string(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, Polynomial):
        s = c.to_string()
        return s if len(c.coeffs) <= 1 and "/" not in s else f"({s})"
    if isinstance(c, RationalFunction):
        s = str(c)
        return s if s.lstrip("-").isdigit() else f"({s})"
    return str(c)


class RationalFunction:
    """Quotient of polynomials, always reduced, denominator monic."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num: Polynomial, den: Polynomial | None = None) -> None:
        ring = PolynomialRing(num.var, num.ring)
        if den is None:
            den = ring.one()
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.var != den.var or num.ring != den.ring:
            raise TypeError("numerator and denominator from different rings")
        if not num:
            den = ring.one()
        else:
            g = poly_gcd(num, den)
            if g.degree != 0 or g.lc() != num.ring.one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.lc()
            if lead != num.ring.one():
                den = den.monic()
                num = num.map_coeffs(lambda c: num.ring.exact_div(c, lead))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "field", FractionField(ring))

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        """The coefficient-ring value of a constant rational function."""
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return self.num.coeff(0)

    def _coerce(self, other):
        if isinstance(other, RationalFunction) and other.field == self.field:
            return other
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __eq__(self, other) -> bool:
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self.num == p.num and self.den == p.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RationalFunction(self.num * p.den + p.num * self.den, self.den * p.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self + (-p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return p + (-self)

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return RationalFunction(self.num * p.num, self.den * p.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        if not p.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * p.den, self.den * p.num)

    def __rtruediv__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return p / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return (self.field.one() / self) ** (-exponent)
        return RationalFunction(self.num**exponent, self.den**exponent)

    def reciprocal(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.den, self.num)

    def shift(self, j) -> "RationalFunction":
        return RationalFunction(self.num.shift(j), self.den.shift(j))

    def map_coeffs(self, fn, ring=None) -> "RationalFunction":
        return RationalFunction(self.num.map_coeffs(fn, ring), self.den.map_coeffs(fn, ring))

    def evaluate(self, point):
        """Evaluate at a point of the coefficient ring; raises on a pole."""
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError(f"pole of {self!r} at {self.var} = {point!r}")
        n = self.num.evaluate(point)
        ring = self.num.ring
        if isinstance(n, RationalFunction) or isinstance(n, Fraction):
            return n / d
        return ring.exact_div(n, d)

    def __str__(self) -> str:
        if self.den.degree == 0 and self.den.lc() == self.num.ring.one():
            return self.num.to_string()
        return f"({self.num.to_string()})/({self.den.to_string()})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# gcd machinery


def poly_divrem(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder with deg r < deg q; requires field coefficients."""
    return divmod(p, q)


def _int_content_normalize(coeffs: Sequence[Fraction]) -> list[int]:
    """Scale Fraction coefficients to a primitive integer list, positive lead."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    if ints and ints[-1] < 0:
        ints = [-v for v in ints]
    return ints

def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    r = list(a)
    for i in range(da, db - 1, -1):
        coef = r[i]
        if coef:
            for j in range(len(r)):
                r[j] *= lead
            for j, cb in enumerate(b):
                r[i - db + j] -= coef * cb
        # invariant: r[i] is now zero
    while r and r[-1] == 0:
        r.pop()
    return r[: db] if len(r) > db else r

def _int_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for v in coeffs:
        g = math.gcd(g, v)
    if g > 1:
        coeffs = [v // g for v in coeffs]
    if coeffs and coeffs[-1] < 0:
        coeffs = [-v for v in coeffs]
    return coeffs

def _rational_poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    # primitive pseudo-remainder sequence over the integers, then monic
    a = _int_content_normalize(p.coeffs)
    b = _int_content_normalize(q.coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_primitive(_int_pseudo_rem(a, b))
    lead = a[-1]
    return Polynomial(p.var, p.ring, tuple(Fraction(c, lead) for c in a))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over a coefficient field."""
    if p.var != q.var or p.ring != q.ring:
        raise TypeError("gcd of polynomials from different rings")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.ring is QQ or isinstance(p.ring, RationalField):
        return _rational_poly_gcd(p, q)
    a, b = p.monic(), q.monic()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = a % b
        a, b = b, (r.monic() if r else r)
    return a


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p or not q:
        return PolynomialRing(p.var, p.ring).zero()
    return (p * q).exact_div(poly_gcd(p, q)).monic()


# ---------------------------------------------------------------------------
# integer roots


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def integer_roots(p: Polynomial) -> list[int]:
    """Sorted integer roots of a nonzero polynomial over Q."""
    if not p:
        raise ValueError("integer_roots of the zero polynomial")
    ints = _int_content_normalize(p.coeffs)
    roots = []
    low = 0
    while low < len(ints) and ints[low] == 0:
        low += 1
    if low > 0:
        roots.append(0)
        ints = ints[low:]
    if len(ints) <= 1:
        return sorted(roots)
    for d in _divisors(ints[0]):
        for cand in (d, -d):
            acc = 0
            for c in reversed(ints):
                acc = acc * cand + c
            if acc == 0:
                roots.append(cand)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# resultants and dispersion


def _bareiss_determinant(ring, rows: list[list]) -> object:
    """Fraction-free determinant; entries live in an integral domain."""
    n = len(rows)
    if n == 0:
        return ring.one()
    m = [row[:] for row in rows]
    sign = 1
    prev = ring.one()
    for i in range(n - 1):
        pivot_row = None
        for r in range(i, n):
            if m[r][i]:
                pivot_row = r
                break
        if pivot_row is None:
            return ring.zero()
        if pivot_row != i:
            m[i], m[pivot_row] = m[pivot_row], m[i]
            sign = -sign
        piv = m[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = ring.exact_div(piv * m[r][c] - m[r][i] * m[i][c], prev)
            m[r][i] = ring.zero()
        prev = piv
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(p: Polynomial, q: Polynomial):
    """Resultant of p and q in their shared variable, via Sylvester/Bareiss.

    Returns an element of the coefficient ring.  The coefficient ring may
    itself be a polynomial ring; all divisions performed are exact.
    """
    if p.var != q.var or p.ring != q.ring:
        raise TypeError("resultant of polynomials from different rings")
    ring = p.ring
    if not p or not q:
        return ring.zero()
    dp, dq = len(p.coeffs) - 1, len(q.coeffs) - 1
    if dp == 0:
        return p.lc() ** dq
    if dq == 0:
        return q.lc() ** dp
    size = dp + dq
    zero = ring.zero()
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(dq):
        rows.append([zero] * i + pc + [zero] * (size - i - dp - 1))
    for i in range(dp):
        rows.append([zero] * i + qc + [zero] * (size - i - dq - 1))
    return _bareiss_determinant(ring, rows)


def _clear_to_polynomial_coeffs(p: Polynomial) -> Polynomial:
    """Map Q(n)[k] into Q[n][k] (or keep Q[k]) by clearing denominators."""
    if isinstance(p.ring, RationalField):
        return p
    if isinstance(p.ring, FractionField):
        base = p.ring.poly_ring
        common = base.one()
        for c in p.coeffs:
            common = poly_lcm(common, c.den) if c else common
        cleared = []
        for c in p.coeffs:
            if not c:
                cleared.append(base.zero())
            else:
                cleared.append(c.num * common.exact_div(c.den))
        return Polynomial(p.var, base, cleared)
    raise TypeError(f"unsupported coefficient ring {p.ring!r}")


def _shift_into_j(p: Polynomial, jring: PolynomialRing) -> Polynomial:
    """Build p(var + j) as a polynomial in var whose coefficients live in R[j]."""
    inner = jring.coeff_ring
    d = len(p.coeffs) - 1
    out = [[inner.zero()] * (d - t + 1) for t in range(d + 1)]
    for i, ci in enumerate(p.coeffs):
        if not ci:
            continue
        for t in range(i + 1):
            out[t][i - t] = out[t][i - t] + ci * math.comb(i, t)
    coeffs = [Polynomial(jring.var, inner, row) for row in out]
    return Polynomial(p.var, jring, coeffs)


def _lift_into_j(p: Polynomial, jring: PolynomialRing) -> Polynomial:
    coeffs = [Polynomial(jring.var, jring.coeff_ring, (c,)) for c in p.coeffs]
    return Polynomial(p.var, jring, coeffs)


def dispersion_set(p: Polynomial, q: Polynomial) -> list[int]:
    """All integers j >= 0 with deg gcd(p(k), q(k + j)) >= 1, sorted.

    Works over Q[k] and over Q(n)[k]; candidates come from an integer-root
    computation on a resultant in the shift variable, then each candidate
    is confirmed by an exact gcd.
    """
    if p.var != q.var or p.ring != q.ring:
        raise TypeError("dispersion of polynomials from different rings")
    if p.degree < 1 or q.degree < 1:
        return []
    a = _clear_to_polynomial_coeffs(p)
    b = _clear_to_polynomial_coeffs(q)
    jring = PolynomialRing("_j", a.ring)
    res = resultant(_lift_into_j(a, jring), _shift_into_j(b, jring))
    # res is a polynomial in the shift variable, coefficients in Q or Q[n]
    if isinstance(a.ring, RationalField):
        witness = res
    else:
        # pick one nonzero Q-coefficient slice of the n-polynomial values
        best = None
        depth = max((c.degree for c in res.coeffs if c), default=0)
        for d in range(int(depth) + 1 if res else 0):
            slice_coeffs = [c.coeff(d) for c in res.coeffs]
            cand = Polynomial(jring.var, QQ, slice_coeffs)
            if cand and (best is None or cand.degree < best.degree):
                best = cand
        witness = best
    if witness is None or not witness:
        raise ArithmeticError("dispersion resultant vanished identically")
    out = []
    for j in integer_roots(witness):
        if j < 0:
            continue
        if poly_gcd(p, q.shift(j)).degree >= 1:
            out.append(j)
    return out


# ---------------------------------------------------------------------------
# the working tower

POLY_N = PolynomialRing("n", QQ)
QN = FractionField(POLY_N)
POLY_K = PolynomialRing("k", QN)
QNK = FractionField(POLY_K)


def n_poly(*coeffs) -> Polynomial:
    """Polynomial in n over Q from ascending coefficients."""
    return POLY_N.poly(coeffs)


def qn_const(value) -> RationalFunction:
    """Embed an integer or Fraction into Q(n)."""
    return QN.coerce(value)


def k_poly(*coeffs) -> Polynomial:
    """Polynomial in k over Q(n); coefficients may be ints, Fractions,
    polynomials in n, or Q(n) elements."""
    lifted = []
    for c in coeffs:
        if isinstance(c, RationalFunction):
            lifted.append(QN.coerce(c))
        elif isinstance(c, Polynomial):
            lifted.append(RationalFunction(c))
        else:
            lifted.append(QN.coerce(Fraction(c)))
    return Polynomial("k", QN, lifted)


def qnk(num: Polynomial, den: Polynomial | None = None) -> RationalFunction:
    return RationalFunction(num, den)


def shift_in_n(obj, j: int):
    """Substitute n + j for n throughout a Q(n), Q(n)[k], or Q(n)(k) object."""
    if isinstance(obj, RationalFunction):
        if obj.var == "n":
            return RationalFunction(obj.num.shift(j), obj.den.shift(j))
        return RationalFunction(shift_in_n(obj.num, j), shift_in_n(obj.den, j))
    if isinstance(obj, Polynomial):
        if obj.var == "n":
            return obj.shift(j)
        return obj.map_coeffs(lambda c: shift_in_n(c, j))
    raise TypeError(f"cannot shift n in {obj!r}")


def eval_qn(value: RationalFunction, n: int) -> Fraction:
    """Evaluate a Q(n) element at an integer; raises ZeroDivisionError on a pole."""
    return value.evaluate(Fraction(n))


def clear_qnk_pair(value: RationalFunction) -> tuple[Polynomial, Polynomial]:
    """Rewrite a Q(n)(k) element as num/den with Q[n] coefficients.

    Both parts are scaled by the same k-free factor, so the quotient is
    unchanged; this is the form used for evaluation and serialization.
    """
    base = POLY_N
    common = base.one()
    for c in list(value.num.coeffs) + list(value.den.coeffs):
        if c:
            common = poly_lcm(common, c.den)

    def cleared(p: Polynomial) -> Polynomial:
        out = []
        for c in p.coeffs:
            out.append(c.num * common.exact_div(c.den) if c else base.zero())
        return Polynomial(p.var, base, out)

    return cleared(value.num), cleared(value.den)


def integer_qnk_pair(value: RationalFunction) -> tuple[Polynomial, Polynomial]:
    """Canonical integer-coefficient num/den pair for a Q(n)(k) element.

    Beyond clear_qnk_pair this scales away all Fraction denominators,
    divides out the common integer content, and fixes the sign so the
    denominator's leading coefficient is positive.
    """
    num, den = clear_qnk_pair(value)
    dens = [
        c.denominator
        for p in (num, den)
        for cf in p.coeffs
        for c in cf.coeffs
        if c
    ]
    scale = Fraction(math.lcm(*dens)) if dens else Fraction(1)
    ints = [
        int(c * scale)
        for p in (num, den)
        for cf in p.coeffs
        for c in cf.coeffs
        if c
    ]
    if ints:
        scale /= math.gcd(*ints)
    lead = den.lc().lc() if den else num.lc().lc()
    if lead * scale < 0:
        scale = -scale

    def scaled(p: Polynomial) -> Polynomial:
        return p.map_coeffs(lambda cf: cf.mul_ground(scale))

    return scaled(num), scaled(den)


def eval_qnk(value: RationalFunction, n: int, k: int) -> Fraction:
    """Evaluate a Q(n)(k) element at integers; raises ZeroDivisionError on a pole.

    Evaluation happens on the denominator-cleared bivariate form, so a pole
    is reported only where the reduced quotient genuinely has one.
    """
    num, den = clear_qnk_pair(value)
    nf, kf = Fraction(n), Fraction(k)
    dval = den.map_coeffs(lambda c: c.evaluate(nf), QQ).evaluate(kf)
    if not dval:
        raise ZeroDivisionError(f"pole at (n, k) = ({n}, {k})")
    nval = num.map_coeffs(lambda c: c.evaluate(nf), QQ).evaluate(kf)
    return nval / dval
