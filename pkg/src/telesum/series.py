"""Truncated formal power series over Q, plus the generating functions
used to cross-check convolution identities.

A series carries its coefficients through a fixed truncation order;
combining two series truncates to the shorter one.  All arithmetic is
exact (Fraction coefficients).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .hyperterm import binomial_value


class PowerSeries:
    """Coefficients c_0..c_order of a series truncated at x^order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]) -> None:
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in coeffs)
        )
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if i < 0:
            raise IndexError("negative index")
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend truncation {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:5])
        tail = ", ..." if self.order >= 5 else ""
        return f"PowerSeries([{head}{tail}]; order={self.order})"

    def _zip(self, other: "PowerSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        m = self._zip(other)
        return PowerSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(m + 1))
        )

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries((self.coeffs[0] - other,) + self.coeffs[1:])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c * other for c in self.coeffs))
        m = self._zip(other)
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.coeffs[: m + 1]):
            if not a:
                continue
            for j in range(m + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PowerSeries((Fraction(1),) + (Fraction(0),) * self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries(tuple(c / other for c in self.coeffs))
        return self * other.inverse()

    def inverse(self) -> "PowerSeries":
        f0 = self.coeffs[0]
        if not f0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        out = [Fraction(1) / f0]
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, m + 1):
                if self.coeffs[i]:
                    acc += self.coeffs[i] * out[m - i]
            out.append(-acc / f0)
        return PowerSeries(out)

    def sqrt(self) -> "PowerSeries":
        """Square root of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt requires constant term 1")
        out = [Fraction(1)]
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, m):
                acc += out[i] * out[m - i]
            out.append((self.coeffs[m] - acc) / 2)
        return PowerSeries(out)

    def shift_down(self, m: int) -> "PowerSeries":
        """Divide by x^m; the first m coefficients must vanish."""
        if any(self.coeffs[:m]):
            raise ValueError(f"series is not divisible by x^{m}")
        if m > self.order:
            raise ValueError("shift exceeds truncation order")
        return PowerSeries(self.coeffs[m:])


def x_series(order: int) -> PowerSeries:
    return PowerSeries((0, 1) + (0,) * (order - 1)) if order >= 1 else PowerSeries((0,))


def one_series(order: int) -> PowerSeries:
    return PowerSeries((1,) + (0,) * order)


def central_binomial_gf(order: int) -> PowerSeries:
    """1/sqrt(1-4x): coefficients binom(2n, n)."""
    base = PowerSeries((1, -4) + (0,) * (order - 1)) if order else PowerSeries((1,))
    return base.sqrt().inverse()


def catalan_gf(order: int) -> PowerSeries:
    """(1 - sqrt(1-4x))/(2x): the Catalan numbers."""
    root = PowerSeries((1, -4) + (0,) * order).sqrt()  # one spare order for the shift
    return (one_series(order + 1) - root).shift_down(1) / 2


def ballot_gf(k: int, order: int) -> PowerSeries:
    """central * catalan^k: coefficients binom(2n+k, n)."""
    if k < 0:
        raise ValueError("the family index must be >= 0")
    return central_binomial_gf(order) * catalan_gf(order) ** k


def shifted_central_gf(order: int) -> PowerSeries:
    """(1 - sqrt(1-4x))/(x*sqrt(1-4x)): coefficients binom(2n+2, n+1)."""
    root = PowerSeries((1, -4) + (0,) * order).sqrt()
    return (one_series(order + 1) - root).shift_down(1) * central_binomial_gf(order)


def check_shifted_central_identity(order: int = 64) -> bool:
    """The closed form above really generates binom(2n+2, n+1)."""
    gf = shifted_central_gf(order)
    return all(
        gf.coeff(j) == binomial_value(2 * j + 2, j + 1) for j in range(order + 1)
    )


def check_convolution_11897(order: int = 64) -> bool:
    """Convolving Catalan numbers with binom(2j+2, j+1) doubles a
    central-family coefficient: coefficient n equals 2*binom(2n+2, n)."""
    prod = catalan_gf(order) * shifted_central_gf(order)
    return all(
        prod.coeff(n) == 2 * binomial_value(2 * n + 2, n) for n in range(order + 1)
    )


_KNOWN = {
    "catalan": catalan_gf,
    "central": central_binomial_gf,
    "shifted-central": shifted_central_gf,
}


def known_gf(name: str, order: int, family_index: int | None = None) -> PowerSeries:
    """Bundled generating functions by name; 'ballot' takes a family index."""
    if name == "ballot":
        return ballot_gf(0 if family_index is None else family_index, order)
    try:
        fn = _KNOWN[name]
    except KeyError:
        known = ", ".join(sorted(_KNOWN) + ["ballot"])
        raise KeyError(f"unknown series {name!r}; known: {known}") from None
    return fn(order)
