"""Rational generating series num(t)/den(t) over Q(zeta_N).

Normal form: gcd(num, den) = 1 and den(0) = 1, so Taylor coefficients at
t = 0 are always defined and equality is a cross-multiplication check on
canonical representatives.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import ScalarError
from .scalars import Cyclo
from .upoly import UPoly, gcd_upoly

_ONE = Cyclo.of(1)


class RationalSeries:
    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly):
        if den.is_zero():
            raise ScalarError("series denominator is zero")
        g = gcd_upoly(num, den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        c0 = den[0]
        if c0.is_zero():
            raise ScalarError("series denominator vanishes at t = 0")
        inv = c0.inverse()
        object.__setattr__(self, "num", num * inv)
        object.__setattr__(self, "den", den * inv)

    def __setattr__(self, *a):
        raise AttributeError("RationalSeries is immutable")

    @staticmethod
    def from_scalar(c) -> "RationalSeries":
        return RationalSeries(UPoly.constant(c), UPoly.one())

    @staticmethod
    def one_over(factors: Iterable[Cyclo]) -> "RationalSeries":
        """1 / prod (1 - xi*t) for xi in factors."""
        den = UPoly.one()
        for xi in factors:
            den = den * UPoly.one_minus(xi)
        return RationalSeries(UPoly.one(), den)

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.num * other.den - other.num * self.den,
                              self.den * other.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return RationalSeries(self.num * Cyclo.of(other), self.den)
        return RationalSeries(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return RationalSeries(self.num, self.den * Cyclo.of(other))
        return RationalSeries(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int) -> "RationalSeries":
        if k < 0:
            return RationalSeries(self.den, self.num) ** (-k)
        return RationalSeries(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def taylor(self, order: int) -> list[Cyclo]:
        """First order+1 Taylor coefficients at t = 0, exact."""
        out: list[Cyclo] = []
        for k in range(order + 1):
            # c_k = num_k - sum_{j=1..k} den_j * c_{k-j}     (den_0 = 1)
            acc = self.num[k]
            for j in range(1, k + 1):
                dj = self.den[j]
                if not dj.is_zero():
                    acc = acc - dj * out[k - j]
            out.append(acc)
        return out

    def __str__(self):
        ns, ds = str(self.num), str(self.den)
        if ds == "1":
            return ns
        if len(self.num.coeffs) > 1:
            ns = f"({ns})"
        if len(self.den.coeffs) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RationalSeries({self})"


def series_taylor(s: RationalSeries, order: int) -> list[Cyclo]:
    return s.taylor(order)


def hilbert_free(n: int) -> RationalSeries:
    """1/(1-t)^n, the Hilbert series of a polynomial ring on n degree-1 generators."""
    return RationalSeries.one_over([_ONE] * n)


def hilbert_weighted(degrees: Iterable[int]) -> RationalSeries:
    """prod 1/(1-t^d) over generator degrees d."""
    den = UPoly.one()
    for d in degrees:
        factor = UPoly([_ONE] + [Cyclo.of(0)] * (d - 1) + [-_ONE])
        den = den * factor
    return RationalSeries(UPoly.one(), den)
