"""Exact arithmetic over Q(sqrt(L)).

Input coordinates are scaled integers, but the grid that Stage 1 lays down
has pitch 3*lambda with lambda = sqrt(L) for an integer L that is almost
never a perfect square.  Every grid corner therefore lives in the quadratic
field Q(sqrt(L)).  QuadExpr represents (a + b*sqrt(L)) / d with integer
a, b, d and supports the ring operations plus exact sign/comparison, which
is all the geometric predicates need (no general division anywhere).
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd


def int_sign(x):
    """Sign of an int or Fraction."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def sign(x):
    """Sign of any supported scalar (int, Fraction, QuadExpr)."""
    if isinstance(x, QuadExpr):
        return x.sign()
    return int_sign(x)


class QuadExpr:
    """Exact value (a + b*sqrt(L)) / d with a, b, d integers, d > 0."""

    __slots__ = ("a", "b", "d", "L")

    def __init__(self, a, b, d, L):
        if d == 0:
            raise ZeroDivisionError("QuadExpr denominator is zero")
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(abs(a), abs(b)), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a = a
        self.b = b
        self.d = d
        self.L = L

    @staticmethod
    def of_int(value, L):
        return QuadExpr(value, 0, 1, L)

    @staticmethod
    def of_fraction(value: Fraction, L):
        return QuadExpr(value.numerator, 0, value.denominator, L)

    @staticmethod
    def sqrt_l(L, coef=Fraction(1)):
        """coef * sqrt(L) as a QuadExpr."""
        coef = Fraction(coef)
        return QuadExpr(0, coef.numerator, coef.denominator, L)

    def _coerce(self, other):
        if isinstance(other, QuadExpr):
            if other.L != self.L and other.b != 0 and self.b != 0:
                raise ValueError("mixing QuadExpr values over different fields")
            return other
        if isinstance(other, int):
            return QuadExpr(other, 0, 1, self.L)
        if isinstance(other, Fraction):
            return QuadExpr.of_fraction(other, self.L)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        L = self.L if self.b != 0 else o.L
        return QuadExpr(self.a * o.d + o.a * self.d,
                        self.b * o.d + o.b * self.d,
                        self.d * o.d, L)

    __radd__ = __add__

    def __neg__(self):
        return QuadExpr(-self.a, -self.b, self.d, self.L)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        L = self.L if self.b != 0 else o.L
        return QuadExpr(self.a * o.a + self.b * o.b * L,
                        self.a * o.b + self.b * o.a,
                        self.d * o.d, L)

    __rmul__ = __mul__

    def sign(self):
        a, b = self.a, self.b
        if b == 0:
            return int_sign(a)
        if a == 0:
            return int_sign(b)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 * L
        lhs = a * a
        rhs = b * b * self.L
        if a > 0:
            return int_sign(lhs - rhs)
        return int_sign(rhs - lhs)

    def is_zero(self):
        return self.sign() == 0

    def _cmp(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExpr)):
            c = self._cmp(other)
            return c == 0
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d, self.L))

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.L)) / self.d

    def __repr__(self):
        if self.b == 0:
            return f"QuadExpr({self.a}/{self.d})"
        return f"QuadExpr(({self.a} + {self.b}*sqrt({self.L}))/{self.d})"


def cmp_int_to_sqrt_multiple(c, num, den, L):
    """Exact comparison of c with (num/den)*sqrt(L); returns -1, 0 or 1.

    c is an integer, num/den a rational coefficient (den > 0), L >= 0.
    Used for cell-index arithmetic where full QuadExpr values would be
    overkill.
    """
    if den <= 0:
        raise ValueError("den must be positive")
    lhs = c * den           # compare lhs with num*sqrt(L)
    if num == 0 or L == 0:
        return int_sign(lhs)
    sl = int_sign(lhs)
    sr = int_sign(num)
    if sl != sr:
        return 1 if sl > sr else -1
    # same nonzero sign: compare squares, orientation by common sign
    diff = lhs * lhs - num * num * L
    return int_sign(diff) * sl
