"""Rational functions in s over Q(i), in canonical form.

Canonical form: numerator and denominator are coprime Laurent
polynomials, the denominator has valuation 0, and its lowest
coefficient is 1. With that normalization equal values have equal
(num, den) pairs, so equality is structural.

Most scalars in practice are honest Laurent polynomials (den == 1);
arithmetic keeps that fast path free of gcd work.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussianRational
from .laurent import LaurentPoly, ONE as L_ONE


class RatFun:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly.coerce(num)
        if den is None:
            self.num = num
            self.den = L_ONE
            return
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_one():
            self.num = num
            self.den = L_ONE
            return
        if num.is_zero():
            self.num = num
            self.den = L_ONE
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num.divexact(g)
            den = den.divexact(g)
        # unit normalization: den -> den / (lowest coeff * s^valuation)
        v = den.valuation()
        low = den.coeff(v)
        num = num.shift(-v)
        den = den.shift(-v)
        if low != GaussianRational(1):
            inv = low.inverse()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(LaurentPoly.zero())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(L_ONE)

    @staticmethod
    def const(v) -> "RatFun":
        return RatFun(LaurentPoly.const(v))

    @staticmethod
    def s_power(k: int, coeff=1) -> "RatFun":
        return RatFun(LaurentPoly.s_power(k, coeff))

    @staticmethod
    def q_power(k: int, coeff=1) -> "RatFun":
        return RatFun(LaurentPoly.q_power(k, coeff))

    @staticmethod
    def coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction, GaussianRational, LaurentPoly)):
            return RatFun(LaurentPoly.coerce(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFun")

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def even_only(self) -> bool:
        return self.num.even_only() and self.den.even_only()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = RatFun.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RatFun(self.num + other.num)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFun.__new__(RatFun)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-RatFun.coerce(other))

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        other = RatFun.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return RatFun(self.num * other.num)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = RatFun.coerce(other)
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFun.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus ----------------------------------------------------------

    def d_ds(self) -> "RatFun":
        if self.den.is_one():
            return RatFun(self.num.d_ds())
        return RatFun(
            self.num.d_ds() * self.den - self.num * self.den.d_ds(),
            self.den * self.den,
        )

    def d_dq(self) -> "RatFun":
        # q = s^2 so d/dq = (1/(2s)) d/ds
        return self.d_ds() / RatFun.s_power(1, 2)

    # -- substitution -------------------------------------------------------

    def bar(self) -> "RatFun":
        """The involution q -> q^(-1) (s -> s^(-1))."""
        return RatFun(self.num.q_to_qinv(), self.den.q_to_qinv())

    def subs_q_power(self, m: int) -> "RatFun":
        """q -> q^m."""
        return RatFun(self.num.substitute_s_power(m), self.den.substitute_s_power(m))

    def eval_gaussian(self, s_val: GaussianRational) -> GaussianRational:
        d = self.den.eval_gaussian(s_val)
        if d.is_zero():
            raise ZeroDivisionError("pole at the requested point")
        return self.num.eval_gaussian(s_val) / d

    def sqrt(self):
        """Exact square root in the field, or None."""
        ns = self.num.sqrt()
        if ns is None:
            return None
        ds = self.den.sqrt()
        if ds is None:
            return None
        return RatFun(ns, ds)

    # -- display -------------------------------------------------------------

    def __repr__(self):
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self):
        from .grammar import format_ratfun

        return format_ratfun(self)


ZERO = RatFun.zero()
ONE = RatFun.one()
Q = RatFun.q_power(1)
S = RatFun.s_power(1)
