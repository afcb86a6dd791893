"""Ring/field tags for generic exact linear algebra.

A Ring object bundles the operations of one coefficient domain so that
matrices, series and polynomial code can stay generic. Elements are the
raw scalar objects (Fraction, GaussianRational, RatFun, Cyclotomic, ...);
the tag is passed alongside them.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussianRational
from .ratfun import RatFun
from .cyclotomic import Cyclotomic, euler_phi


class Ring:
    name = "ring"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        out = self.zero()
        one = self.one()
        neg = n < 0
        for _ in range(abs(n)):
            out = self.add(out, one)
        return self.neg(out) if neg else out

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return self.one() / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def coerce(self, x):
        raise NotImplementedError

    def fmt(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"<{self.name}>"


class RationalField(Ring):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def is_zero(self, a):
        return not a

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, GaussianRational) and x.is_rational():
            return x.re
        raise TypeError(f"cannot coerce {x!r} into Q")


class GaussianField(Ring):
    name = "Q(i)"

    def zero(self):
        return GaussianRational(0)

    def one(self):
        return GaussianRational(1)

    def from_int(self, n):
        return GaussianRational(n)

    def is_zero(self, a):
        return a.is_zero()

    def coerce(self, x):
        return GaussianRational.coerce(x)


class RatFunField(Ring):
    """Q(i)(s) with q = s^2."""

    name = "Q(i)(s)"

    def zero(self):
        return RatFun.zero()

    def one(self):
        return RatFun.one()

    def from_int(self, n):
        return RatFun.const(n)

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def coerce(self, x):
        return RatFun.coerce(x)


class CyclotomicField(Ring):
    def __init__(self, order: int):
        if order % 4:
            raise ValueError("cyclotomic order must be divisible by 4")
        self.order = order
        self.name = f"Q(zeta_{order})"

    def zero(self):
        return Cyclotomic.zero(self.order)

    def one(self):
        return Cyclotomic.one(self.order)

    def from_int(self, n):
        return Cyclotomic.from_rational(self.order, n)

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def coerce(self, x):
        return Cyclotomic.coerce(self.order, x)

    def zeta(self, k: int = 1):
        return Cyclotomic.zeta(self.order, k)

    def degree(self) -> int:
        return euler_phi(self.order)


QQ = RationalField()
QI = GaussianField()
QS = RatFunField()

_CYC_CACHE: dict[int, CyclotomicField] = {}


def cyclotomic_field(order: int) -> CyclotomicField:
    f = _CYC_CACHE.get(order)
    if f is None:
        f = _CYC_CACHE[order] = CyclotomicField(order)
    return f
