"""Exact arithmetic in cyclotomic fields Q(zeta_M) with 4 | M.

Elements are rational coordinate vectors in the power basis
1, zeta, ..., zeta^(phi(M)-1) modulo the M-th cyclotomic polynomial.
The order is required to be divisible by 4 so that i = zeta^(M/4)
lives in the field and Q(i)-scalars embed; this also keeps the
modulus irreducible over the chosen coefficient field Q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .gaussian import GaussianRational


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficient tuple of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    # x^m - 1 divided by the product of Phi_d for proper divisors d
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _int_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple:
    """Row j = coefficients of x^(phi+j) mod Phi_m, for j up to phi-2."""
    phi_poly = cyclotomic_poly(m)
    phi = len(phi_poly) - 1
    rows = []
    # x^phi = -(lower part of Phi) since Phi is monic
    cur = [-c for c in phi_poly[:phi]]
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        # multiply by x, reduce the overflow term with row 0
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [a + top * b for a, b in zip(cur, rows[0])]
        rows.append(tuple(cur))
    return tuple(rows)


class Cyclotomic:
    __slots__ = ("order", "co")

    def __init__(self, order: int, co):
        if order % 4:
            raise ValueError("cyclotomic order must be divisible by 4")
        self.order = order
        phi = euler_phi(order)
        co = list(co)
        if len(co) != phi:
            raise ValueError(f"need {phi} coordinates for order {order}")
        self.co = [x if isinstance(x, Fraction) else Fraction(x) for x in co]

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(order: int) -> "Cyclotomic":
        return Cyclotomic(order, [0] * euler_phi(order))

    @staticmethod
    def one(order: int) -> "Cyclotomic":
        co = [0] * euler_phi(order)
        co[0] = 1
        return Cyclotomic(order, co)

    @staticmethod
    def from_rational(order: int, v) -> "Cyclotomic":
        co = [Fraction(0)] * euler_phi(order)
        co[0] = Fraction(v)
        return Cyclotomic(order, co)

    @staticmethod
    def zeta(order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order^k."""
        k %= order
        phi = euler_phi(order)
        if k < phi:
            co = [0] * phi
            co[k] = 1
            return Cyclotomic(order, co)
        out = _reduce_power(order, k)
        return Cyclotomic(order, out)

    @staticmethod
    def from_gaussian(order: int, g) -> "Cyclotomic":
        g = GaussianRational.coerce(g)
        out = Cyclotomic.from_rational(order, g.re)
        if g.im:
            out = out + Cyclotomic.zeta(order, order // 4) * Cyclotomic.from_rational(order, g.im)
        return out

    @staticmethod
    def coerce(order: int, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            if x.order == order:
                return x
            return x.promote(order)
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(order, x)
        if isinstance(x, GaussianRational):
            return Cyclotomic.from_gaussian(order, x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.co)

    def __bool__(self) -> bool:
        return any(self.co)

    def is_rational(self) -> bool:
        return not any(self.co[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return self.co[0]

    def to_gaussian(self) -> GaussianRational:
        """Express in Q(i) when possible, else raise."""
        i_idx = self.order // 4
        phi = euler_phi(self.order)
        re = self.co[0]
        im = Fraction(0)
        for k in range(1, phi):
            if k == i_idx:
                im = self.co[k]
            elif self.co[k]:
                # try the slow route: compare against re + im*i is hopeless here
                raise ValueError("element does not lie in Q(i) power basis slots")
        return GaussianRational(re, im)

    # -- ring operations -----------------------------------------------------

    def _chk(self, other) -> "Cyclotomic":
        other = Cyclotomic.coerce(self.order, other)
        if other.order != self.order:
            raise ValueError("mixed cyclotomic orders; promote explicitly")
        return other

    def __add__(self, other):
        other = self._chk(other)
        return Cyclotomic(self.order, [a + b for a, b in zip(self.co, other.co)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.co])

    def __sub__(self, other):
        other = self._chk(other)
        return Cyclotomic(self.order, [a - b for a, b in zip(self.co, other.co)])

    def __rsub__(self, other):
        return self._chk(other) - self

    def __mul__(self, other):
        other = self._chk(other)
        phi = len(self.co)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.co):
            if not a:
                continue
            for j, b in enumerate(other.co):
                if b:
                    conv[i + j] += a * b
        rows = _reduction_rows(self.order)
        out = conv[:phi]
        for e in range(2 * phi - 2, phi - 1, -1):
            c = conv[e]
            if c:
                row = rows[e - phi]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return Cyclotomic(self.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        mod = [Fraction(c) for c in cyclotomic_poly(self.order)]
        a = list(self.co)
        inv = _poly_modinv(a, mod)
        phi = euler_phi(self.order)
        inv = inv + [Fraction(0)] * (phi - len(inv))
        return Cyclotomic(self.order, inv[:phi])

    def __truediv__(self, other):
        return self * self._chk(other).inverse()

    def __rtruediv__(self, other):
        return self._chk(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Cyclotomic) and other.order != self.order:
            return NotImplemented
        try:
            other = self._chk(other)
        except TypeError:
            return NotImplemented
        return self.co == other.co

    def __hash__(self):
        return hash((self.order, tuple(self.co)))

    # -- field moves -----------------------------------------------------------

    def promote(self, bigger: int) -> "Cyclotomic":
        """Embed into Q(zeta_bigger) for order | bigger."""
        if bigger % self.order:
            raise ValueError("target order must be a multiple of the current order")
        step = bigger // self.order
        out = Cyclotomic.zero(bigger)
        for k, c in enumerate(self.co):
            if c:
                out = out + Cyclotomic.zeta(bigger, k * step) * Cyclotomic.from_rational(bigger, c)
        return out

    def conjugate_power(self, t: int) -> "Cyclotomic":
        """Galois action zeta -> zeta^t for gcd(t, order) = 1."""
        from math import gcd

        if gcd(t, self.order) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        out = Cyclotomic.zero(self.order)
        for k, c in enumerate(self.co):
            if c:
                out = out + Cyclotomic.zeta(self.order, (k * t) % self.order) * Cyclotomic.from_rational(self.order, c)
        return out

    # -- display ------------------------------------------------------------------

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.co!r})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.co):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{k}" if k > 1 else "z"
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def _reduce_power(order: int, k: int) -> list:
    """Coordinates of zeta^k for phi <= k < order."""
    phi = euler_phi(order)
    rows = _reduction_rows(order)
    if k - phi < len(rows):
        return [Fraction(c) for c in rows[k - phi]]
    # k beyond cached rows: split the power and multiply in the field
    half = Cyclotomic.zeta(order, k // 2)
    rem = Cyclotomic.zeta(order, k - k // 2)
    return (half * rem).co


def _int_divexact(a: list, b: list) -> list:
    """Exact division of integer polynomial lists (b monic up to sign)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(out) - 1, -1, -1):
        c = a[len(b) - 1 + k]
        if c % lead:
            raise ValueError("inexact integer polynomial division")
        c //= lead
        out[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ValueError("inexact integer polynomial division")
    return out


def _poly_modinv(a: list, mod: list) -> list:
    """Inverse of a modulo mod over Q via extended Euclid."""
    r0, r1 = list(mod), _frac_trim(list(a))
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = _frac_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _frac_sub(t0, _frac_mul(q, t1))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo the cyclotomic polynomial")
    inv_lead = 1 / r0[0]
    return [c * inv_lead for c in t0]


def _frac_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _frac_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0)) for i in range(n)]
    return _frac_trim(out)


def _frac_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _frac_trim(out)


def _frac_divmod(a: list, b: list):
    a = list(a)
    if not b:
        raise ZeroDivisionError
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _frac_trim(a)
    binv = 1 / b[-1]
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[db + k] * binv
        if c:
            q[k] = c
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _frac_trim(q), _frac_trim(a)
