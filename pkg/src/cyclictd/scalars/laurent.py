"""Laurent polynomials in the half-step variable s over Q(i).

The deformation parameter q is represented as s^2 throughout, so every
scalar that mixes integer and half-integer powers of q lives here as a
plain Laurent polynomial in s. Internally a sparse dict {exponent: coeff}
with nonzero GaussianRational coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import GaussianRational, ONE as G_ONE, ZERO as G_ZERO


class LaurentPoly:
    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = GaussianRational.coerce(v)
                if v:
                    c[int(k)] = v
        self.c = c

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(v) -> "LaurentPoly":
        return LaurentPoly({0: v})

    @staticmethod
    def s_power(k: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly({k: coeff})

    @staticmethod
    def q_power(k: int, coeff=1) -> "LaurentPoly":
        # q = s^2
        return LaurentPoly({2 * k: coeff})

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- predicates / shape -------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c.get(0) == G_ONE

    def valuation(self) -> int:
        """Lowest exponent present; 0 for the zero polynomial."""
        return min(self.c) if self.c else 0

    def degree(self) -> int:
        return max(self.c) if self.c else 0

    def is_constant(self) -> bool:
        return not self.c or set(self.c) == {0}

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.c.get(0, G_ZERO)

    def coeff(self, k: int) -> GaussianRational:
        return self.c.get(k, G_ZERO)

    def even_only(self) -> bool:
        """True when only even s-powers occur, i.e. the scalar lives in q."""
        return all(k % 2 == 0 for k in self.c)

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        c = dict(self.c)
        for k, v in other.c.items():
            w = c.get(k)
            if w is None:
                c[k] = v
            else:
                w = w + v
                if w:
                    c[k] = w
                else:
                    del c[k]
        out = LaurentPoly()
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly()
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if not self.c or not other.c:
            return LaurentPoly()
        c: dict[int, GaussianRational] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                p = v1 * v2
                w = c.get(k)
                if w is None:
                    c[k] = p
                else:
                    w = w + p
                    if w:
                        c[k] = w
                    else:
                        del c[k]
        out = LaurentPoly()
        out.c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RatFun")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by s^k."""
        out = LaurentPoly()
        out.c = {e + k: v for e, v in self.c.items()}
        return out

    def __eq__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    # -- calculus ------------------------------------------------------

    def d_ds(self) -> "LaurentPoly":
        out = LaurentPoly()
        out.c = {k - 1: v * k for k, v in self.c.items() if k != 0}
        return out

    # -- substitution --------------------------------------------------

    def eval_gaussian(self, s_val: GaussianRational) -> GaussianRational:
        tot = G_ZERO
        for k, v in self.c.items():
            tot = tot + v * s_val**k
        return tot

    def eval_ring(self, s_val, embed, ring):
        """Evaluate at s = s_val in another ring.

        embed maps a GaussianRational into the target ring; s_val must be
        invertible there when negative exponents occur.
        """
        if not self.c:
            return ring.zero()
        tot = ring.zero()
        pows = {}
        for k in sorted(self.c):
            if k not in pows:
                pows[k] = ring.pow(s_val, k)
            tot = ring.add(tot, ring.mul(embed(self.c[k]), pows[k]))
        return tot

    def substitute_s_power(self, m: int) -> "LaurentPoly":
        """s -> s^m, i.e. exponent dilation."""
        out = LaurentPoly()
        out.c = {k * m: v for k, v in self.c.items()}
        return out

    def q_to_qinv(self) -> "LaurentPoly":
        """s -> s^(-1), the bar involution q -> q^(-1)."""
        return self.substitute_s_power(-1)

    # -- division ------------------------------------------------------

    def divexact(self, other) -> "LaurentPoly":
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divmod_poly(self, other):
        """Division with remainder, treating both as poly * s^valuation."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        sv, ov = self.valuation(), other.valuation()
        a = _to_list(self.shift(-sv))
        b = _to_list(other.shift(-ov))
        q, r = _list_divmod(a, b)
        qp = _from_list(q).shift(sv - ov)
        rp = _from_list(r).shift(sv)
        return qp, rp

    def gcd(self, other) -> "LaurentPoly":
        """Monic gcd of the ordinary parts; s-power factors are units here."""
        other = LaurentPoly.coerce(other)
        a = _to_list(self.shift(-self.valuation())) if self.c else []
        b = _to_list(other.shift(-other.valuation())) if other.c else []
        while b:
            _, r = _list_divmod(a, b)
            a, b = b, r
        if not a:
            return LaurentPoly()
        lead = a[-1]
        out = _from_list([x / lead for x in a])
        return out

    def sqrt(self):
        """Exact square root as a Laurent polynomial, or None."""
        if self.is_zero():
            return LaurentPoly()
        v = self.valuation()
        if v % 2:
            return None
        a = _to_list(self.shift(-v))
        n = len(a) - 1
        if n % 2:
            return None
        lead = a[-1].sqrt()
        if lead is None:
            return None
        m = n // 2
        b = [G_ZERO] * (m + 1)
        b[m] = lead
        inv2l = (lead + lead).inverse()
        for k in range(m - 1, -1, -1):
            # coefficient of s^(k+m) in b^2 must match a[k+m]
            acc = G_ZERO
            for j in range(k + 1, m):
                t = k + m - j
                if 0 <= t <= m:
                    acc = acc + b[j] * b[t]
            b[k] = (a[k + m] - acc) * inv2l
        cand = _from_list(b).shift(v // 2)
        return cand if cand * cand == self else None

    # -- display -------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.c!r})"

    def __str__(self):
        from .grammar import format_laurent

        return format_laurent(self)


def _to_list(p: LaurentPoly) -> list:
    """Dense coefficient list for an ordinary polynomial (valuation >= 0)."""
    if p.is_zero():
        return []
    d = p.degree()
    if p.valuation() < 0:
        raise ValueError("negative valuation in dense conversion")
    out = [G_ZERO] * (d + 1)
    for k, v in p.c.items():
        out[k] = v
    return out


def _from_list(a: list) -> LaurentPoly:
    return LaurentPoly({k: v for k, v in enumerate(a) if v})


def _list_divmod(a: list, b: list):
    """Polynomial long division over Q(i) on dense lists."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    a = list(a)
    binv = b[-1].inverse()
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], _trim(a)
    q = [G_ZERO] * (da - db + 1)
    for k in range(da - db, -1, -1):
        coef = a[db + k] * binv
        if coef:
            q[k] = coef
            for j in range(db + 1):
                a[k + j] = a[k + j] - coef * b[j]
    return _trim(q), _trim(a)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
S = LaurentPoly.s_power(1)
Q = LaurentPoly.q_power(1)
