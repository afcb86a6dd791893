"""Truncated expansions around a root of unity.

A scalar f(s) is expanded on the curve q = zeta * exp(eps), i.e.
s = zeta_(2M') * exp(eps/2) in the half-step variable, so that

    s^k  ->  zeta^k * sum_j (k/2)^j eps^j / j!

with zeta the chosen primitive M-th root of unity in s. The limit
q -> zeta exists exactly when no negative eps-order survives, and then
equals the eps^0 coefficient. Coefficients live in Q(zeta_M) or in a
polynomial ring over it when formal parameters are present.

EpsSeries tracks a precision bound: coefficients are exact for orders
strictly below `prec`. Exact (polynomial) series use prec = INF.
"""

from __future__ import annotations

import os
from fractions import Fraction

from ..errors import (
    BranchAmbiguityError,
    DivergentLimitError,
    PoleAtRootError,
    PrecisionError,
)
from .cyclotomic import Cyclotomic
from .laurent import LaurentPoly
from .ratfun import RatFun
from .rings import Ring, cyclotomic_field
from .sympoly import SymPoly, SymPolyRing

INF = float("inf")

DEFAULT_ORDER_ENV = "CYCLICTD_SERIES_ORDER"


def default_series_order() -> int:
    try:
        k = int(os.environ.get(DEFAULT_ORDER_ENV, "4"))
    except ValueError:
        k = 4
    return max(k, 1)


class EpsSeries:
    __slots__ = ("ring", "lead", "co", "prec")

    def __init__(self, ring: Ring, lead: int, co: list, prec):
        # strip exact leading zeros so co[0] != 0 whenever co is nonempty
        while co and ring.is_zero(co[0]):
            co = co[1:]
            lead += 1
        if not co:
            lead = prec if prec is not INF else 0
        self.ring = ring
        self.lead = lead
        self.co = co
        self.prec = prec

    # -- builders ----------------------------------------------------

    @staticmethod
    def constant(ring: Ring, value) -> "EpsSeries":
        return EpsSeries(ring, 0, [value], INF)

    @staticmethod
    def zero(ring: Ring) -> "EpsSeries":
        return EpsSeries(ring, 0, [], INF)

    # -- inspection -----------------------------------------------------

    def is_zero_to_prec(self) -> bool:
        return not self.co

    def coeff(self, j: int):
        """Coefficient of eps^j; only meaningful for j < prec."""
        if j >= self.prec:
            raise PrecisionError(f"coefficient at order {j} is beyond precision {self.prec}")
        if self.co and self.lead <= j < self.lead + len(self.co):
            return self.co[j - self.lead]
        return self.ring.zero()

    def lead_order(self) -> int:
        if not self.co:
            raise PrecisionError(
                "series is zero to working precision; raise the truncation order"
            )
        return self.lead

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "EpsSeries") -> "EpsSeries":
        ring = self.ring
        prec = min(self.prec, other.prec)
        if not self.co:
            return EpsSeries(ring, other.lead, list(other.co), prec)
        if not other.co:
            return EpsSeries(ring, self.lead, list(self.co), prec)
        lead = min(self.lead, other.lead)
        end = max(self.lead + len(self.co), other.lead + len(other.co))
        if prec is not INF:
            end = min(end, prec)
        co = []
        for j in range(lead, end):
            a = self.co[j - self.lead] if self.lead <= j < self.lead + len(self.co) else ring.zero()
            b = other.co[j - other.lead] if other.lead <= j < other.lead + len(other.co) else ring.zero()
            co.append(ring.add(a, b))
        return EpsSeries(ring, lead, co, prec)

    def __neg__(self):
        return EpsSeries(self.ring, self.lead, [self.ring.neg(c) for c in self.co], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "EpsSeries") -> "EpsSeries":
        ring = self.ring
        if not self.co or not other.co:
            # an empty series with infinite precision is exactly zero
            if (not self.co and self.prec is INF) or (not other.co and other.prec is INF):
                return EpsSeries.zero(ring)
            if not self.co and not other.co:
                prec = self.prec + other.prec
            elif not self.co:
                prec = self.prec + other.lead
            else:
                prec = other.prec + self.lead
            return EpsSeries(ring, 0, [], prec)
        lead = self.lead + other.lead
        prec = min(
            self.prec + other.lead if self.prec is not INF else INF,
            other.prec + self.lead if other.prec is not INF else INF,
        )
        end = self.lead + len(self.co) + other.lead + len(other.co) - 1
        if prec is not INF:
            end = min(end, prec)
        n = end - lead
        co = [ring.zero() for _ in range(n)]
        for i, a in enumerate(self.co):
            if ring.is_zero(a):
                continue
            for j, b in enumerate(other.co):
                t = i + j
                if t >= n:
                    break
                co[t] = ring.add(co[t], ring.mul(a, b))
        return EpsSeries(ring, lead, co, prec)

    def scale(self, c) -> "EpsSeries":
        ring = self.ring
        if ring.is_zero(c):
            return EpsSeries.zero(ring)
        return EpsSeries(ring, self.lead, [ring.mul(c, a) for a in self.co], self.prec)

    def inverse(self) -> "EpsSeries":
        ring = self.ring
        if not self.co:
            raise ZeroDivisionError(
                "cannot invert a series that is zero to working precision"
            )
        c0 = self.co[0]
        c0inv = ring.inv(c0)
        if self.prec is INF:
            if len(self.co) == 1:
                return EpsSeries(ring, -self.lead, [c0inv], INF)
            raise PrecisionError(
                "inverting an exact polynomial series needs a truncation order; "
                "multiply by a truncated series first or expand explicitly"
            )
        rel = self.prec - self.lead  # number of reliable relative coefficients
        n = int(rel)
        inv = [ring.zero() for _ in range(n)]
        inv[0] = c0inv
        for k in range(1, n):
            acc = ring.zero()
            for j in range(1, k + 1):
                a = self.co[j] if j < len(self.co) else ring.zero()
                if not ring.is_zero(a):
                    acc = ring.add(acc, ring.mul(a, inv[k - j]))
            inv[k] = ring.neg(ring.mul(c0inv, acc))
        return EpsSeries(ring, -self.lead, inv, self.prec - 2 * self.lead)

    def __truediv__(self, other: "EpsSeries") -> "EpsSeries":
        return self * other.inverse()

    def __pow__(self, n: int) -> "EpsSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out = EpsSeries.constant(self.ring, self.ring.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- the point of it all --------------------------------------------------

    def limit(self):
        """Value at eps -> 0, i.e. the limit at the root of unity."""
        if not self.co:
            if self.prec <= 0:
                raise PrecisionError(
                    "series vanished to working precision before order 0; "
                    "raise the truncation order"
                )
            return self.ring.zero()
        if self.lead < 0:
            raise DivergentLimitError(
                f"no finite limit: leading order {self.lead}",
                lead_order=self.lead,
                lead_coeff=self.co[0],
            )
        if self.prec <= 0:
            raise PrecisionError("series precision does not reach order 0")
        return self.coeff(0)

    def __repr__(self):
        return f"EpsSeries(lead={self.lead}, co={[str(c) for c in self.co]}, prec={self.prec})"


# -- policies ------------------------------------------------------------------


class BranchPolicy:
    """Branch bookkeeping for q^(c*g) phases with integer parameters g.

    At a primitive 2N-th root of unity in q the phase of q^(c*g) is the
    formal unit (zeta_q^c)^g, which is concrete exactly when c = 0 mod 2N.
    A policy fixes the q-root period 2N and optionally assigns concrete
    integer values to named parameters; unassigned parameters keep their
    phases as formal unit symbols U_<name> with U^(2N) = 1.
    """

    def __init__(self, period: int, assignments: dict | None = None):
        if period <= 0:
            raise ValueError("period must be a positive integer")
        self.period = period
        self.assignments = dict(assignments or {})

    @staticmethod
    def for_order(m: int, assignments: dict | None = None) -> "BranchPolicy":
        # m is the s-order, divisible by 4; q has order m/2
        return BranchPolicy(m // 2, assignments)

    def unit_symbol(self, name: str) -> str:
        return f"U_{name}"

    def describe(self) -> dict:
        return {"period": self.period, "assignments": dict(self.assignments)}

    def __repr__(self):
        return f"BranchPolicy(period={self.period}, assignments={self.assignments})"


# -- expansions ------------------------------------------------------------------


def _factorials(n: int) -> list:
    out = [1]
    for k in range(1, n + 1):
        out.append(out[-1] * k)
    return out


def series_of_laurent(p: LaurentPoly, order: int, K: int, ring: Ring) -> EpsSeries:
    """Expand a Laurent polynomial in s at s = zeta_(2*order)... see module doc.

    `ring` must contain Q(zeta_order): either the cyclotomic field itself
    or a SymPolyRing over it.
    """
    if p.is_zero():
        return EpsSeries.zero(ring)
    fact = _factorials(K)
    zpow: dict[int, object] = {}
    co = [ring.zero() for _ in range(K + 1)]
    base = cyclotomic_field(order)
    for k, c in p.c.items():
        zk = zpow.get(k)
        if zk is None:
            zk = ring.coerce(base.zeta(k % order))
            zpow[k] = zk
        cc = ring.mul(ring.coerce(c), zk)
        half = Fraction(k, 2)
        pw = Fraction(1)
        for j in range(K + 1):
            if pw:
                co[j] = ring.add(co[j], ring.mul(cc, ring.coerce(Fraction(pw, fact[j]))))
            pw *= half
    return EpsSeries(ring, 0, co, K + 1)


def _root_orders(p: LaurentPoly, order: int) -> int:
    """Vanishing order of p at s = zeta_order (0 if nonzero there)."""
    base = cyclotomic_field(order)
    z = base.zeta(1)
    cur = p
    m = 0
    while True:
        val = cur.eval_ring(z, base.coerce, base)
        if not base.is_zero(val):
            return m
        m += 1
        if m > p.degree() - p.valuation() + 1:
            raise ValueError("polynomial vanished beyond its degree; zero input?")
        cur = cur.d_ds()


def series_of_ratfun(f: RatFun, order: int, K: int | None = None, ring: Ring | None = None) -> EpsSeries:
    """Expansion of a rational function at the root, with enough terms.

    The truncation is raised automatically so that numerator and
    denominator vanishing orders are both resolved; K is the number of
    terms carried beyond that.
    """
    if K is None:
        K = default_series_order()
    if ring is None:
        ring = cyclotomic_field(order)
    if f.is_zero():
        return EpsSeries.zero(ring)
    dord = 0 if f.den.is_one() else _root_orders(f.den, order)
    nord = _root_orders(f.num, order)
    work = K + nord + dord
    num = series_of_laurent(f.num, order, work, ring)
    if f.den.is_one():
        return num
    den = series_of_laurent(f.den, order, work, ring)
    return num / den


def value_at_root(f: RatFun, order: int):
    """Direct evaluation at s = zeta_order; raises PoleAtRootError on poles."""
    base = cyclotomic_field(order)
    z = base.zeta(1)
    if not f.den.is_one():
        d = f.den.eval_ring(z, base.coerce, base)
        if base.is_zero(d):
            s = series_of_ratfun(f, order)
            raise PoleAtRootError(
                f"pole of order {-s.lead_order()} at the chosen root", lead_order=s.lead_order()
            )
        n = f.num.eval_ring(z, base.coerce, base)
        return n / d
    return f.num.eval_ring(z, base.coerce, base)


def limit_at_root(f: RatFun, order: int, K: int | None = None):
    """lim q -> zeta of f, exact; DivergentLimitError when it does not exist."""
    base = cyclotomic_field(order)
    z = base.zeta(1)
    if f.den.is_one():
        return f.num.eval_ring(z, base.coerce, base)
    d = f.den.eval_ring(z, base.coerce, base)
    if not base.is_zero(d):
        return f.num.eval_ring(z, base.coerce, base) / d
    return series_of_ratfun(f, order, K).limit()


# -- rational functions dressed with symbolic q-exponents -------------------------


class PhasedRatFun:
    """Finite sum of f_k(s) * q^(L_k) with L_k an integer linear form.

    L_k is a dict {parameter_name: integer coefficient}; the constant
    part of an exponent is kept inside f_k as a power of s. Supports the
    ring operations needed to evaluate polynomials with such scalars.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged: dict[tuple, RatFun] = {}
        for f, form in terms or []:
            key = tuple(sorted((n, c) for n, c in form.items() if c))
            cur = merged.get(key)
            f = RatFun.coerce(f)
            merged[key] = f if cur is None else cur + f
        self.terms = [(f, dict(k)) for k, f in merged.items() if not f.is_zero()]

    @staticmethod
    def const(f) -> "PhasedRatFun":
        return PhasedRatFun([(RatFun.coerce(f), {})])

    @staticmethod
    def q_linear(coeffs: dict, prefactor=1) -> "PhasedRatFun":
        """q^(sum c_k * name_k) times an optional RatFun prefactor."""
        return PhasedRatFun([(RatFun.coerce(prefactor), dict(coeffs))])

    @staticmethod
    def coerce(x) -> "PhasedRatFun":
        if isinstance(x, PhasedRatFun):
            return x
        return PhasedRatFun.const(RatFun.coerce(x))

    def is_zero(self) -> bool:
        return not self.terms

    def is_plain(self) -> bool:
        return all(not form for _, form in self.terms)

    def plain(self) -> RatFun:
        if not self.is_plain():
            raise BranchAmbiguityError(
                "symbolic q-exponents present", symbols=[n for _, f in self.terms for n in f]
            )
        out = RatFun.zero()
        for f, _ in self.terms:
            out = out + f
        return out

    def __add__(self, other):
        other = PhasedRatFun.coerce(other)
        return PhasedRatFun([(f, d) for f, d in self.terms] + [(f, d) for f, d in other.terms])

    __radd__ = __add__

    def __neg__(self):
        return PhasedRatFun([(-f, d) for f, d in self.terms])

    def __sub__(self, other):
        return self + (-PhasedRatFun.coerce(other))

    def __rsub__(self, other):
        return PhasedRatFun.coerce(other) - self

    def __mul__(self, other):
        other = PhasedRatFun.coerce(other)
        out = []
        for f1, d1 in self.terms:
            for f2, d2 in other.terms:
                d = dict(d1)
                for n, c in d2.items():
                    d[n] = d.get(n, 0) + c
                out.append((f1 * f2, d))
        return PhasedRatFun(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                f, d = self.terms[0]
                return PhasedRatFun([(f ** n, {k: n * c for k, c in d.items()})])
            raise ValueError("negative power of a phased sum")
        out = PhasedRatFun.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = PhasedRatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def subs(self, name: str, value: int) -> "PhasedRatFun":
        """Assign an integer value to one exponent parameter."""
        out = []
        for f, d in self.terms:
            c = d.get(name, 0)
            if c:
                d = {k: v for k, v in d.items() if k != name}
                f = f * RatFun.q_power(c * value)
            out.append((f, d))
        return PhasedRatFun(out)

    def parameters(self) -> set:
        return {n for _, d in self.terms for n in d}

    def __repr__(self):
        return f"PhasedRatFun({self.terms!r})"


def series_of_phased(
    pf: PhasedRatFun,
    order: int,
    policy: BranchPolicy,
    K: int | None = None,
    ring: SymPolyRing | None = None,
) -> EpsSeries:
    """Expand a phased scalar at the root, tracking formal unit phases.

    The result lives over a SymPolyRing whose symbols are the exponent
    parameters (polynomial growth from exp(c*g*eps)) and, for phases
    that stay ambiguous under the policy, formal units U_name of
    multiplicative order `policy.period`.
    """
    if K is None:
        K = default_series_order()
    if policy.period * 2 != order:
        raise ValueError(
            f"policy period {policy.period} does not match root order {order} (expect order/2)"
        )
    pf = _apply_assignments(pf, policy)
    base = cyclotomic_field(order)
    if ring is None:
        mods = {policy.unit_symbol(n): policy.period for n in pf.parameters()}
        ring = SymPolyRing(base, mods)
    else:
        for n in pf.parameters():
            ring.mods.setdefault(policy.unit_symbol(n), policy.period)
    total = EpsSeries.zero(ring)
    for f, form in pf.terms:
        fs = series_of_ratfun(f, order, K, ring)
        if not form:
            total = total + fs
            continue
        # phase part: product over parameters of (zeta^(2c))^g as unit or 1
        phase = ring.one()
        for n, c in sorted(form.items()):
            cr = c % policy.period
            if cr == 0:
                continue
            phase = phase * ring.sym(policy.unit_symbol(n), cr)
        # growth part: exp(eps * sum c_n g_n), coefficients polynomial in the g_n
        lin = ring.zero()
        for n, c in sorted(form.items()):
            lin = lin + ring.sym(n) * ring.from_int(c)
        expo = [ring.one()]
        for j in range(1, K + 1):
            expo.append(expo[-1] * lin * ring.coerce(Fraction(1, j)))
        co = [phase * e for e in expo]
        growth = EpsSeries(ring, 0, co, K + 1)
        total = total + fs * growth
    return total


def _apply_assignments(pf: PhasedRatFun, policy: BranchPolicy) -> PhasedRatFun:
    for name, val in policy.assignments.items():
        pf = pf.subs(name, int(val))
    return pf


def require_concrete(x):
    """Reject results that still carry formal unit symbols."""
    if isinstance(x, SymPoly):
        units = {s for s in x.symbols() if s.startswith("U_")}
        if units:
            raise BranchAmbiguityError(
                "result depends on unresolved branch phases", symbols=sorted(units)
            )
    return x
