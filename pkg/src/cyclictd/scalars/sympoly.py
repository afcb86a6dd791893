"""Sparse multivariate polynomials over an arbitrary coefficient ring.

Used for symbolic integer parameters (sequence index n, family
parameters g, h, rho1, ...) and for formal unit symbols: a symbol
registered with modulus m satisfies U^m = 1, so exponents reduce
modulo m. Monomial keys are sorted tuples of (name, exponent).
"""

from __future__ import annotations

from .rings import Ring


class SymPolyRing(Ring):
    def __init__(self, base: Ring, mods: dict | None = None):
        self.base = base
        self.mods = dict(mods or {})
        self.name = f"{base.name}[sym]"

    def zero(self):
        return SymPoly(self, {})

    def one(self):
        return SymPoly(self, {(): self.base.one()})

    def from_int(self, n):
        return SymPoly(self, {(): self.base.from_int(n)}) if n else self.zero()

    def sym(self, name: str, exp: int = 1):
        key = self._norm_key(((name, exp),))
        return SymPoly(self, {key: self.base.one()} if key is not None else {})

    def const(self, v):
        v = self.base.coerce(v) if not self._is_base(v) else v
        return SymPoly(self, {(): v} if not self.base.is_zero(v) else {})

    def _is_base(self, v):
        try:
            return not isinstance(v, SymPoly) and self.base.coerce(v) is v
        except TypeError:
            return False

    def _norm_key(self, items):
        """Sort, merge and mod-reduce a monomial; None means it collapsed to 1."""
        acc: dict[str, int] = {}
        for name, e in items:
            acc[name] = acc.get(name, 0) + e
        out = []
        for name in sorted(acc):
            e = acc[name]
            m = self.mods.get(name)
            if m:
                e %= m
            elif e < 0:
                raise ValueError(f"negative exponent for non-unit symbol {name}")
            if e:
                out.append((name, e))
        return tuple(out)

    def is_zero(self, a):
        return not a.t

    def eq(self, a, b):
        return a.t == b.t

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a.is_constant():
            raise ZeroDivisionError("only constants are invertible in a polynomial ring")
        return self.const(self.base.inv(a.constant_value()))

    def coerce(self, x):
        if isinstance(x, SymPoly):
            if x.ring is self:
                return x
            if x.ring.base is self.base:
                return SymPoly(self, dict(x.t))
            raise TypeError("SymPoly over a different base ring")
        return self.const(self.base.coerce(x))


class SymPoly:
    __slots__ = ("ring", "t")

    def __init__(self, ring: SymPolyRing, terms: dict):
        self.ring = ring
        self.t = terms

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.t

    def __bool__(self):
        return bool(self.t)

    def is_constant(self) -> bool:
        return not self.t or set(self.t) == {()}

    def constant_value(self):
        if not self.t:
            return self.ring.base.zero()
        if set(self.t) != {()}:
            raise ValueError("not a constant")
        return self.t[()]

    def symbols(self) -> set:
        return {name for key in self.t for name, _ in key}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.t)
        base = self.ring.base
        for k, v in other.t.items():
            w = t.get(k)
            if w is None:
                t[k] = v
            else:
                w = base.add(w, v)
                if base.is_zero(w):
                    del t[k]
                else:
                    t[k] = w
        return SymPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        base = self.ring.base
        return SymPoly(self.ring, {k: base.neg(v) for k, v in self.t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        base = self.ring.base
        t: dict = {}
        for k1, v1 in self.t.items():
            for k2, v2 in other.t.items():
                k = self.ring._norm_key(k1 + k2)
                p = base.mul(v1, v2)
                w = t.get(k)
                if w is None:
                    w = p
                else:
                    w = base.add(w, p)
                if base.is_zero(w):
                    t.pop(k, None)
                else:
                    t[k] = w
        return SymPoly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        return self * self.ring.inv(self._coerce(other))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.t == other.t

    def __hash__(self):
        return hash(frozenset((k, str(v)) for k, v in self.t.items()))

    # -- structure ----------------------------------------------------------

    def subs(self, name: str, value):
        """Substitute a value (base element, int or SymPoly) for a symbol."""
        if not isinstance(value, SymPoly):
            value = self.ring.coerce(value)
        out = self.ring.zero()
        for key, coeff in self.t.items():
            term = SymPoly(self.ring, {tuple((n, e) for n, e in key if n != name): coeff})
            e = dict(key).get(name, 0)
            if e:
                term = term * value**e
            out = out + term
        return out

    def as_poly_in(self, name: str) -> dict:
        """Exponent -> SymPoly coefficient, viewing self in one symbol."""
        out: dict[int, SymPoly] = {}
        for key, coeff in self.t.items():
            e = dict(key).get(name, 0)
            rest = tuple((n, x) for n, x in key if n != name)
            cur = out.get(e, self.ring.zero())
            out[e] = cur + SymPoly(self.ring, {rest: coeff})
        return {e: p for e, p in out.items() if not p.is_zero()}

    def degree_in(self, name: str) -> int:
        degs = [dict(key).get(name, 0) for key in self.t]
        return max(degs) if degs else 0

    def coeff_of(self, name: str, e: int) -> "SymPoly":
        return self.as_poly_in(name).get(e, self.ring.zero())

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        return f"SymPoly({self.t!r})"

    def __str__(self):
        if not self.t:
            return "0"
        parts = []
        for key in sorted(self.t, key=lambda k: (sum(e for _, e in k), k)):
            coeff = self.ring.base.fmt(self.t[key])
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in key)
            if not mono:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(mono)
            elif coeff == "-1":
                parts.append(f"-{mono}")
            else:
                coeff_s = f"({coeff})" if ("+" in coeff[1:] or "-" in coeff[1:] or "/" in coeff) else coeff
                parts.append(f"{coeff_s}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
