"""Operator relation templates, residuals, and spectral band certificates.

Everything here works over an explicit coefficient ring.  A relation is
stored as a noncommutative polynomial in named operands; instantiating
it with matrices gives a single residual matrix whose exact vanishing
is the verdict.  Band certificates carry the parallel scalar statement:
a sandwich relation sum a_ij X^i Y^r X^j vanishes as soon as its
two-variable polynomial vanishes on all spectrum pairs inside the band
of Y, which is how every residual theorem in the source material is
proved.  The module also contains a small fixed-point rewriting engine
for algebras with an involution, used to check the implication from
the complementary Bannai-Ito (and dual -1 Hahn) relations to the
non-symmetric tridiagonal relations without picking a representation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import VerificationError
from .linalg import ExactMatrix
from .scalars import (
    CyclotomicField,
    QQ,
    QS,
    RatFun,
    RatFunField,
    Ring,
    q_number,
)


# ---------------------------------------------------------------------------
# noncommutative polynomials over a commutative coefficient ring

class NCPoly:
    """Finite sum of words in named generators with ring coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict | None = None):
        self.ring = ring
        cleaned = {}
        for word, coeff in (terms or {}).items():
            if not ring.is_zero(coeff):
                cleaned[tuple(word)] = coeff
        self.terms = cleaned

    @staticmethod
    def gen(ring: Ring, name: str) -> "NCPoly":
        return NCPoly(ring, {(name,): ring.one()})

    @staticmethod
    def const(ring: Ring, value) -> "NCPoly":
        return NCPoly(ring, {(): ring.coerce(value)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = self.ring.add(out.get(word, self.ring.zero()), coeff)
            if self.ring.is_zero(acc):
                out.pop(word, None)
            else:
                out[word] = acc
        return NCPoly(self.ring, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.ring, {w: self.ring.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        ring = self.ring
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                acc = ring.add(out.get(word, ring.zero()), ring.mul(c1, c2))
                if ring.is_zero(acc):
                    out.pop(word, None)
                else:
                    out[word] = acc
        return NCPoly(ring, out)

    def scale(self, c) -> "NCPoly":
        c = self.ring.coerce(c)
        if self.ring.is_zero(c):
            return NCPoly(self.ring, {})
        return NCPoly(self.ring, {w: self.ring.mul(v, c) for w, v in self.terms.items()})

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def anticommutator(self, other: "NCPoly") -> "NCPoly":
        return self * other + other * self

    def symbols(self) -> set:
        out = set()
        for word in self.terms:
            out.update(word)
        return out

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("NCPoly is mutable-by-construction; not hashable")

    def evaluate(self, mapping: dict) -> ExactMatrix:
        """Substitute matrices for the generators and sum the words."""
        mats = dict(mapping)
        dims = {m.n for m in mats.values()}
        rings = {id(m.ring) for m in mats.values()}
        if len(dims) != 1 or len(rings) != 1:
            raise ValueError("operand matrices must share dimension and ring")
        some = next(iter(mats.values()))
        n, ring = some.n, some.ring
        missing = self.symbols() - set(mats)
        if missing:
            raise ValueError(f"no matrix supplied for operands {sorted(missing)}")
        power_cache = {}

        def powered(sym: str, k: int) -> ExactMatrix:
            key = (sym, k)
            if key not in power_cache:
                power_cache[key] = mats[sym] ** k
            return power_cache[key]

        total = ExactMatrix.zeros(ring, n)
        eye = ExactMatrix.identity(ring, n)
        for word, coeff in self.terms.items():
            prod = eye
            i = 0
            while i < len(word):
                j = i
                while j < len(word) and word[j] == word[i]:
                    j += 1
                prod = prod * powered(word[i], j - i)
                i = j
            total = total + prod.scale(ring.coerce(coeff))
        return total

    def __repr__(self):
        if not self.terms:
            return "NCPoly(0)"
        bits = []
        for word, coeff in sorted(self.terms.items()):
            label = "*".join(word) if word else "1"
            bits.append(f"({self.ring.fmt(coeff)})*{label}")
        return "NCPoly(" + " + ".join(bits) + ")"


class RelationTemplate:
    """A named operator identity: instantiate the operands, get a residual."""

    __slots__ = ("name", "ring", "poly", "operands", "params")

    def __init__(self, name: str, ring: Ring, poly: NCPoly, operands: tuple,
                 params: dict | None = None):
        self.name = name
        self.ring = ring
        self.poly = poly
        self.operands = tuple(operands)
        self.params = dict(params or {})
        stray = poly.symbols() - set(self.operands)
        if stray:
            raise ValueError(f"template uses undeclared operands {sorted(stray)}")

    def residual(self, mapping: dict) -> ExactMatrix:
        for tag in self.operands:
            if tag not in mapping:
                raise ValueError(f"operand {tag!r} not supplied")
        some = next(iter(mapping.values()))
        if some.ring is not self.ring:
            raise ValueError(
                f"template {self.name} built over {self.ring.fmt(self.ring.one())!r}-ring "
                "but matrices live elsewhere"
            )
        return self.poly.evaluate(mapping)

    def max_degree(self) -> int:
        return self.poly.max_degree()

    def sandwich_coefficients(self, outer: str, middle: str, r: int = 1) -> dict:
        """Extract {(i, j): a_ij} when every word is outer^i middle^r outer^j.

        Raises ValueError when some word is not of that shape, so callers
        can rely on the sandwich reading being faithful.
        """
        out = {}
        for word, coeff in self.poly.terms.items():
            k = 0
            while k < len(word) and word[k] == outer:
                k += 1
            m = k
            while m < len(word) and word[m] == middle:
                m += 1
            if m - k != r or any(s != outer for s in word[m:]):
                raise ValueError(f"word {word} is not {outer}^i {middle}^{r} {outer}^j")
            out[(k, len(word) - m)] = coeff
        return out

    def __repr__(self):
        return f"RelationTemplate({self.name!r}, operands={self.operands})"


def relation_residual(template: RelationTemplate, X: ExactMatrix,
                      Y: ExactMatrix | None = None,
                      extra: dict | None = None) -> ExactMatrix:
    """Bind X (and Y, and any extra named matrices) and evaluate."""
    mapping = {template.operands[0]: X}
    if len(template.operands) > 1:
        if Y is None and template.operands[1] not in (extra or {}):
            raise ValueError(f"template {template.name} needs a second operand")
        if Y is not None:
            mapping[template.operands[1]] = Y
    mapping.update(extra or {})
    return template.residual(mapping)


def relation_holds(template: RelationTemplate, X: ExactMatrix,
                   Y: ExactMatrix | None = None,
                   extra: dict | None = None,
                   max_witnesses: int = 4):
    """(holds, witnesses): witnesses are nonzero residual entries."""
    res = relation_residual(template, X, Y, extra)
    ring = res.ring
    witnesses = []
    for i in range(res.n):
        for j in range(res.m):
            if not ring.is_zero(res[i, j]):
                witnesses.append((i, j, ring.fmt(res[i, j])))
                if len(witnesses) >= max_witnesses:
                    return False, witnesses
    return not witnesses, witnesses


# ---------------------------------------------------------------------------
# coefficient generators

def _default_q(ring: Ring):
    if isinstance(ring, RatFunField):
        return RatFun.q_power(1)
    if isinstance(ring, CyclotomicField):
        return ring.zeta(2 % ring.order)
    raise TypeError("cannot infer the q element; pass it explicitly")


def _default_q2(ring: Ring):
    q = _default_q(ring)
    return ring.mul(q, q)


def coeff_c(r: int, p: int, j: int, ring: Ring = QS, base=None):
    """Sandwich coefficient of the r-th higher-order relation family.

    `base` is the square of the deformation parameter; the default is
    the generic one for the ring.  The defining sum covers j up to
    r - p and the rest of the range 0..2(r-p)+1 comes from the
    palindromic symmetry of the coefficient list.
    """
    if not 0 <= p <= r:
        raise ValueError(f"p must lie in 0..{r}, got {p}")
    width = 2 * (r - p) + 1
    if not 0 <= j <= width:
        raise ValueError(f"j must lie in 0..{width}, got {j}")
    if j > r - p:
        j = width - j
    if base is None:
        base = _default_q2(ring)
    total = ring.zero()
    for k in range(j + 1):
        half = (j - k) // 2
        mult = comb(r - p - k, half) if r - p - k >= 0 else 0
        if mult == 0:
            continue
        total = ring.add(total, ring.mul(ring.from_int(mult),
                                         _disjoint_subset_sum(r, p, k, ring, base)))
    return total


def _disjoint_subset_sum(r: int, p: int, k: int, ring: Ring, base):
    """Sum over disjoint ordered subsets S1 (size p) and S2 (size k) of 1..r.

    Each S1 member s contributes the squared balanced integer [s]^2 at
    the given base; each S2 member contributes base^s + base^(-s),
    which is the ratio [2s]/[s] written as a Laurent polynomial so no
    division (and hence no 0/0 at roots of unity) ever occurs.
    """
    out = ring.zero()
    universe = tuple(range(1, r + 1))
    for s_one in combinations(universe, p):
        part = ring.one()
        for s in s_one:
            qs = q_number(s, base, ring)
            part = ring.mul(part, ring.mul(qs, qs))
        rest = tuple(s for s in universe if s not in s_one)
        for s_two in combinations(rest, k):
            term = part
            for s in s_two:
                term = ring.mul(term, ring.add(ring.pow(base, s), ring.pow(base, -s)))
            out = ring.add(out, term)
    return out


def coeff_d(N: int, p: int, k: int) -> Fraction:
    """binom(2N+1-2p, k) times the p-th elementary symmetric sum of 1..N squared."""
    if not 0 <= p <= N:
        raise ValueError(f"p must lie in 0..{N}, got {p}")
    width = 2 * N + 1 - 2 * p
    if not 0 <= k <= width:
        raise ValueError(f"k must lie in 0..{width}, got {k}")
    esym = sum((Fraction(_product_of_squares(sel)) for sel in
                combinations(range(1, N + 1), p)), Fraction(0))
    if p == 0:
        esym = Fraction(1)
    return Fraction(comb(width, k)) * esym


def _product_of_squares(sel) -> int:
    out = 1
    for s in sel:
        out *= s * s
    return out


# ---------------------------------------------------------------------------
# template builders: the two-generator families

def _gens(ring: Ring, names=("X", "Y")):
    return tuple(NCPoly.gen(ring, n) for n in names)


def q_commutator(a: NCPoly, b: NCPoly, q) -> NCPoly:
    ring = a.ring
    q = ring.coerce(q)
    return (a * b).scale(q) - (b * a).scale(ring.inv(q))


def td_templates(beta, gamma, gammastar, rho, rhostar, ring: Ring):
    """The two tridiagonal relations with explicit scalar parameters."""
    X, Y = _gens(ring)

    def one_side(A, B, g, rr):
        inner = A * A * B - (A * B * A).scale(beta) + B * A * A \
            - (A * B + B * A).scale(g) - B.scale(rr)
        return A.commutator(inner)

    params = {"beta": beta, "gamma": gamma, "gammastar": gammastar,
              "rho": rho, "rhostar": rhostar}
    return (RelationTemplate("td:first", ring, one_side(X, Y, gamma, rho), ("X", "Y"), params),
            RelationTemplate("td:second", ring, one_side(Y, X, gammastar, rhostar), ("X", "Y"), params))


def q_dolan_grady_templates(rho, rhostar, ring: Ring, q=None):
    """The defining pair of the q-deformed Dolan-Grady family."""
    if q is None:
        q = _default_q(ring)
    X, Y = _gens(ring)
    qinv = ring.inv(ring.coerce(q))

    def one_side(A, B, rr):
        nested = q_commutator(A, q_commutator(A, B, q), qinv)
        return A.commutator(nested) - A.commutator(B).scale(rr)

    params = {"rho": rho, "rhostar": rhostar, "q": q}
    return (RelationTemplate("qdg:first", ring, one_side(X, Y, rho), ("X", "Y"), params),
            RelationTemplate("qdg:second", ring, one_side(Y, X, rhostar), ("X", "Y"), params))


def _sandwich_ncpoly(ring: Ring, outer: str, middle: str, middle_power: int,
                     coeffs: dict) -> NCPoly:
    terms = {}
    for (i, j), coeff in coeffs.items():
        word = (outer,) * i + (middle,) * middle_power + (outer,) * j
        terms[word] = ring.coerce(coeff)
    return NCPoly(ring, terms)


def _alternating_coeffs(r: int, p: int, rho_p, ring: Ring, base, middle_total: int):
    """{(i, j): (-1)^(j+p) rho^p c_j} for j = 0..middle_total, i + j = middle_total."""
    out = {}
    for j in range(middle_total + 1):
        c = coeff_c(r, p, j, ring, base)
        sign = -1 if (j + p) % 2 else 1
        val = ring.mul(rho_p, c)
        out[(middle_total - j, j)] = val if sign > 0 else ring.neg(val)
    return out


def higher_qdg_templates(r: int, rho, rhostar, ring: Ring, base=None):
    """The r-th member of the higher-order family, both orientations."""
    if base is None:
        base = _default_q2(ring)

    def build(rr, outer, middle):
        coeffs = {}
        for p in range(r + 1):
            rho_p = ring.pow(ring.coerce(rr), p) if p else ring.one()
            for key, val in _alternating_coeffs(r, p, rho_p, ring, base,
                                                2 * r + 1 - 2 * p).items():
                coeffs[key] = ring.add(coeffs.get(key, ring.zero()), val)
        terms = {}
        for (i, j), coeff in coeffs.items():
            word = (outer,) * i + (middle,) * r + (outer,) * j
            terms[word] = ring.add(terms.get(word, ring.zero()), coeff)
        return NCPoly(ring, terms)

    params = {"r": r, "rho": rho, "rhostar": rhostar}
    return (RelationTemplate(f"hqdg:{r}:first", ring, build(rho, "X", "Y"), ("X", "Y"), params),
            RelationTemplate(f"hqdg:{r}:second", ring, build(rhostar, "Y", "X"), ("X", "Y"), params))


def serre_template(ring: Ring) -> RelationTemplate:
    """Degree-four alternating relation that replaces the q-pair when rho = 0."""
    X, Y = _gens(ring)
    poly = X * X * X * Y + X * X * Y * X - X * Y * X * X - Y * X * X * X
    return RelationTemplate("serre", ring, poly, ("X", "Y"))


def square_scalar_template(square, ring: Ring) -> RelationTemplate:
    """X^2 - square * 1: the operator squares to a scalar."""
    X = NCPoly.gen(ring, "X")
    poly = X * X - NCPoly.const(ring, square)
    return RelationTemplate("square-scalar", ring, poly, ("X",), {"square": square})


def polynomial_template(coefficients, ring: Ring, name: str = "polynomial") -> RelationTemplate:
    """sum coefficients[k] X^(deg-k): a one-operator polynomial identity."""
    X = NCPoly.gen(ring, "X")
    deg = len(coefficients) - 1
    poly = NCPoly(ring, {})
    for k, c in enumerate(coefficients):
        word = ("X",) * (deg - k)
        poly = poly + NCPoly(ring, {word: ring.coerce(c)})
    return RelationTemplate(name, ring, poly, ("X",))


def mixed_first_template(N: int, rho_i, ring: Ring, base=None) -> RelationTemplate:
    """Pair operator outside, divided operator once in the middle."""
    if base is None:
        base = _default_q2(ring)
    coeffs = {}
    for p in range(N):
        rho_p = ring.pow(ring.coerce(rho_i), p) if p else ring.one()
        for key, val in _alternating_coeffs(N - 1, p, rho_p, ring, base,
                                            2 * N - 1 - 2 * p).items():
            coeffs[key] = ring.add(coeffs.get(key, ring.zero()), val)
    poly = _sandwich_ncpoly(ring, "X", "Y", 1, coeffs)
    return RelationTemplate(f"mixed:{N}:first", ring, poly, ("X", "Y"),
                            {"N": N, "rho": rho_i})


def mixed_second_template(rho_iN, ring: Ring) -> RelationTemplate:
    """Divided operator outside in a cubic alternating pattern.

    The third term carries the square of the outer operator on the
    right, as the homogeneous degree of the other three terms dictates.
    """
    X, Y = _gens(ring)
    poly = X * X * X * Y - (X * X * Y * X).scale(ring.from_int(3)) \
        + (X * Y * X * X).scale(ring.from_int(3)) - Y * X * X * X \
        - X.commutator(Y).scale(rho_iN)
    return RelationTemplate("mixed:second", ring, poly, ("X", "Y"), {"rhoN": rho_iN})


def onsager_template(N: int, rho_iN, ring: Ring, name: str | None = None) -> RelationTemplate:
    """The degree-(2N+1) relation on the divided operators, one orientation."""
    coeffs = {}
    rho = ring.coerce(rho_iN)
    for p in range(N + 1):
        width = 2 * N + 1 - 2 * p
        rho_p = ring.pow(rho, p) if p else ring.one()
        for k in range(width + 1):
            d = coeff_d(N, p, k)
            val = ring.mul(rho_p, ring.coerce(d))
            if (k + p) % 2:
                val = ring.neg(val)
            key = (width - k, k)
            coeffs[key] = ring.add(coeffs.get(key, ring.zero()), val)
    poly = _sandwich_ncpoly(ring, "X", "Y", 1, coeffs)
    return RelationTemplate(name or f"onsager:{N}", ring, poly, ("X", "Y"),
                            {"N": N, "rhoN": rho_iN})


def askey_wilson_templates(beta, gamma, gammastar, rho, rhostar,
                           omega, eta, etastar, ring: Ring):
    """The quadratic-pair relations with inhomogeneous right-hand sides."""
    X, Y = _gens(ring)

    def one_side(A, B, g, gs, rr, e):
        return A * A * B - (A * B * A).scale(beta) + B * A * A \
            - (A * B + B * A).scale(g) - B.scale(rr) \
            - (A * A).scale(gs) - A.scale(omega) - NCPoly.const(ring, e)

    params = {"beta": beta, "gamma": gamma, "gammastar": gammastar,
              "rho": rho, "rhostar": rhostar, "omega": omega,
              "eta": eta, "etastar": etastar}
    return (RelationTemplate("aw:first", ring,
                             one_side(X, Y, gamma, gammastar, rho, eta), ("X", "Y"), params),
            RelationTemplate("aw:second", ring,
                             one_side(Y, X, gammastar, gamma, rhostar, etastar), ("X", "Y"), params))


def degrel_templates(gamma, rho02, ring: Ring):
    """Non-symmetric tridiagonal-algebra pair: X is the divided side, Y its partner."""
    X, Y = _gens(ring)
    first = X.commutator(
        X * X * Y - (X * Y * X).scale(ring.from_int(2)) + Y * X * X
        - (X * Y + Y * X).scale(gamma) - Y.scale(rho02))
    inner = (Y * Y * Y * Y * X) - (Y * Y * X * Y * Y).scale(ring.from_int(2)) + (X * Y * Y * Y * Y) \
        + (Y * Y * Y * X) - (Y * Y * X * Y) - (Y * X * Y * Y) + (X * Y * Y * Y) \
        - (Y * Y * X) - (Y * X * Y).scale(ring.from_int(2)) - (X * Y * Y) \
        - (Y * X) - (X * Y)
    second = Y.commutator(inner)
    params = {"gamma": gamma, "rho02": rho02}
    return (RelationTemplate("degrel:first", ring, first, ("X", "Y"), params),
            RelationTemplate("degrel:second", ring, second, ("X", "Y"), params))


def _involution_line(ring: Ring, k1: NCPoly, k2: NCPoly, rr: NCPoly, two_shift):
    """[k1, r]; {k2, r} - shift; r^2 - 1."""
    return [k1.commutator(rr),
            k2.anticommutator(rr) - NCPoly.const(ring, two_shift),
            rr * rr - NCPoly.const(ring, ring.one())]


def cbi_templates(d1, d2, d3, d4, d5, ring: Ring):
    """Five templates for the involution algebra behind the CBI family."""
    k1, k2, rr = _gens(ring, ("k1", "k2", "r"))
    two_d3 = ring.mul(ring.from_int(2), ring.coerce(d3))
    line = _involution_line(ring, k1, k2, rr, two_d3)
    second = k1.commutator(k1.commutator(k2)) \
        - k1.anticommutator(k2).scale(ring.inv(ring.from_int(2))) \
        + (k1.commutator(k2) * rr).scale(d2) \
        + (k1 * rr).scale(d3) - k2.scale(d1) \
        + rr.scale(ring.mul(ring.coerce(d1), ring.coerce(d3)))
    third = k2.commutator(k2.commutator(k1)) \
        - (k2 * k2).scale(ring.inv(ring.from_int(2))) \
        - (k2 * k2 * rr).scale(d2) \
        - (k1 * rr).scale(ring.mul(ring.from_int(2), ring.coerce(d3))) \
        - (k1.commutator(k2) * rr).scale(ring.mul(ring.from_int(2), ring.coerce(d3))) \
        - k1 - rr.scale(d4) - NCPoly.const(ring, d5)
    params = {"d1": d1, "d2": d2, "d3": d3, "d4": d4, "d5": d5}
    names = ("cbi:k1-r", "cbi:k2-r", "cbi:r-square", "cbi:second", "cbi:third")
    polys = line + [second, third]
    return [RelationTemplate(nm, ring, pl, ("k1", "k2", "r"), params)
            for nm, pl in zip(names, polys)]


def dual_hahn_templates(g1, g2, g3, g4, g5, ring: Ring):
    """The degenerate involution algebra: same line, no half-anticommutator."""
    k1, k2, rr = _gens(ring, ("k1", "k2", "r"))
    two_g3 = ring.mul(ring.from_int(2), ring.coerce(g3))
    line = _involution_line(ring, k1, k2, rr, two_g3)
    second = k1.commutator(k1.commutator(k2)) \
        + (k1.commutator(k2) * rr).scale(g2) \
        - k2.scale(g1) + rr.scale(ring.mul(ring.coerce(g1), ring.coerce(g3)))
    third = k2.commutator(k2.commutator(k1)) \
        - (k2 * k2 * rr).scale(g2) \
        - (k1 * rr).scale(ring.mul(ring.from_int(2), ring.coerce(g3))) \
        - (k1.commutator(k2) * rr).scale(ring.mul(ring.from_int(2), ring.coerce(g3))) \
        - k1 - rr.scale(g4) - NCPoly.const(ring, g5)
    params = {"g1": g1, "g2": g2, "g3": g3, "g4": g4, "g5": g5}
    names = ("hahn:k1-r", "hahn:k2-r", "hahn:r-square", "hahn:second", "hahn:third")
    polys = line + [second, third]
    return [RelationTemplate(nm, ring, pl, ("k1", "k2", "r"), params)
            for nm, pl in zip(names, polys)]


def rho_reduced(model) -> RatFun:
    """-b c (q^2 - q^-2)^2 from the eigenvalue coefficient functions."""
    b = RatFun.coerce(model.b)
    c = RatFun.coerce(model.c)
    dq2 = RatFun.q_power(2) - RatFun.q_power(-2)
    return -(b * c) * dq2 * dq2


# ---------------------------------------------------------------------------
# two-variable polynomials and band certificates

class TwoVarPoly:
    """Polynomial in commuting x, y with ring coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: dict | None = None):
        self.ring = ring
        cleaned = {}
        for key, val in (coeffs or {}).items():
            if not ring.is_zero(val):
                cleaned[(int(key[0]), int(key[1]))] = val
        self.coeffs = cleaned

    @staticmethod
    def variable(ring: Ring, which: str) -> "TwoVarPoly":
        if which == "x":
            return TwoVarPoly(ring, {(1, 0): ring.one()})
        if which == "y":
            return TwoVarPoly(ring, {(0, 1): ring.one()})
        raise ValueError("which must be 'x' or 'y'")

    @staticmethod
    def const(ring: Ring, value) -> "TwoVarPoly":
        return TwoVarPoly(ring, {(0, 0): ring.coerce(value)})

    def __add__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            acc = self.ring.add(out.get(key, self.ring.zero()), val)
            if self.ring.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return TwoVarPoly(self.ring, out)

    def __neg__(self) -> "TwoVarPoly":
        return TwoVarPoly(self.ring, {k: self.ring.neg(v) for k, v in self.coeffs.items()})

    def __sub__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        return self + (-other)

    def __mul__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        out = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                acc = self.ring.add(out.get(key, self.ring.zero()), self.ring.mul(v1, v2))
                if self.ring.is_zero(acc):
                    out.pop(key, None)
                else:
                    out[key] = acc
        return TwoVarPoly(self.ring, out)

    def scale(self, c) -> "TwoVarPoly":
        c = self.ring.coerce(c)
        return TwoVarPoly(self.ring, {k: self.ring.mul(v, c) for k, v in self.coeffs.items()})

    def evaluate(self, x, y):
        ring = self.ring
        x = ring.coerce(x)
        y = ring.coerce(y)
        total = ring.zero()
        for (i, j), val in self.coeffs.items():
            total = ring.add(total, ring.mul(val, ring.mul(ring.pow(x, i), ring.pow(y, j))))
        return total

    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TwoVarPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        bits = [f"({self.ring.fmt(v)})*x^{i}*y^{j}" for (i, j), v in sorted(self.coeffs.items())]
        return "TwoVarPoly(" + (" + ".join(bits) or "0") + ")"


def sandwich_poly_qdg(r: int, rho, ring: Ring, base=None) -> TwoVarPoly:
    """(x - y) prod_s (x^2 - (b^s + b^-s) x y + y^2 - [s]^2 rho), b the q square."""
    if base is None:
        base = _default_q2(ring)
    x = TwoVarPoly.variable(ring, "x")
    y = TwoVarPoly.variable(ring, "y")
    rho = ring.coerce(rho)
    out = x - y
    for s in range(1, r + 1):
        mid = ring.add(ring.pow(base, s), ring.pow(base, -s))
        qs = q_number(s, base, ring)
        shift = ring.mul(ring.mul(qs, qs), rho)
        factor = x * x - (x * y).scale(mid) + y * y - TwoVarPoly.const(ring, shift)
        out = out * factor
    return out


def sandwich_poly_arithmetic(k: int, rho_N, ring: Ring) -> TwoVarPoly:
    """(x - y) prod_{s=1..k} ((x - y)^2 - rho_N s^2): the arithmetic-progression family."""
    x = TwoVarPoly.variable(ring, "x")
    y = TwoVarPoly.variable(ring, "y")
    rho_N = ring.coerce(rho_N)
    diff2 = (x - y) * (x - y)
    out = x - y
    for s in range(1, k + 1):
        shift = ring.mul(rho_N, ring.from_int(s * s))
        out = out * (diff2 - TwoVarPoly.const(ring, shift))
    return out


def sandwich_poly_degrel_first(gamma, rho02, ring: Ring) -> TwoVarPoly:
    """(x - y)((x - y)^2 - gamma (x + y) - rho02)."""
    x = TwoVarPoly.variable(ring, "x")
    y = TwoVarPoly.variable(ring, "y")
    inner = (x - y) * (x - y) - (x + y).scale(gamma) - TwoVarPoly.const(ring, rho02)
    return (x - y) * inner


def sandwich_poly_degrel_second(ring: Ring) -> TwoVarPoly:
    """(x - y)(x + y)(x + y + 1)((x - y)^2 - 1)."""
    x = TwoVarPoly.variable(ring, "x")
    y = TwoVarPoly.variable(ring, "y")
    one = TwoVarPoly.const(ring, ring.one())
    return (x - y) * (x + y) * (x + y + one) * ((x - y) * (x - y) - one)


class CertificateProblem:
    """Spectrum, bandwidth, and the two-variable polynomial to test."""

    __slots__ = ("spectrum", "bandwidth", "poly", "cyclic", "modulus")

    def __init__(self, spectrum, bandwidth: int, poly: TwoVarPoly,
                 cyclic: bool = False, modulus: int | None = None):
        self.spectrum = list(spectrum)
        self.bandwidth = int(bandwidth)
        self.poly = poly
        self.cyclic = bool(cyclic)
        if self.cyclic:
            if modulus is None:
                modulus = len(self.spectrum)
            if modulus != len(self.spectrum):
                raise ValueError("cyclic certificates index the spectrum by the modulus")
        self.modulus = modulus

    def __repr__(self):
        mode = f"cyclic mod {self.modulus}" if self.cyclic else "linear"
        return f"CertificateProblem(levels={len(self.spectrum)}, w={self.bandwidth}, {mode})"


def band_certificate(problem: CertificateProblem):
    """(holds, witnesses): the polynomial must vanish on every in-band pair.

    In cyclic mode the wrap-around band N - w <= |n - m| <= N - 1 is
    part of the requirement, because the middle operator also couples
    classes across the wrap.
    """
    ring = problem.poly.ring
    spectrum = problem.spectrum
    count = len(spectrum)
    w = problem.bandwidth
    witnesses = []
    for n in range(count):
        for m in range(count):
            dist = abs(n - m)
            in_band = dist <= w
            if problem.cyclic and problem.modulus - w <= dist <= problem.modulus - 1:
                in_band = True
            if not in_band:
                continue
            val = problem.poly.evaluate(spectrum[n], spectrum[m])
            if not ring.is_zero(val):
                witnesses.append((n, m, ring.fmt(val)))
    return not witnesses, witnesses


def relation_from_certificate(problem: CertificateProblem, middle_power: int = 1,
                              ring: Ring | None = None,
                              name: str = "certified") -> RelationTemplate:
    """Transcribe the certificate polynomial into the operator identity it proves."""
    ring = ring or problem.poly.ring
    poly = _sandwich_ncpoly(ring, "X", "Y", middle_power,
                            {key: val for key, val in problem.poly.coeffs.items()})
    return RelationTemplate(name, ring, poly, ("X", "Y"),
                            {"bandwidth": problem.bandwidth, "middle_power": middle_power})


# ---------------------------------------------------------------------------
# rewriting for algebras with an involution, and the implication prover

class InvolutionRules:
    """Push the involution letter right: r k -> k r, r a -> shift - a r, r r -> 1."""

    __slots__ = ("ring", "inv", "commuting", "anti", "shift")

    def __init__(self, ring: Ring, inv: str, commuting, anti: str, shift):
        self.ring = ring
        self.inv = inv
        self.commuting = frozenset(commuting)
        self.anti = anti
        self.shift = ring.coerce(shift)  # the scalar value of {anti, inv}

    def reduce(self, poly: NCPoly) -> NCPoly:
        ring = self.ring
        pending = dict(poly.terms)
        done = {}
        while pending:
            word, coeff = pending.popitem()
            spot = self._first_reducible(word)
            if spot is None:
                acc = ring.add(done.get(word, ring.zero()), coeff)
                if ring.is_zero(acc):
                    done.pop(word, None)
                else:
                    done[word] = acc
                continue
            head, a, b, tail = word[:spot], word[spot], word[spot + 1], word[spot + 2:]
            for repl_coeff, repl in self._rewrite(a, b):
                new_word = head + repl + tail
                new_coeff = ring.mul(coeff, repl_coeff)
                acc = ring.add(pending.get(new_word, ring.zero()), new_coeff)
                if ring.is_zero(acc):
                    pending.pop(new_word, None)
                else:
                    pending[new_word] = acc
        return NCPoly(ring, done)

    def _first_reducible(self, word):
        for i in range(len(word) - 1):
            if word[i] == self.inv:
                return i
        return None

    def _rewrite(self, a, b):
        ring = self.ring
        if b == self.inv:
            return [(ring.one(), ())]
        if b in self.commuting:
            return [(ring.one(), (b, a))]
        if b == self.anti:
            return [(self.shift, ()), (ring.neg(ring.one()), (b, a))]
        raise ValueError(f"letter {b!r} has no rule against the involution")


def implication_to_degrel(family_templates: list, degrel_pair,
                          rules: InvolutionRules) -> dict:
    """Show both target relations follow from the involution-algebra ones.

    The first target is literally the commutator of the first generator
    with the family's quadratic relation.  The second target equals

        D(C) + {k2, D(C)} - shift * D(C) * r,   D(Z) = [k2^2, Z],

    where C is the family's cubic relation written as left side minus
    right side.  Both identities are checked in the normal form of the
    involution algebra, so every appeal to the defining relations is
    explicit.  Raises when either step fails; a passing call is the
    proof object.
    """
    by_name = {t.name.split(":", 1)[1]: t for t in family_templates}
    second = by_name["second"].poly
    third = by_name["third"].poly
    ring = second.ring
    first_target, second_target = degrel_pair
    k1 = NCPoly.gen(ring, "k1")
    k2 = NCPoly.gen(ring, "k2")
    inv = NCPoly.gen(ring, rules.inv)

    subs_first = _rename(first_target.poly, {"X": "k1", "Y": "k2"})
    direct = k1.commutator(second)
    if not rules.reduce(subs_first - direct).is_zero():
        raise VerificationError(
            "first target is not the commutator of k1 with the quadratic relation")

    subs_second = _rename(second_target.poly, {"X": "k1", "Y": "k2"})
    square = k2 * k2
    bracket = square * third - third * square
    combo = bracket + k2 * bracket + bracket * k2 - (bracket * inv).scale(rules.shift)
    if not rules.reduce(subs_second - combo).is_zero():
        raise VerificationError(
            "second target is not the squared-commutator combination of the cubic relation")
    return {"first": "commutator", "second": "squared-commutator"}


def _rename(poly: NCPoly, mapping: dict) -> NCPoly:
    terms = {}
    for word, coeff in poly.terms.items():
        new_word = tuple(mapping.get(s, s) for s in word)
        terms[new_word] = coeff
    return NCPoly(poly.ring, terms)


def cbi_implies_degrel() -> dict:
    """Symbolic proof that the CBI relations force the non-symmetric pair.

    Works over rationals extended by the free structure constants with
    the reflection-coupling constant of the quadratic relation set to
    zero, which is the regime where the target relations are stated.
    """
    from .scalars import SymPolyRing
    ring = SymPolyRing(QQ)
    d1 = ring.sym("d1")
    d3 = ring.sym("d3")
    d4 = ring.sym("d4")
    d5 = ring.sym("d5")
    gamma = ring.coerce(Fraction(1, 2))
    templates = cbi_templates(d1, ring.zero(), d3, d4, d5, ring)
    degrel = degrel_templates(gamma, d1, ring)
    rules = InvolutionRules(ring, "r", ("k1",), "k2",
                            ring.mul(ring.from_int(2), d3))
    return implication_to_degrel(templates, degrel, rules)


def dual_hahn_implies_degrel() -> dict:
    """Same implication from the degenerate involution algebra."""
    from .scalars import SymPolyRing
    ring = SymPolyRing(QQ)
    g1 = ring.sym("g1")
    g3 = ring.sym("g3")
    g4 = ring.sym("g4")
    g5 = ring.sym("g5")
    templates = dual_hahn_templates(g1, ring.zero(), g3, g4, g5, ring)
    degrel = degrel_templates(ring.zero(), g1, ring)
    rules = InvolutionRules(ring, "r", ("k1",), "k2",
                            ring.mul(ring.from_int(2), g3))
    return implication_to_degrel(templates, degrel, rules)
