"""Recurrences and presets for polynomial families beyond Leonard duality.

Two one-variable orthogonal families are covered: the complementary
Bannai-Ito polynomials and their dual -1 Hahn degeneration. Each family
satisfies a three-term recurrence together with a five-term difference
equation, so instead of a Leonard pair the governing structure is an
involution algebra with generators k1, k2 and a reflection r. This
module provides:

* exact recurrence data and monic polynomial sequences;
* truncated Jacobi-matrix representations of the involution algebras,
  with the representation-dependent structure constants solved exactly;
* the named coefficient presets that connect the families to divided
  operators of cyclic tridiagonal pairs at q = i, with the engine's
  series diagnostics next to the declared closed forms;
* the scalar parameters of the non-symmetric tridiagonal relations,
  certified against the spectra by band certificates.

The Dunkl shift-operator realizations of the five-term equations are
not implemented; their coefficient functions are external data. Users
who have explicit matrices for k1 and k2 can check any relation with
relation_residual directly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivergentLimitError, VerificationError
from .scalars import (
    QQ,
    QS,
    BranchPolicy,
    EpsSeries,
    GaussianRational,
    PhasedRatFun,
    RatFun,
    Ring,
    SymPolyRing,
    cyclotomic_field,
    q_factorial,
    series_of_phased,
    series_of_ratfun,
)
from .linalg import ExactMatrix
from .constructions import SpectrumModel
from .divided import QuadraticSpectrumData, divided_spectrum
from .relations import (
    CertificateProblem,
    band_certificate,
    cbi_templates,
    dual_hahn_templates,
    relation_residual,
    sandwich_poly_degrel_first,
    sandwich_poly_degrel_second,
)

CBI = "complementary-bannai-ito"
DUAL_HAHN = "dual-neg1-hahn"

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# three-term recurrences

class RecurrenceModel:
    """Three-term recurrence u_(n+1) + (-1)^n rho2 u_n + t_n u_(n-1) = x u_n.

    family "complementary-bannai-ito": t_n is the quartic-over-quadratic
    coefficient built from (rho1, rho2, r1, r2) with
    g = rho1 + rho2 - r1 - r2:

        t_(2p)   = -p (p+rho1-r1+1/2)(p+rho1-r2+1/2)(p-r1-r2)
                    / ((2p+g)(2p+g+1)),
        t_(2p+1) = -(p+g+1)(p+rho1+rho2+1)(p+rho2-r1+1/2)(p+rho2-r2+1/2)
                    / ((2p+g+1)(2p+g+2)).

    family "dual-neg1-hahn": t_n is quadratic, built from (rho2, r1, r2):

        t_(2p) = -p (p-r1-r2),
        t_(2p+1) = -(p+rho2-r1+1/2)(p+rho2-r2+1/2),

    and equals the rho1 -> infinity limit of the first family (the sign
    pattern of the odd coefficient is pinned by that degeneration; see
    cbi_limit_coefficient).

    Parameters live in any exact coefficient ring, so the degeneration
    itself can be checked symbolically with rho1 a free variable.
    """

    __slots__ = ("family", "ring", "params", "g")

    def __init__(self, family: str, ring: Ring, params: dict):
        if family not in (CBI, DUAL_HAHN):
            raise ValueError(f"unknown recurrence family {family!r}")
        self.family = family
        self.ring = ring
        self.params = {k: ring.coerce(v) for k, v in params.items()}
        if family == CBI:
            rho1, rho2 = self.params["rho1"], self.params["rho2"]
        else:
            rho2 = self.params["rho2"]
        r1, r2 = self.params["r1"], self.params["r2"]
        if family == CBI:
            self.g = ring.sub(ring.add(rho1, rho2), ring.add(r1, r2))
        else:
            self.g = None

    def _shifted(self, p: int, const) -> object:
        return self.ring.add(self.ring.from_int(p), const)

    def middle(self, n: int):
        """The (-1)^n rho2 term multiplying u_n."""
        rho2 = self.params["rho2"]
        return rho2 if n % 2 == 0 else self.ring.neg(rho2)

    def coefficient(self, n: int):
        """t_n (the coefficient of u_(n-1)); exact, denominators checked."""
        if n < 0:
            raise ValueError("recurrence index must be nonnegative")
        R = self.ring
        r1, r2 = self.params["r1"], self.params["r2"]
        rho2 = self.params["rho2"]
        half = R.coerce(HALF)
        if self.family == DUAL_HAHN:
            if n % 2 == 0:
                p = n // 2
                return R.neg(R.mul(R.from_int(p),
                                   self._shifted(p, R.neg(R.add(r1, r2)))))
            p = (n - 1) // 2
            f1 = self._shifted(p, R.add(R.sub(rho2, r1), half))
            f2 = self._shifted(p, R.add(R.sub(rho2, r2), half))
            return R.neg(R.mul(f1, f2))
        rho1 = self.params["rho1"]
        g = self.g
        if n % 2 == 0:
            p = n // 2
            num = R.mul(
                R.mul(R.from_int(p), self._shifted(p, R.add(R.sub(rho1, r1), half))),
                R.mul(self._shifted(p, R.add(R.sub(rho1, r2), half)),
                      self._shifted(p, R.neg(R.add(r1, r2)))),
            )
            den = R.mul(self._shifted(2 * p, g),
                        self._shifted(2 * p, R.add(g, R.one())))
        else:
            p = (n - 1) // 2
            num = R.mul(
                R.mul(self._shifted(p, R.add(g, R.one())),
                      self._shifted(p, R.add(R.add(rho1, rho2), R.one()))),
                R.mul(self._shifted(p, R.add(R.sub(rho2, r1), half)),
                      self._shifted(p, R.add(R.sub(rho2, r2), half))),
            )
            den = R.mul(self._shifted(2 * p, R.add(g, R.one())),
                        self._shifted(2 * p, R.add(g, R.from_int(2))))
        if R.is_zero(den):
            raise ValueError(f"recurrence denominator vanishes at index {n}")
        return R.div(R.neg(num), den)

    def describe(self) -> dict:
        out = {"family": self.family,
               "parameters": {k: self.ring.fmt(v) for k, v in self.params.items()}}
        if self.g is not None:
            out["g"] = self.ring.fmt(self.g)
        return out


def cbi_model(rho1, rho2, r1, r2, ring: Ring = QQ) -> RecurrenceModel:
    """Complementary Bannai-Ito recurrence data."""
    return RecurrenceModel(CBI, ring,
                           {"rho1": rho1, "rho2": rho2, "r1": r1, "r2": r2})


def dual_hahn_model(rho2, r1, r2, ring: Ring = QQ) -> RecurrenceModel:
    """Dual -1 Hahn recurrence data."""
    return RecurrenceModel(DUAL_HAHN, ring, {"rho2": rho2, "r1": r1, "r2": r2})


def recurrence_coeff(model: RecurrenceModel, n: int):
    """t_n for the model's family (tau-type or sigma-type)."""
    return model.coefficient(n)


def polynomial_sequence(model: RecurrenceModel, count: int) -> list:
    """Monic polynomials u_0 .. u_count as dense coefficient lists.

    Seeded with u_(-1) = 0 and u_0 = 1, then
    u_(n+1) = (x - (-1)^n rho2) u_n - t_n u_(n-1). The coefficient list
    of u_n has length n + 1 with the x^k coefficient at position k.
    """
    R = model.ring
    if count < 0:
        raise ValueError("count must be nonnegative")
    seq = [[R.one()]]
    prev: list = []
    for n in range(count):
        cur = seq[-1]
        nxt = [R.zero()] + list(cur)  # x * u_n
        m = model.middle(n)
        for k, coef in enumerate(cur):
            nxt[k] = R.sub(nxt[k], R.mul(m, coef))
        if prev:
            t = model.coefficient(n)
            for k, coef in enumerate(prev):
                nxt[k] = R.sub(nxt[k], R.mul(t, coef))
        prev = cur
        seq.append(nxt)
    return seq


def verify_recurrence(model: RecurrenceModel, count: int) -> bool:
    """Re-check u_(n+1) + (-1)^n rho2 u_n + t_n u_(n-1) - x u_n = 0."""
    R = model.ring
    seq = polynomial_sequence(model, count)
    for n in range(count):
        width = n + 2
        resid = [R.zero()] * width
        for k, coef in enumerate(seq[n + 1]):
            resid[k] = R.add(resid[k], coef)
        m = model.middle(n)
        for k, coef in enumerate(seq[n]):
            resid[k] = R.add(resid[k], R.mul(m, coef))
        if n >= 1:
            t = model.coefficient(n)
            for k, coef in enumerate(seq[n - 1]):
                resid[k] = R.add(resid[k], R.mul(t, coef))
        for k, coef in enumerate(seq[n]):  # minus x * u_n
            resid[k + 1] = R.sub(resid[k + 1], coef)
        if any(not R.is_zero(c) for c in resid):
            return False
    return True


def cbi_limit_coefficient(rho2, r1, r2, n: int):
    """Limit of the Bannai-Ito-type t_n as rho1 grows without bound.

    Computed symbolically: rho1 is the generator of the rational
    function field, and the limit is the ratio of leading coefficients
    (numerator and denominator have equal degree in rho1). The result
    equals the dual -1 Hahn coefficient, which is the degeneration
    statement connecting the two families.
    """
    rho1 = RatFun.s_power(1)
    model = cbi_model(rho1, Fraction(rho2), Fraction(r1), Fraction(r2), ring=QS)
    f = model.coefficient(n)
    num_deg, den_deg = f.num.degree(), f.den.degree()
    if num_deg > den_deg:
        raise DivergentLimitError("coefficient grows with rho1",
                                  lead_order=den_deg - num_deg)
    if num_deg < den_deg:
        return Fraction(0)
    lead = f.num.coeff(num_deg) / f.den.coeff(den_deg)
    if not lead.is_rational():
        raise VerificationError("leading ratio is not rational")
    return lead.re


# ---------------------------------------------------------------------------
# truncated Jacobi representations of the involution algebras

class AlgebraRepresentation:
    """Finite exact representation: k1 diagonal, k2 tridiagonal, r parity.

    constants holds the structure constants of the defining relations,
    including the two representation-dependent ones solved from the
    cubic relation's residual. spectrum is the diagonal of k1.
    """

    __slots__ = ("family", "dim", "k1", "k2", "r", "constants", "model",
                 "spectrum", "c0")

    def __init__(self, family, dim, k1, k2, r, constants, model, spectrum, c0):
        self.family = family
        self.dim = dim
        self.k1 = k1
        self.k2 = k2
        self.r = r
        self.constants = constants
        self.model = model
        self.spectrum = spectrum
        self.c0 = c0

    def mapping(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "r": self.r}

    def __repr__(self):
        return (f"AlgebraRepresentation(family={self.family!r}, dim={self.dim}, "
                f"c0={self.c0})")


def _jacobi_matrix(model: RecurrenceModel, dim: int) -> ExactMatrix:
    """Multiplication by x in the basis u_0 .. u_(dim-1).

    Column n carries the recurrence: x u_n = u_(n+1) + (-1)^n rho2 u_n
    + t_n u_(n-1). Requires t_dim = 0 so the span is invariant, and
    t_1 .. t_(dim-1) nonzero so the representation is irreducible.
    """
    R = model.ring
    if not R.is_zero(model.coefficient(dim)):
        raise ValueError(f"t_{dim} must vanish for an invariant {dim}-dim span")
    for n in range(1, dim):
        if R.is_zero(model.coefficient(n)):
            raise ValueError(f"t_{n} vanishes: representation is reducible")
    rows = [[R.zero()] * dim for _ in range(dim)]
    for n in range(dim):
        rows[n][n] = model.middle(n)
        if n + 1 < dim:
            rows[n + 1][n] = R.one()
        if n - 1 >= 0:
            rows[n - 1][n] = model.coefficient(n)
    return ExactMatrix.from_rows(R, rows)


def _parity_matrix(ring: Ring, dim: int) -> ExactMatrix:
    return ExactMatrix.diagonal(ring, [ring.from_int((-1) ** n) for n in range(dim)])


def _solve_reflection_constants(third_zero, mapping, ring) -> tuple:
    """Solve the two free constants of the cubic relation from its residual.

    third_zero is the cubic template with both free constants set to
    zero; the residual must then equal c4 * r + c5 on the diagonal.
    """
    resid = third_zero.residual(mapping)
    dim = resid.n
    for i in range(dim):
        for j in range(dim):
            if i != j and not ring.is_zero(resid[i, j]):
                raise VerificationError(
                    f"cubic relation residual has off-diagonal entry at ({i}, {j})")
    if dim < 2:
        raise VerificationError("need dimension >= 2 to separate the constants")
    a0, a1 = resid[0, 0], resid[1, 1]
    c4 = ring.div(ring.sub(a0, a1), ring.from_int(2))
    c5 = ring.div(ring.add(a0, a1), ring.from_int(2))
    return c4, c5


def _verified_representation(family, templates, mapping, dim) -> None:
    for t in templates:
        resid = t.residual(mapping)
        if not resid.is_zero():
            raise VerificationError(
                f"{family} relation {t.name} fails in the {dim}-dim representation")


def cbi_representation(rho1, rho2, r1, r2, dim: int,
                       c0=None) -> AlgebraRepresentation:
    """Exact dim-dimensional representation of the Bannai-Ito-type algebra.

    k1 is diagonal with the five-term-equation spectrum
    theta_(2p) = p^2 + (g+1)p, theta_(2p+1) = p^2 + (g+2)p + c0
    (c0 a free scalar, defaulting to the value g/2 + 3/4 used by the
    non-symmetric relations); k2 is the recurrence Jacobi matrix; r is
    the parity involution. The constants of the quadratic relation are
    d1 = c0 (g+1-c0), d2 = g + 3/2 - 2 c0, d3 = rho2; the two constants
    of the cubic relation are solved from its residual, and all five
    defining relations are then verified entry by entry.
    """
    model = cbi_model(rho1, rho2, r1, r2, ring=QQ)
    R = QQ
    g = model.g
    if c0 is None:
        c0 = g / 2 + Fraction(3, 4)
    c0 = R.coerce(c0)
    spectrum = []
    for n in range(dim):
        p = Fraction(n // 2)
        if n % 2 == 0:
            spectrum.append(p * p + (g + 1) * p)
        else:
            spectrum.append(p * p + (g + 2) * p + c0)
    if len(set(spectrum)) != dim:
        raise VerificationError("k1 spectrum must be simple for the two-basis picture")
    k1 = ExactMatrix.diagonal(R, spectrum)
    k2 = _jacobi_matrix(model, dim)
    r = _parity_matrix(R, dim)
    mapping = {"k1": k1, "k2": k2, "r": r}
    d1 = c0 * (g + 1 - c0)
    d2 = g + Fraction(3, 2) - 2 * c0
    d3 = R.coerce(rho2)
    third_zero = cbi_templates(d1, d2, d3, R.zero(), R.zero(), R)[4]
    d4, d5 = _solve_reflection_constants(third_zero, mapping, R)
    templates = cbi_templates(d1, d2, d3, d4, d5, R)
    _verified_representation(CBI, templates, mapping, dim)
    constants = {"d1": d1, "d2": d2, "d3": d3, "d4": d4, "d5": d5}
    return AlgebraRepresentation(CBI, dim, k1, k2, r, constants, model,
                                 spectrum, c0)


def dual_hahn_representation(rho2, r1, r2, dim: int,
                             c0=None) -> AlgebraRepresentation:
    """Exact dim-dimensional representation of the degenerate algebra.

    k1 is diagonal with theta_(2p) = p, theta_(2p+1) = p + c0 (default
    c0 = 1/2, the value at which the quadratic relation loses its
    reflection coupling); k2 and r as in the Bannai-Ito case. Constants:
    g1 = c0 (1 - c0), g2 = 1 - 2 c0, g3 = rho2, and the cubic relation's
    two constants are solved from its residual.
    """
    model = dual_hahn_model(rho2, r1, r2, ring=QQ)
    R = QQ
    if c0 is None:
        c0 = HALF
    c0 = R.coerce(c0)
    spectrum = []
    for n in range(dim):
        p = Fraction(n // 2)
        spectrum.append(p if n % 2 == 0 else p + c0)
    if len(set(spectrum)) != dim:
        raise VerificationError("k1 spectrum must be simple for the two-basis picture")
    k1 = ExactMatrix.diagonal(R, spectrum)
    k2 = _jacobi_matrix(model, dim)
    r = _parity_matrix(R, dim)
    mapping = {"k1": k1, "k2": k2, "r": r}
    g1 = c0 * (1 - c0)
    g2 = 1 - 2 * c0
    g3 = R.coerce(rho2)
    third_zero = dual_hahn_templates(g1, g2, g3, R.zero(), R.zero(), R)[4]
    g4, g5 = _solve_reflection_constants(third_zero, mapping, R)
    templates = dual_hahn_templates(g1, g2, g3, g4, g5, R)
    _verified_representation(DUAL_HAHN, templates, mapping, dim)
    constants = {"g1": g1, "g2": g2, "g3": g3, "g4": g4, "g5": g5}
    return AlgebraRepresentation(DUAL_HAHN, dim, k1, k2, r, constants, model,
                                 spectrum, c0)


# ---------------------------------------------------------------------------
# divided-spectrum presets at q = i

PRESET_NAMES = ("paramBI", "paramBI2", "paramHahn")


class SpectrumPreset:
    """Named coefficient assignment for one side of an order-8 pair.

    Fields:
      name       one of PRESET_NAMES;
      symbol     the integer exponent parameter ("g", "h", or None);
      model      a SpectrumModel when the coefficients themselves live
                 in the scalar tower (constant-coefficient presets);
      quadratic  the (b^2, c^2, bc) data driving the degree-2 divided
                 spectrum when only those combinations are polynomial
                 in q (square-root prefactors cancel in pairs);
      direct     phased (a, b, c) when each coefficient separately is a
                 q-power times a rational function, else None.
    """

    __slots__ = ("name", "symbol", "model", "quadratic", "direct")

    def __init__(self, name, symbol, model, quadratic, direct):
        self.name = name
        self.symbol = symbol
        self.model = model
        self.quadratic = quadratic
        self.direct = direct

    ORDER = 8

    def policy(self) -> BranchPolicy:
        return BranchPolicy.for_order(self.ORDER)

    # -- declared closed forms

    def declared_divided(self, n: int, ring: SymPolyRing | None = None):
        """The closed form of the degree-2 divided eigenvalue at q = i."""
        if self.name == "paramBI":
            ring = ring or SymPolyRing(QQ)
            g = ring.sym("g")
            return ring.add(ring.coerce(Fraction(n * n, 4)),
                            ring.mul(ring.add(g, ring.one()),
                                     ring.coerce(Fraction(n, 2))))
        if self.name == "paramHahn":
            value = Fraction(n, 2)
            return ring.coerce(value) if ring is not None else value
        raise DivergentLimitError(
            "the starred divided eigenvalues have no finite limit", lead_order=None)

    def declared_direct(self, n: int, ring: SymPolyRing | None = None):
        """The closed form of the undivided eigenvalue at q = i."""
        if self.name == "paramBI":
            value = Fraction(0)
            return ring.coerce(value) if ring is not None else value
        if self.name == "paramBI2":
            ring = ring or SymPolyRing(QQ)
            h = ring.sym("h")
            sign = 1 if n % 2 == 0 else -1
            inner = ring.add(h, ring.coerce(Fraction(n, 2) + Fraction(1, 4)))
            return ring.sub(ring.mul(ring.from_int(sign), inner),
                            ring.coerce(Fraction(1, 4)))
        return self.model.evaluate_at_root(n, self.ORDER)

    # -- engine computations

    def engine_divided(self, n: int, policy: BranchPolicy | None = None,
                       K: int | None = None):
        """Degree-2 divided eigenvalue through the limit engine."""
        policy = policy or self.policy()
        return divided_spectrum(self.quadratic, 2, n, policy, K=K)

    def divided_series(self, n: int, policy: BranchPolicy | None = None,
                       K: int | None = None) -> EpsSeries:
        """Raw expansion of the degree-2 divided eigenvalue, for diagnostics."""
        policy = policy or self.policy()
        if K is None:
            K = 8
        data = self.quadratic
        one = PhasedRatFun.const(1)
        q4n = PhasedRatFun.const(RatFun.q_power(4 * n))
        q4nm = PhasedRatFun.const(RatFun.q_power(-4 * n))
        numerator = data.b2 * (q4n - one) + data.c2 * (q4nm - one)
        num = series_of_phased(numerator, self.ORDER, policy, K)
        den = series_of_ratfun(q_factorial(2), self.ORDER, K, num.ring)
        return num / den

    def direct_series(self, n: int, policy: BranchPolicy | None = None,
                      K: int | None = None) -> EpsSeries:
        """Raw expansion of the undivided eigenvalue theta_n(q) at q = i."""
        if self.direct is None:
            raise ValueError(
                f"{self.name} coefficients are not phased scalars "
                "(square-root prefactors); only quadratic data is available")
        policy = policy or self.policy()
        if K is None:
            K = 8
        a, b, c = self.direct["a"], self.direct["b"], self.direct["c"]
        theta = a + b * PhasedRatFun.const(RatFun.q_power(2 * n)) \
            + c * PhasedRatFun.const(RatFun.q_power(-2 * n))
        return series_of_phased(theta, self.ORDER, policy, K)


def _inv_two_cosh() -> RatFun:
    """1 / (q + q^(-1)) as a rational function."""
    return RatFun.one() / (RatFun.q_power(1) + RatFun.q_power(-1))


def spectrum_preset(name: str) -> SpectrumPreset:
    """Build one of the named order-8 coefficient presets.

    paramBI    a = 0 and b, c carry the factor (q + q^(-1))^(-1/2) times
               q^(2g+2) and q^(-2g-2) with opposite imaginary signs; the
               square roots cancel in b^2, c^2, bc, which is all the
               degree-2 divided spectrum needs. With integer g the
               branch phases cancel and the divided eigenvalues come
               out as polynomials in g.
    paramBI2   the starred side: a* = -1/4, b*, c* proportional to
               q^(+-(4h+1)) / (q + q^(-1)). Every coefficient is a
               phased scalar, but both the undivided and the divided
               eigenvalue expansions have poles at q = i; the finite
               closed form is declared data, not a limit.
    paramHahn  a = c = 0 and b a constant eighth root of unity over 2;
               everything is finite and the engine reproduces the
               declared values directly.
    """
    if name == "paramBI":
        inv = _inv_two_cosh()
        b2 = PhasedRatFun.q_linear({"g": 4},
                                   RatFun.q_power(4, Fraction(-1, 16)) * inv)
        c2 = PhasedRatFun.q_linear({"g": -4},
                                   RatFun.q_power(-4, Fraction(-1, 16)) * inv)
        bc = PhasedRatFun.const(RatFun.const(Fraction(1, 16)) * inv)
        quad = QuadraticSpectrumData(0, b2, c2, bc)
        return SpectrumPreset(name, "g", None, quad, None)
    if name == "paramBI2":
        inv = _inv_two_cosh()
        bstar = PhasedRatFun.q_linear({"h": 4},
                                      RatFun.q_power(1, Fraction(-1, 4)) * inv)
        cstar = PhasedRatFun.q_linear({"h": -4},
                                      RatFun.q_power(-1, Fraction(1, 4)) * inv)
        astar = PhasedRatFun.const(Fraction(-1, 4))
        b2 = bstar * bstar
        c2 = cstar * cstar
        bc = bstar * cstar
        quad = QuadraticSpectrumData(astar, b2, c2, bc, starred=True)
        direct = {"a": astar, "b": bstar, "c": cstar}
        return SpectrumPreset(name, "h", None, quad, direct)
    if name == "paramHahn":
        field = cyclotomic_field(8)
        b = field.mul(field.zeta(1), field.coerce(HALF))
        model = SpectrumModel("I", a=field.zero(), b=b, c=field.zero(),
                              allow_zero=True)
        b2 = RatFun.const(GaussianRational(0, Fraction(1, 4)))  # b^2 = i/4
        quad = QuadraticSpectrumData(0, b2, PhasedRatFun.const(0),
                                     PhasedRatFun.const(0))
        return SpectrumPreset(name, None, model, quad, None)
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")


def preset_spectra(preset: SpectrumPreset, n: int,
                   policy: BranchPolicy | None = None) -> dict:
    """Engine results and declared closed forms side by side.

    Keys present depend on what is finite: "divided" / "direct" carry
    engine values, "divided_declared" / "direct_declared" the closed
    forms, and "divided_lead_order" / "direct_lead_order" the leading
    series exponents when an expansion diverges (negative values).
    """
    out: dict = {"preset": preset.name, "n": n}
    if preset.name == "paramBI":
        out["divided"] = preset.engine_divided(n, policy)
        out["divided_declared"] = preset.declared_divided(n)
        out["direct_declared"] = preset.declared_direct(n)
    elif preset.name == "paramBI2":
        div = preset.divided_series(n, policy)
        out["divided_lead_order"] = div.lead_order()
        direct = preset.direct_series(n, policy)
        out["direct_lead_order"] = direct.lead_order()
        out["direct_declared"] = preset.declared_direct(n)
    else:
        out["direct"] = preset.declared_direct(n)
        out["divided"] = preset.engine_divided(n, policy)
        out["divided_declared"] = preset.declared_divided(n)
    return out


# ---------------------------------------------------------------------------
# parameters of the non-symmetric tridiagonal relations

def degrel_params(preset: SpectrumPreset, count: int = 12) -> tuple:
    """(gamma, rho0) for the non-symmetric relations, certified.

    For the Bannai-Ito preset gamma = 1/2 and rho0 = g^2/4 + g/2 + 3/16;
    for the constant preset gamma = 0 and rho0 = 1/4. Both returned
    values are elements of a symbolic ring over the rationals (rho0
    carries the symbol g in the first case). The call verifies, over
    indices 0..count:

    * the first relation's band certificate: its sandwich polynomial
      vanishes on all divided-eigenvalue pairs at distance <= 1;
    * the second relation's band certificate: its sandwich polynomial
      vanishes on all starred-eigenvalue pairs at distance <= 2, with
      the starred spectrum symbolic in h;
    * consistency with the involution algebra: the quadratic relation's
      scalar constant equals rho0 at the spectrum's offset value.

    Raises VerificationError if any certificate fails.
    """
    ring = SymPolyRing(QQ)
    if preset.name == "paramBI":
        g = ring.sym("g")
        gamma = ring.coerce(HALF)
        rho0 = ring.add(ring.mul(g, ring.mul(g, ring.coerce(Fraction(1, 4)))),
                        ring.add(ring.mul(g, ring.coerce(HALF)),
                                 ring.coerce(Fraction(3, 16))))
        spectrum1 = [preset.declared_divided(n, ring) for n in range(count + 1)]
        c0 = ring.add(ring.mul(g, ring.coerce(HALF)), ring.coerce(Fraction(3, 4)))
        # offset consistency: c0 (g + 1 - c0) must equal rho0
        d1 = ring.mul(c0, ring.sub(ring.add(g, ring.one()), c0))
        if not ring.is_zero(ring.sub(d1, rho0)):
            raise VerificationError("quadratic-relation constant disagrees with rho0")
    elif preset.name == "paramHahn":
        gamma = ring.zero()
        rho0 = ring.coerce(Fraction(1, 4))
        spectrum1 = [preset.declared_divided(n, ring) for n in range(count + 1)]
        c0 = ring.coerce(HALF)
        g1 = ring.mul(c0, ring.sub(ring.one(), c0))
        if not ring.is_zero(ring.sub(g1, rho0)):
            raise VerificationError("quadratic-relation constant disagrees with rho0")
    else:
        raise ValueError("the starred preset parameterizes the partner side; "
                         "pass paramBI or paramHahn")
    poly1 = sandwich_poly_degrel_first(gamma, rho0, ring)
    problem1 = CertificateProblem(spectrum1, 1, poly1)
    holds, witnesses = band_certificate(problem1)
    if not holds:
        raise VerificationError(f"first-relation certificate fails: {witnesses}")

    starred = spectrum_preset("paramBI2")
    spectrum2 = [starred.declared_direct(n, ring) for n in range(count + 1)]
    poly2 = sandwich_poly_degrel_second(ring)
    problem2 = CertificateProblem(spectrum2, 2, poly2)
    holds, witnesses = band_certificate(problem2)
    if not holds:
        raise VerificationError(f"second-relation certificate fails: {witnesses}")
    return gamma, rho0
