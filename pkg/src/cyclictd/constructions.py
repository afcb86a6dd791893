"""Builders for explicit operator pairs and their eigenvalue models.

Two constructions are provided: a four-dimensional pair defined directly
at q = e^(i*pi/4) by explicit matrices over a cyclotomic field, and the
2^n-dimensional pair obtained from a site-by-site tensor recursion over
rational functions of s (q = s^2). Each pair carries closed-form
eigenvalue models when they exist in the coefficient field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateSpectrumError
from .linalg import ExactMatrix
from .scalars import (
    Cyclotomic,
    EpsSeries,
    RatFun,
    Ring,
    QS,
    cyclotomic_field,
    format_cyclotomic,
    format_ratfun,
    limit_at_root,
    parse_cyclotomic,
    parse_scalar,
    series_of_ratfun,
)

CASE_I = "I"
CASE_II = "II"
CASE_III = "III"
EXPLICIT = "explicit"


# -- eigenvalue models -------------------------------------------------------


def _coerce_coeff(x):
    """Case-I coefficient: a rational function of s or a cyclotomic constant."""
    if isinstance(x, Cyclotomic):
        return x
    return RatFun.coerce(x)


def _coeff_is_zero(x) -> bool:
    return x.is_zero()


def _coeff_at_root(x, order: int):
    """Limit value of one coefficient at s = zeta_order, as a Cyclotomic."""
    if isinstance(x, Cyclotomic):
        if x.order == order:
            return x
        if order % x.order == 0:
            return x.promote(order)
        raise ValueError(f"constant of order {x.order} does not embed in order {order}")
    return limit_at_root(x, order)


def _coeff_series(x, order: int, K, ring: Ring) -> EpsSeries:
    if isinstance(x, Cyclotomic):
        return EpsSeries.constant(ring, ring.coerce(_coeff_at_root(x, order)))
    return series_of_ratfun(x, order, K, ring)


def _q_power_series(e: int, order: int, K, ring: Ring) -> EpsSeries:
    return series_of_ratfun(RatFun.q_power(e), order, K, ring)


class SpectrumModel:
    """Closed-form eigenvalue family theta_p for one operator of a pair.

    case "I":    theta_p = a + b*q^(2p) + c*q^(-2p), b and c nonzero.
                 Coefficients are rational functions of s, or exact
                 root-of-unity constants when the family is defined only
                 at a fixed evaluation point.
    case "II":   theta_p = a + b*p + c*p*(p-1)/2.
    case "III":  theta_p = a + b*(-1)^p + c*p*(-1)^p.
    case "explicit": a plain list of scalars.
    """

    __slots__ = ("case", "a", "b", "c", "d", "starred", "values")

    def __init__(self, case, a=None, b=None, c=None, d=None, starred=False,
                 values=None, allow_zero=False):
        self.case = case
        self.d = d
        self.starred = bool(starred)
        self.values = None
        if case == EXPLICIT:
            if not values:
                raise ValueError("explicit model needs a nonempty value list")
            self.values = list(values)
            if d is None:
                self.d = len(self.values) - 1
            self.a = self.b = self.c = None
            return
        if case not in (CASE_I, CASE_II, CASE_III):
            raise ValueError(f"unknown spectrum case {case!r}")
        if case == CASE_I:
            a, b, c = _coerce_coeff(a), _coerce_coeff(b), _coerce_coeff(c)
            if not allow_zero and (_coeff_is_zero(b) or _coeff_is_zero(c)):
                raise ValueError("case I requires nonzero b and c")
        self.a, self.b, self.c = a, b, c

    # -- generic evaluation

    def evaluate(self, p: int):
        """theta_p by the case formula; case I needs function coefficients."""
        if self.case == EXPLICIT:
            return self.values[p]
        if self.case == CASE_I:
            if any(isinstance(x, Cyclotomic) for x in (self.a, self.b, self.c)):
                raise TypeError(
                    "constant-coefficient model defined only at the root; "
                    "use evaluate_at_root or theta_series"
                )
            return self.a + self.b * RatFun.q_power(2 * p) + self.c * RatFun.q_power(-2 * p)
        if self.case == CASE_II:
            return self.a + self.b * p + self.c * (p * (p - 1) // 2)
        sgn = -1 if p % 2 else 1
        return self.a + self.b * sgn + self.c * (p * sgn)

    # -- case-I specializations

    def _need_case_I(self):
        if self.case != CASE_I:
            raise TypeError(f"operation needs a case I model, not case {self.case}")

    def evaluate_at_root(self, p: int, order: int):
        """Limit of theta_p at s = zeta_order (q goes to zeta_order^2)."""
        self._need_case_I()
        field = cyclotomic_field(order)
        if not any(isinstance(x, Cyclotomic) for x in (self.a, self.b, self.c)):
            # combine first: poles of b and c may cancel in the sum
            return limit_at_root(self.evaluate(p), order)
        za = _coeff_at_root(self.a, order)
        zb = _coeff_at_root(self.b, order)
        zc = _coeff_at_root(self.c, order)
        qp = field.zeta(4 * p % order)
        qm = field.zeta(-4 * p % order)
        return za + zb * qp + zc * qm

    def root_values(self, N: int, order: int) -> list:
        """The merged eigenvalues theta_t at the root, t = 0..N-1."""
        return [self.evaluate_at_root(t, order) for t in range(N)]

    def theta_series(self, p: int, order: int, K=None, ring: Ring | None = None) -> EpsSeries:
        """Expansion of theta_p(q) around the root, for limit work."""
        self._need_case_I()
        if ring is None:
            ring = cyclotomic_field(order)
        sa = _coeff_series(self.a, order, K, ring)
        sb = _coeff_series(self.b, order, K, ring)
        sc = _coeff_series(self.c, order, K, ring)
        return (
            sa
            + sb * _q_power_series(2 * p, order, K, ring)
            + sc * _q_power_series(-2 * p, order, K, ring)
        )

    def coefficient_root_data(self, order: int) -> dict:
        """Values and q-derivative limits of a, b, c at the root.

        Constants contribute zero derivative. Rational-function
        coefficients use d/dq = (d/ds)/(2s).
        """
        self._need_case_I()
        out = {}
        for name, x in (("a", self.a), ("b", self.b), ("c", self.c)):
            out[name] = _coeff_at_root(x, order)
            if isinstance(x, Cyclotomic):
                out["d" + name] = cyclotomic_field(order).zero()
            else:
                out["d" + name] = limit_at_root(x.d_dq(), order)
        return out

    def frozen_distinct(self, N: int, order: int) -> bool:
        """Whether the N merged root eigenvalues are pairwise distinct."""
        vals = self.root_values(N, order)
        for i in range(N):
            for j in range(i + 1, N):
                if vals[i] == vals[j]:
                    return False
        return True

    def q_inverted(self) -> "SpectrumModel":
        """The model for the partner ordering obtained by q -> q^(-1).

        Sends theta_p(q) to theta_p(q^(-1)): coefficients b and c swap
        after the substitution.
        """
        self._need_case_I()
        if any(isinstance(x, Cyclotomic) for x in (self.a, self.b, self.c)):
            raise TypeError("q-inversion needs function coefficients")
        return SpectrumModel(
            CASE_I,
            a=self.a.bar(),
            b=self.c.bar(),
            c=self.b.bar(),
            d=self.d,
            starred=not self.starred,
            allow_zero=True,
        )

    def describe(self) -> dict:
        if self.case == EXPLICIT:
            return {
                "case": self.case,
                "d": self.d,
                "starred": self.starred,
                "values": [_format_any(v) for v in self.values],
            }
        return {
            "case": self.case,
            "d": self.d,
            "starred": self.starred,
            "a": _format_any(self.a),
            "b": _format_any(self.b),
            "c": _format_any(self.c),
        }

    def __repr__(self):
        return f"SpectrumModel(case={self.case!r}, d={self.d})"


def _format_any(x) -> str:
    if isinstance(x, Cyclotomic):
        return format_cyclotomic(x)
    if isinstance(x, RatFun):
        return format_ratfun(x)
    return str(x)


def case_I_spectrum(a, b, c, d=None, starred=False) -> SpectrumModel:
    """theta_p = a + b*q^(2p) + c*q^(-2p) with the nonzero-b,c requirement."""
    return SpectrumModel(CASE_I, a=a, b=b, c=c, d=d, starred=starred)


# -- recipes and pairs -------------------------------------------------------

KIND_CYCLIC4 = "cyclicRep4"
KIND_TENSOR = "tensorQOnsager"
KIND_EXPLICIT = "explicitMatrices"


class PairRecipe:
    """Serializable description of how an operator pair was built."""

    __slots__ = ("kind", "params")

    def __init__(self, kind: str, params: dict):
        if kind not in (KIND_CYCLIC4, KIND_TENSOR, KIND_EXPLICIT):
            raise ValueError(f"unknown recipe kind {kind!r}")
        self.kind = kind
        self.params = dict(params)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @staticmethod
    def from_json(data: dict) -> "PairRecipe":
        return PairRecipe(data["kind"], data.get("params", {}))

    def __repr__(self):
        return f"PairRecipe({self.kind!r})"


class OperatorPair:
    """An ordered pair of square matrices with optional eigenvalue models."""

    __slots__ = ("A", "Astar", "ring", "recipe", "spectrum", "spectrum_star", "diameter")

    def __init__(self, A: ExactMatrix, Astar: ExactMatrix, ring: Ring,
                 recipe: PairRecipe, spectrum: SpectrumModel | None = None,
                 spectrum_star: SpectrumModel | None = None,
                 diameter: int | None = None):
        if A.n != Astar.n or A.m != Astar.m or A.n != A.m:
            raise ValueError("pair needs two square matrices of equal size")
        self.A = A
        self.Astar = Astar
        self.ring = ring
        self.recipe = recipe
        self.spectrum = spectrum
        self.spectrum_star = spectrum_star
        if diameter is None and spectrum is not None:
            diameter = spectrum.d
        self.diameter = diameter

    @property
    def dim(self) -> int:
        return self.A.n

    def operator(self, which: str) -> ExactMatrix:
        if which == "A":
            return self.A
        if which == "Astar":
            return self.Astar
        raise ValueError(f"which must be 'A' or 'Astar', not {which!r}")

    def model(self, which: str) -> SpectrumModel | None:
        return self.spectrum if which == "A" else self.spectrum_star

    def swapped(self) -> "OperatorPair":
        return OperatorPair(self.Astar, self.A, self.ring, self.recipe,
                            self.spectrum_star, self.spectrum, self.diameter)

    def __repr__(self):
        return f"OperatorPair(dim={self.dim}, recipe={self.recipe.kind})"


# -- tensor recursion ---------------------------------------------------------


def tensor_pair_spectrum(n: int, k_plus, k_minus, eps, branch: int = 1,
                         starred: bool = False) -> SpectrumModel:
    """Eigenvalue model of one tensor-recursion operator on n sites.

    theta_p = a + b*q^(2p) + c*q^(-2p) with a = 0 and
        b = (eps - S)/2 * q^(-n),   c = (eps + S)/2 * q^n,
        S = branch * sqrt(eps^2 + 4*k_plus*k_minus/(q - q^(-1))^2).

    branch selects the square root sign and hence which of the two valid
    Case I labelings indexes the eigenvalues. Raises ValueError when the
    discriminant is not a perfect square over the coefficient field.
    """
    kp, km, ep = (RatFun.coerce(x) for x in (k_plus, k_minus, eps))
    dq = RatFun.q_power(1) - RatFun.q_power(-1)
    disc = ep * ep + 4 * kp * km / (dq * dq)
    root = disc.sqrt()
    if root is None:
        raise ValueError("spectrum discriminant is not a square in Q(i)(s)")
    S = root if branch >= 0 else -root
    half = Fraction(1, 2)
    b = (ep - S) * half * RatFun.q_power(-n)
    c = (ep + S) * half * RatFun.q_power(n)
    return case_I_spectrum(RatFun.zero(), b, c, d=n, starred=starred)


def build_tensor_pair(n: int, k_plus=1, k_minus=1, eps_plus=1, eps_minus=1,
                      u=None, spectrum_branch: int = 1) -> OperatorPair:
    """The 2^n-dimensional pair from the site recursion.

    W0 gains one site as (k+ u_n q^(1/2) sp + k- u_n^(-1) q^(-1/2) sm) K^(1/2)
    tensored with the identity, plus K tensor the previous operator; W1 is
    the mirrored form with K^(-1). The new site is the first tensor factor.
    The q^(1/2) factors cancel against K^(1/2), so all entries are Laurent
    in q.
    """
    if n < 1:
        raise ValueError("need at least one site")
    kp, km = RatFun.coerce(k_plus), RatFun.coerce(k_minus)
    ep, em = RatFun.coerce(eps_plus), RatFun.coerce(eps_minus)
    if u is None:
        u = [RatFun.one()] * n
    u = [RatFun.coerce(x) for x in u]
    if len(u) != n:
        raise ValueError(f"need {n} site parameters, got {len(u)}")
    q = RatFun.q_power(1)
    qi = RatFun.q_power(-1)
    K = ExactMatrix.diagonal(QS, [q, qi])
    Ki = ExactMatrix.diagonal(QS, [qi, q])
    W0 = ExactMatrix(QS, [[ep]])
    W1 = ExactMatrix(QS, [[em]])
    for site in range(1, n + 1):
        un = u[site - 1]
        eye = ExactMatrix.identity(QS, 2 ** (site - 1))
        step0 = ExactMatrix(QS, [[RatFun.zero(), kp * un], [km / un, RatFun.zero()]])
        step1 = ExactMatrix(QS, [[RatFun.zero(), kp / un], [km * un, RatFun.zero()]])
        W0 = step0.kron(eye) + K.kron(W0)
        W1 = step1.kron(eye) + Ki.kron(W1)
    recipe = PairRecipe(KIND_TENSOR, {
        "n": n,
        "k_plus": format_ratfun(kp),
        "k_minus": format_ratfun(km),
        "eps_plus": format_ratfun(ep),
        "eps_minus": format_ratfun(em),
        "u": [format_ratfun(x) for x in u],
        "spectrum_branch": spectrum_branch,
    })
    try:
        spec = tensor_pair_spectrum(n, kp, km, ep, spectrum_branch)
        # the partner's eigenvalues are the q -> q^(-1) image of the same
        # family with the other boundary scalar
        spec_star = tensor_pair_spectrum(n, kp, km, em, spectrum_branch).q_inverted()
    except ValueError:
        spec = spec_star = None
    return OperatorPair(W0, W1, QS, recipe, spec, spec_star, diameter=n)


def doubled_pair(pair: OperatorPair) -> OperatorPair:
    """Block-diagonal direct sum of a pair with itself (reducible on purpose)."""
    ring = pair.ring
    n = pair.dim
    z = ring.zero()

    def double(mat: ExactMatrix) -> ExactMatrix:
        rows = []
        for i in range(n):
            rows.append(list(mat.rows[i]) + [z] * n)
        for i in range(n):
            rows.append([z] * n + list(mat.rows[i]))
        return ExactMatrix(ring, rows)

    recipe = PairRecipe(KIND_EXPLICIT, {"doubled_from": pair.recipe.to_json()})
    return OperatorPair(double(pair.A), double(pair.Astar), ring, recipe,
                        pair.spectrum, pair.spectrum_star, pair.diameter)


# -- the four-dimensional pair at q = e^(i*pi/4) ------------------------------


def build_cyclic_rep_pair(k_plus, k_minus, alpha, order: int = 16) -> OperatorPair:
    """The explicit 4x4 pair at q = e^(i*pi/4) over Q(zeta_order).

    order must be a multiple of 16 so the field contains s = e^(i*pi/8);
    larger orders make room for eigenvalue square roots. k_minus must be
    nonzero; the remaining genericity conditions are reported by
    cyclic_rep_genericity and surface during verification.
    """
    if order % 16:
        raise ValueError("field order must be a multiple of 16")
    field = cyclotomic_field(order)
    kp, km, al = (field.coerce(_promote_into(x, order)) for x in (k_plus, k_minus, alpha))
    if km.is_zero():
        raise ValueError("k_minus must be nonzero")
    q = field.zeta(order // 8)

    def mat(e: int) -> ExactMatrix:
        # e = +1 builds the first operator, e = -1 its partner (q -> q^(-1))
        qe = q ** e
        qe2 = q ** (2 * e)
        z = field.zero()
        two = field.from_int(2)
        return ExactMatrix(field, [
            [z, qe * kp, z, al * al * km / qe2],
            [qe * km, z, two * kp, z],
            [z, km, z, kp / qe],
            [z, z, km / qe, z],
        ])

    recipe = PairRecipe(KIND_CYCLIC4, {
        "order": order,
        "k_plus": format_cyclotomic(kp),
        "k_minus": format_cyclotomic(km),
        "alpha": format_cyclotomic(al),
    })
    return OperatorPair(mat(1), mat(-1), field, recipe, diameter=3)


def _promote_into(x, order: int):
    if isinstance(x, Cyclotomic):
        if x.order == order:
            return x
        if order % x.order == 0:
            return x.promote(order)
        raise ValueError(f"constant of order {x.order} does not embed in order {order}")
    return x


def cyclic_rep_radicands(k_plus, k_minus, alpha, order: int = 16) -> dict:
    """The four quantities whose square roots are the pair's eigenvalues.

    For the first operator the eigenvalues are +-sqrt(X+) and +-sqrt(Y+)
    with X+ = q^3*alpha*k_minus^2 + k_plus*k_minus and
    Y+ = q^(-1)*alpha*k_minus^2 + k_plus*k_minus; the partner swaps
    q -> q^(-1).
    """
    field = cyclotomic_field(order)
    kp, km, al = (field.coerce(_promote_into(x, order)) for x in (k_plus, k_minus, alpha))
    q = field.zeta(order // 8)
    out = {}
    for tag, e in (("plus", 1), ("minus", -1)):
        out["X_" + tag] = q ** (3 * e) * al * km * km + kp * km
        out["Y_" + tag] = q ** (-e) * al * km * km + kp * km
    return out


def cyclic_rep_genericity(k_plus, k_minus, alpha, order: int = 16) -> dict:
    """Exact predicates behind 'generic parameters' for the 4x4 pair.

    Returns named booleans: nonzero k_minus; nonzero alpha (zero alpha
    collapses the wrap-around band and the pair is an ordinary one);
    alpha distinct from +-q*k_plus/k_minus; nondegenerate spectra for
    both operators (the four radicand values nonzero and unequal within
    each operator).
    """
    field = cyclotomic_field(order)
    kp, km, al = (field.coerce(_promote_into(x, order)) for x in (k_plus, k_minus, alpha))
    q = field.zeta(order // 8)
    out = {
        "k_minus_nonzero": not km.is_zero(),
        "alpha_nonzero": not al.is_zero(),
    }
    if out["k_minus_nonzero"]:
        ratio = q * kp / km
        out["alpha_avoids_ratio"] = al != ratio and al != -ratio
    else:
        out["alpha_avoids_ratio"] = False
    rad = cyclic_rep_radicands(kp, km, al, order)
    for tag in ("plus", "minus"):
        X, Y = rad["X_" + tag], rad["Y_" + tag]
        out[f"spectrum_{tag}_nondegenerate"] = (
            not X.is_zero() and not Y.is_zero() and X != Y
        )
    out["generic"] = all(v for k, v in out.items() if k != "generic")
    return out


def cyclotomic_sqrt(x: Cyclotomic, candidates=None) -> Cyclotomic | None:
    """A square root of x in its own field, if one exists among candidates.

    Searches c * zeta^j over supplied candidate magnitudes c (default:
    small integers and 2+i / 2-i style Gaussian values folded in by the
    caller). Returns None when nothing squares to x.
    """
    field = cyclotomic_field(x.order)
    base = [field.one()]
    if candidates:
        base = [field.coerce(_promote_into(c, x.order)) for c in candidates]
    for c in base:
        for j in range(x.order):
            cand = c * field.zeta(j)
            if cand * cand == x:
                return cand
    return None


# -- preset instances ---------------------------------------------------------


def unit_tensor_pair(n: int = 3) -> OperatorPair:
    """All recursion scalars set to one; spectrum labeled so theta_0 = -[2]_q
    when n = 3 (eigenvalues are the balanced q-integers [2p - n + 1]_q)."""
    return build_tensor_pair(n, 1, 1, 1, 1, spectrum_branch=_UNIT_BRANCH)


def rescaled_tensor_pair(n: int = 3) -> OperatorPair:
    """Boundary scalars -(q - q^(-1)) and site couplings q - q^(-1).

    With this choice b = -q^(-2) and c = q^2 under the branch fixed
    below: the exponential parts of b and c sit at opposite integer
    q-powers (+-2), the shape the mixed/divided relation machinery needs.
    """
    dq = RatFun.q_power(1) - RatFun.q_power(-1)
    return build_tensor_pair(n, dq, dq, -dq, -dq, spectrum_branch=_RESCALED_BRANCH)


# Branch signs are fixed by the explicit coefficient checks in the test
# suite: the unit pair must have b = q^(-2)/(q - q^(-1)), the rescaled
# pair b = -q^(-2).
_UNIT_BRANCH = -1
_RESCALED_BRANCH = 1


def cyclic_rep_rational_pair() -> OperatorPair:
    """Small rational parameters, fully generic; for span/closure work."""
    return build_cyclic_rep_pair(2, 1, 3, order=16)


def cyclic_rep_verification_pair() -> tuple:
    """Parameters chosen so every eigenvalue lies in one cyclotomic field.

    k+ = 3*zeta_16, k- = zeta_16^(-1), alpha = 4 give radicands
    (2+i)^2, (2-i)^2, i^2 and 7; sqrt(7) lives in Q(zeta_112) via the
    quadratic Gauss sum, so order 112 holds the full eigendata. Returns
    (pair, eigenvalues_A, eigenvalues_Astar).
    """
    order = 112
    field = cyclotomic_field(order)
    z16 = field.zeta(7)          # zeta_16 = zeta_112^7
    i = field.zeta(28)           # i = zeta_112^28
    kp = field.from_int(3) * z16
    km = z16 ** -1
    al = field.from_int(4)
    pair = build_cyclic_rep_pair(kp, km, al, order=order)
    two = field.from_int(2)
    r_pp = two + i               # sqrt of 3 + 4i
    r_pm = two - i               # sqrt of 3 - 4i
    # sqrt(7) via the Gauss sum over the squares mod 7
    g = field.zero()
    for t in range(1, 7):
        term = field.zeta(16 * t)    # zeta_7 = zeta_112^16
        g = g + term if pow(t, 3, 7) == 1 else g - term
    sqrt7 = -i * g
    if sqrt7 * sqrt7 != field.from_int(7):
        raise ArithmeticError("Gauss-sum square root failed")
    rad = cyclic_rep_radicands(kp, km, al, order)
    for val, root in ((rad["X_plus"], r_pp), (rad["Y_plus"], r_pm),
                      (rad["X_minus"], i), (rad["Y_minus"], sqrt7)):
        if root * root != val:
            raise ArithmeticError("preset radicand/root mismatch")
    eig_A = [r_pp, -r_pp, r_pm, -r_pm]
    eig_Astar = [i, -i, sqrt7, -sqrt7]
    return pair, eig_A, eig_Astar


# -- JSON round trip ----------------------------------------------------------


def pair_to_json(pair: OperatorPair) -> dict:
    """Recipe plus matrices, entries as grammar strings."""
    ring = pair.ring
    if ring is QS:
        ring_desc = {"type": "ratfun"}
        fmt = format_ratfun
    else:
        ring_desc = {"type": "cyclotomic", "order": ring.order}
        fmt = format_cyclotomic
    data = {
        "recipe": pair.recipe.to_json(),
        "ring": ring_desc,
        "A": [[fmt(x) for x in row] for row in pair.A.rows],
        "Astar": [[fmt(x) for x in row] for row in pair.Astar.rows],
    }
    if pair.diameter is not None:
        data["diameter"] = pair.diameter
    if pair.spectrum is not None:
        data["spectrum"] = pair.spectrum.describe()
    if pair.spectrum_star is not None:
        data["spectrum_star"] = pair.spectrum_star.describe()
    return data


def pair_from_json(data: dict) -> OperatorPair:
    ring_desc = data.get("ring", {"type": "ratfun"})
    if ring_desc["type"] == "ratfun":
        ring = QS
        parse = parse_scalar
    else:
        order = int(ring_desc["order"])
        ring = cyclotomic_field(order)
        parse = lambda text: parse_cyclotomic(text, order)
    A = ExactMatrix(ring, [[parse(x) for x in row] for row in data["A"]])
    Astar = ExactMatrix(ring, [[parse(x) for x in row] for row in data["Astar"]])
    recipe = PairRecipe.from_json(data["recipe"])
    spec = _model_from_json(data.get("spectrum"), parse)
    spec_star = _model_from_json(data.get("spectrum_star"), parse)
    return OperatorPair(A, Astar, ring, recipe, spec, spec_star,
                        diameter=data.get("diameter"))


def _model_from_json(data, parse) -> SpectrumModel | None:
    if data is None:
        return None
    if data["case"] == EXPLICIT:
        return SpectrumModel(EXPLICIT, values=[parse(v) for v in data["values"]],
                             d=data.get("d"), starred=data.get("starred", False))
    return SpectrumModel(
        data["case"],
        a=parse(data["a"]),
        b=parse(data["b"]),
        c=parse(data["c"]),
        d=data.get("d"),
        starred=data.get("starred", False),
        allow_zero=True,
    )


def build_from_recipe(recipe: PairRecipe) -> OperatorPair:
    """Re-run a builder from its serialized parameters."""
    p = recipe.params
    if recipe.kind == KIND_TENSOR:
        return build_tensor_pair(
            int(p["n"]),
            parse_scalar(p["k_plus"]),
            parse_scalar(p["k_minus"]),
            parse_scalar(p["eps_plus"]),
            parse_scalar(p["eps_minus"]),
            [parse_scalar(x) for x in p["u"]],
            spectrum_branch=int(p.get("spectrum_branch", 1)),
        )
    if recipe.kind == KIND_CYCLIC4:
        order = int(p.get("order", 16))
        return build_cyclic_rep_pair(
            parse_cyclotomic(p["k_plus"], order),
            parse_cyclotomic(p["k_minus"], order),
            parse_cyclotomic(p["alpha"], order),
            order=order,
        )
    raise ValueError("explicit recipes carry no parameters to rebuild from")
