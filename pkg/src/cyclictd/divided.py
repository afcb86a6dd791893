"""Minimal polynomials at the root and the divided operators.

At q = e^(i*pi/N) the specialized operator satisfies P_N(A) = 0 with
P_N(x) = prod_t (x - theta_t) over the N merged eigenvalues. Dividing
P_N(A(q)) by the q-factorial [N]_q!, which vanishes at the same root,
leaves a finite limit: the divided operator. Its eigenvalues come from
the same quotient applied to the scalar eigenvalue curves; when the
merged eigenvalues collapse, the product is taken against the running
curves r_t(q) = a(q) + b(q) w^(2t) + c(q) w^(-2t) instead, which is the
higher-order form of the same limit.
"""

from __future__ import annotations

from fractions import Fraction

from .constructions import OperatorPair, SpectrumModel, _coeff_series
from .errors import DivergentLimitError, PrecisionError
from .linalg import ExactMatrix
from .scalars import (
    BranchPolicy,
    Cyclotomic,
    EpsSeries,
    PhasedRatFun,
    QQ,
    QS,
    RatFun,
    SymPoly,
    SymPolyRing,
    cyclotomic_field,
    default_series_order,
    q_factorial,
    series_of_phased,
    series_of_ratfun,
)


# -- minimal polynomial -------------------------------------------------------


class MinimalPoly:
    """prod_t (x - root_t) held as roots plus expanded coefficients.

    coefficients[k] multiplies x^(deg - k); coefficients[0] = 1 and
    coefficients[k] = (-1)^k e_k(roots).
    """

    __slots__ = ("ring", "roots", "coefficients")

    def __init__(self, ring, roots):
        self.ring = ring
        self.roots = [ring.coerce(r) for r in roots]
        coeffs = [ring.one()]
        for r in self.roots:
            nxt = [ring.zero()] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i] = ring.add(nxt[i], c)
                nxt[i + 1] = ring.sub(nxt[i + 1], ring.mul(c, r))
            coeffs = nxt
        self.coefficients = coeffs

    @property
    def degree(self) -> int:
        return len(self.roots)

    def evaluate(self, x):
        ring = self.ring
        out = ring.zero()
        for c in self.coefficients:
            out = ring.add(ring.mul(out, x), c)
        return out

    def at_matrix(self, mat: ExactMatrix) -> ExactMatrix:
        ring = mat.ring
        out = ExactMatrix.identity(ring, mat.n).scale(ring.coerce(self.coefficients[0]))
        for c in self.coefficients[1:]:
            out = out * mat + ExactMatrix.identity(ring, mat.n).scale(ring.coerce(c))
        return out

    def __repr__(self):
        return f"MinimalPoly(degree={self.degree})"


def minimal_poly(spectrum: list, ring=None) -> MinimalPoly:
    """The monic polynomial with the given pairwise-distinct roots."""
    if not spectrum:
        raise ValueError("need at least one root")
    if ring is None:
        first = spectrum[0]
        if isinstance(first, Cyclotomic):
            ring = cyclotomic_field(first.order)
        elif isinstance(first, RatFun):
            ring = QS
        else:
            raise TypeError("supply the ring for plain scalar roots")
    roots = [ring.coerce(r) for r in spectrum]
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if ring.eq(roots[i], roots[j]):
                raise ValueError(f"repeated root at positions {i} and {j}")
    return MinimalPoly(ring, roots)


def symbolic_min_poly(N: int) -> list:
    """Coefficients of prod_t (x - a - b w^(2t) - c w^(-2t)) at w = e^(i*pi/N).

    Returns polynomials in the symbols a, b, c with rational
    coefficients: entry k multiplies x^(N-k). Each coefficient is
    expanded over the cyclotomic field and checked to be rational,
    which must hold because the root set is permuted by the Galois
    action fixing a, b, c.
    """
    order = 4 * N
    field = cyclotomic_field(order)
    ringC = SymPolyRing(field, {})
    a, b, c = ringC.sym("a"), ringC.sym("b"), ringC.sym("c")
    coeffs = [ringC.one()]
    for t in range(N):
        root = a + b * ringC.coerce(field.zeta(4 * t % order)) \
                 + c * ringC.coerce(field.zeta(-4 * t % order))
        nxt = [ringC.zero()] * (len(coeffs) + 1)
        for i, co in enumerate(coeffs):
            nxt[i] = nxt[i] + co
            nxt[i + 1] = nxt[i + 1] - co * root
        coeffs = nxt
    ringQ = SymPolyRing(QQ, {})
    out = []
    for co in coeffs:
        terms = {}
        for mono, val in co.t.items():
            if not val.is_rational():
                raise ArithmeticError(
                    f"coefficient of {dict(mono)} is not rational: symmetry broken"
                )
            terms[mono] = val.rational_value()
        out.append(SymPoly(ringQ, terms))
    return out


# -- divided operators ---------------------------------------------------------


class DividedOperator:
    """Limit of P_N(A(q))/[N]_q! at the root, with its eigenvalue list."""

    __slots__ = ("matrix", "N", "order", "which", "spectrum", "mode", "policy")

    def __init__(self, matrix: ExactMatrix, N: int, order: int, which: str,
                 spectrum: list | None, mode: str, policy):
        self.matrix = matrix
        self.N = N
        self.order = order
        self.which = which
        self.spectrum = spectrum
        self.mode = mode
        self.policy = policy

    def __repr__(self):
        return f"DividedOperator(which={self.which!r}, N={self.N}, mode={self.mode!r})"


def _series_matrix(mat: ExactMatrix, order: int, K: int, ring) -> list:
    return [[series_of_ratfun(f, order, K, ring) for f in row] for row in mat.rows]


def _series_matmul(X: list, Y: list, ring) -> list:
    n = len(X)
    m = len(Y[0])
    inner = len(Y)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = EpsSeries.zero(ring)
            for k in range(inner):
                acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _series_shift_diag(X: list, value, ring) -> list:
    const = EpsSeries.constant(ring, ring.coerce(value))
    out = [list(row) for row in X]
    for i in range(len(out)):
        out[i][i] = out[i][i] - const
    return out


def divided_polynomial(pair: OperatorPair, which: str, N: int,
                       policy: BranchPolicy | None = None,
                       K: int | None = None) -> DividedOperator:
    """The matrix limit of P_N(A(q)) / [N]_q! at q = e^(i*pi/N).

    P_N is built from the frozen root eigenvalues theta_t, constant in
    q; all q-dependence sits in the matrix entries and the q-factorial.
    Repeated frozen eigenvalues are allowed here (the product is still
    well defined); an entry whose limit does not exist is reported by
    position and pole order.
    """
    if N < 2:
        raise ValueError("divided operators need N >= 2")
    if pair.ring is not QS:
        raise TypeError("divided_polynomial needs a pair over the rational-function field")
    model = pair.model(which)
    if model is None:
        raise ValueError(f"pair carries no eigenvalue model for {which}")
    mat = pair.operator(which)
    order = 4 * N
    field = cyclotomic_field(order)
    frozen = model.root_values(N, order)
    if K is None:
        K = max(default_series_order(), N + 4)
    last_exc = None
    for attempt in range(3):
        try:
            series = _series_matrix(mat, order, K, field)
            acc = _series_shift_diag(series, frozen[0], field)
            for th in frozen[1:]:
                acc = _series_matmul(acc, _series_shift_diag(series, th, field), field)
            den = series_of_ratfun(q_factorial(N), order, K, field)
            rows = []
            for i, row in enumerate(acc):
                out_row = []
                for j, s in enumerate(row):
                    try:
                        out_row.append((s / den).limit())
                    except DivergentLimitError as e:
                        raise DivergentLimitError(
                            f"entry ({i}, {j}) of the divided operator diverges "
                            f"(pole order {-e.lead_order})",
                            lead_order=e.lead_order,
                            lead_coeff=e.lead_coeff,
                        ) from e
                rows.append(out_row)
            matrix = ExactMatrix(field, rows)
            break
        except PrecisionError as e:
            last_exc = e
            K *= 2
    else:
        raise last_exc
    spectrum = None
    mode = spectrum_mode(model, N)
    if pair.diameter is not None:
        spectrum = []
        for n in range(pair.diameter + 1):
            try:
                val, _ = _spectrum_with_mode(model, N, n, policy, None)
            except DivergentLimitError:
                val = None
            spectrum.append(val)
    return DividedOperator(matrix, N, order, which, spectrum, mode, policy)


# -- divided spectra -----------------------------------------------------------


class QuadraticSpectrumData:
    """Eigenvalue family known only through b^2, c^2 and bc.

    Used when b and c live outside the coefficient field (square roots
    of q-power expressions) but their quadratic combinations are honest
    phased rational functions. Degree-2 divided spectra depend on the
    coefficients only through these combinations.
    """

    __slots__ = ("a", "b2", "c2", "bc", "d", "starred")

    def __init__(self, a, b2, c2, bc, d=None, starred=False):
        self.a = PhasedRatFun.coerce(a)
        self.b2 = PhasedRatFun.coerce(b2)
        self.c2 = PhasedRatFun.coerce(c2)
        self.bc = PhasedRatFun.coerce(bc)
        self.d = d
        self.starred = bool(starred)

    def theta_squared(self, n: int) -> PhasedRatFun:
        """(theta_n - a)^2 as a phased scalar (a is removed first)."""
        q4n = PhasedRatFun.const(RatFun.q_power(4 * n))
        q4nm = PhasedRatFun.const(RatFun.q_power(-4 * n))
        two = PhasedRatFun.const(2)
        return self.b2 * q4n + self.c2 * q4nm + two * self.bc

    def __repr__(self):
        return f"QuadraticSpectrumData(d={self.d})"


def divided_spectrum(model, N: int, n: int, policy: BranchPolicy | None = None,
                     mode: str = "auto", K: int | None = None):
    """Eigenvalue of the divided operator on the n-th original eigenspace.

    Computed as the limit of P_N(theta_n(q)) / [N]_q!. The product
    defining P_N runs over the frozen root eigenvalues when those are
    pairwise distinct, and over the running curves r_t(q) when they
    collapse (the degenerate case where the first derivative alone
    cannot resolve the limit). mode forces "frozen" or "running".
    """
    value, _ = _spectrum_with_mode(model, N, n, policy, mode if mode != "auto" else None, K)
    return value


def spectrum_mode(model, N: int) -> str:
    """Which product the auto rule picks: "frozen" or "running"."""
    if isinstance(model, QuadraticSpectrumData):
        return "running"
    order = 4 * N
    return "frozen" if model.frozen_distinct(N, order) else "running"


def _spectrum_with_mode(model, N: int, n: int, policy, forced, K=None):
    if N < 2:
        raise ValueError("divided spectra need N >= 2")
    if isinstance(model, QuadraticSpectrumData):
        if forced == "frozen":
            raise ValueError("quadratic data fixes only the running product")
        return _quadratic_spectrum(model, N, n, policy, K), "running"
    if not isinstance(model, SpectrumModel):
        raise TypeError(f"unsupported model type {type(model).__name__}")
    order = 4 * N
    mode = forced or spectrum_mode(model, N)
    field = cyclotomic_field(order)
    if K is None:
        K = max(default_series_order(), N + 4)
    last_exc = None
    for attempt in range(3):
        try:
            theta = model.theta_series(n, order, K)
            if mode == "frozen":
                roots = [EpsSeries.constant(field, v) for v in model.root_values(N, order)]
            else:
                roots = [_running_curve(model, t, order, K, field) for t in range(N)]
            num = EpsSeries.constant(field, field.one())
            for r in roots:
                num = num * (theta - r)
            den = series_of_ratfun(q_factorial(N), order, K, field)
            return (num / den).limit(), mode
        except PrecisionError as e:
            last_exc = e
            K *= 2
    raise last_exc


def _running_curve(model: SpectrumModel, t: int, order: int, K: int, field) -> EpsSeries:
    """r_t(q) = a(q) + b(q) w^(2t) + c(q) w^(-2t), the root curve with the
    root of unity frozen in the exponential but the coefficients live."""
    sa = _coeff_series(model.a, order, K, field)
    sb = _coeff_series(model.b, order, K, field)
    sc = _coeff_series(model.c, order, K, field)
    wp = EpsSeries.constant(field, field.zeta(4 * t % order))
    wm = EpsSeries.constant(field, field.zeta(-4 * t % order))
    return sa + sb * wp + sc * wm


def _quadratic_spectrum(model: QuadraticSpectrumData, N: int, n: int,
                        policy: BranchPolicy | None, K=None):
    """Degree-2 running limit from b^2, c^2, bc alone.

    For N = 2 the running product telescopes to
    (theta_n - a)^2 - (b + c)^2 = b^2 (q^(4n) - 1) + c^2 (q^(-4n) - 1),
    so the plain-a part drops out and only quadratic data survives.
    """
    if N != 2:
        raise ValueError("quadratic spectrum data supports N = 2 only")
    order = 8
    if policy is None:
        policy = BranchPolicy.for_order(order)
    if K is None:
        K = default_series_order()
    one = PhasedRatFun.const(1)
    q4n = PhasedRatFun.const(RatFun.q_power(4 * n))
    q4nm = PhasedRatFun.const(RatFun.q_power(-4 * n))
    numerator = model.b2 * (q4n - one) + model.c2 * (q4nm - one)
    base = cyclotomic_field(order)
    mods = {}
    for _, form in numerator.terms:
        for name in form:
            mods[policy.unit_symbol(name)] = policy.period
    ring = SymPolyRing(base, mods)
    last_exc = None
    for attempt in range(3):
        try:
            num = series_of_phased(numerator, order, policy, K, ring)
            den = series_of_ratfun(q_factorial(2), order, K, ring)
            return (num / den).limit()
        except PrecisionError as e:
            last_exc = e
            K *= 2
    raise last_exc


def progression_constant(model: SpectrumModel, N: int):
    """Half the step of the divided eigenvalue progression.

    C = (q - q^(-1))^N q^(-N(N+1)/2) (b^N - c^N) / (2N) at the root.
    When the coefficient family keeps b and c at opposite q-powers the
    divided eigenvalues satisfy theta-tilde_(n+1) - theta-tilde_n = 2C;
    squared, 4C^2 is the rho constant of the higher-order relations.
    """
    order = 4 * N
    field = cyclotomic_field(order)
    qpart = RatFun.q_power(1) - RatFun.q_power(-1)
    qpart = qpart ** N * RatFun.q_power(-N * (N + 1) // 2) * RatFun.coerce(Fraction(1, 2 * N))
    if isinstance(model.b, RatFun) and isinstance(model.c, RatFun):
        from .scalars import limit_at_root

        return limit_at_root(qpart * (model.b ** N - model.c ** N), order)
    from .constructions import _coeff_at_root
    from .scalars import value_at_root

    bN = _coeff_at_root(model.b, order) ** N
    cN = _coeff_at_root(model.c, order) ** N
    return value_at_root(qpart, order) * (bN - cN)


# -- closed-form cross-check ---------------------------------------------------


def closed_form_divided_spectrum(model: SpectrumModel, N: int, n: int):
    """First-derivative closed form for the divided eigenvalue.

    theta-tilde_n = C0 * (da*q + db*q^(2n+1) + dc*q^(-2n+1)
                          + 2n*(b*q^(2n) - c*q^(-2n)))
    with C0 = -(q - q^(-1)) * prod_(j != t) (theta_t - theta_j)
              / (2N * [N-1]_q!), everything evaluated at the root and
    t = n mod N. Defined only when the coefficient derivatives are
    finite there; compare_closed_form reports disagreements with the
    series limit instead of trusting either side.
    """
    order = 4 * N
    field = cyclotomic_field(order)
    frozen = model.root_values(N, order)
    t = n % N
    prod = field.one()
    for j in range(N):
        if j != t:
            prod = prod * (frozen[t] - frozen[j])
    qv = field.zeta(2)
    qinv = field.zeta(order - 2)
    fact = q_factorial(N - 1, base=qv, ring=field)
    C0 = -(qv - qinv) * prod / (field.from_int(2 * N) * fact)
    data = model.coefficient_root_data(order)
    inner = (
        data["da"] * qv
        + data["db"] * field.zeta((4 * n + 2) % order)
        + data["dc"] * field.zeta((-4 * n + 2) % order)
        + field.from_int(2 * n) * (
            data["b"] * field.zeta(4 * n % order)
            - data["c"] * field.zeta(-4 * n % order)
        )
    )
    return C0 * inner


def compare_closed_form(model: SpectrumModel, N: int, n: int) -> dict:
    """Series limit vs. the closed form, as a report rather than an assert."""
    out = {"N": N, "n": n}
    try:
        out["series"] = divided_spectrum(model, N, n)
        out["series_error"] = None
    except (DivergentLimitError, PrecisionError) as e:
        out["series"] = None
        out["series_error"] = str(e)
    try:
        out["closed_form"] = closed_form_divided_spectrum(model, N, n)
        out["closed_form_error"] = None
    except (DivergentLimitError, PrecisionError) as e:
        out["closed_form"] = None
        out["closed_form_error"] = str(e)
    if out["series"] is not None and out["closed_form"] is not None:
        out["match"] = out["series"] == out["closed_form"]
    else:
        out["match"] = None
    return out
