"""Root-of-unity specialization and cyclic-pair verification.

Specializing q to e^(i*pi/N) merges the eigenspaces of a pair whose
eigenvalues are theta_p = a + b q^(2p) + c q^(-2p): classes p mod N
share one limit eigenvalue. The specialized pair is checked against the
four defining conditions of a cyclic pair: both operators
diagonalizable, each banded with wrap-around with respect to an
ordering of the other's eigenspaces, and no common invariant subspace.
"""

from __future__ import annotations

from .constructions import EXPLICIT, OperatorPair, PairRecipe, KIND_EXPLICIT, SpectrumModel
from .errors import (
    DecompositionError,
    DegenerateSpectrumError,
    DivergentLimitError,
    PoleAtRootError,
)
from .linalg import (
    EchelonSpan,
    ExactMatrix,
    algebra_closure,
    block_support,
    cyclic_distance,
    eigendecompose,
    invariant_subspace_from,
    support_bandwidth,
)
from .scalars import (
    QS,
    RatFun,
    cyclotomic_field,
    format_cyclotomic,
    limit_at_root,
    series_of_ratfun,
)


class SpecializedPair:
    """A pair over a cyclotomic field with its merged eigenvalue lists."""

    __slots__ = ("pair", "N", "order", "spectra", "spectra_star", "merged_from",
                 "block_dims", "block_dims_star", "transition_finite")

    def __init__(self, pair: OperatorPair, N: int, order: int,
                 spectra: list, spectra_star: list, merged_from: list,
                 block_dims: list, block_dims_star: list,
                 transition_finite: bool | None):
        self.pair = pair
        self.N = N
        self.order = order
        self.spectra = spectra
        self.spectra_star = spectra_star
        self.merged_from = merged_from
        self.block_dims = block_dims
        self.block_dims_star = block_dims_star
        self.transition_finite = transition_finite

    @property
    def dim(self) -> int:
        return self.pair.dim

    def __repr__(self):
        return f"SpecializedPair(N={self.N}, dim={self.dim})"


def _entry_values(mat: ExactMatrix, order: int, label: str) -> ExactMatrix:
    """Entrywise limits at the root; a diverging entry is reported by name."""
    field = cyclotomic_field(order)
    out = []
    for i, row in enumerate(mat.rows):
        new = []
        for j, f in enumerate(row):
            try:
                new.append(field.coerce(limit_at_root(f, order)))
            except DivergentLimitError as e:
                raise PoleAtRootError(
                    f"entry ({i}, {j}) of {label} has a pole at the root "
                    f"(order {-e.lead_order})",
                    lead_order=e.lead_order,
                ) from e
        out.append(new)
    return ExactMatrix(field, out)


def _check_ratio(model: SpectrumModel, order: int, N: int, label: str) -> None:
    """The distinct-eigenvalue condition: c/b must avoid q^(2m), m = 0..N-1."""
    if model.case != "I":
        return
    from .constructions import Cyclotomic  # local: avoid polluting module names

    if isinstance(model.b, Cyclotomic) or isinstance(model.c, Cyclotomic):
        b = model.b if isinstance(model.b, Cyclotomic) else limit_at_root(model.b, order)
        c = model.c if isinstance(model.c, Cyclotomic) else limit_at_root(model.c, order)
        if b.is_zero():
            return
        ratio = c / b
    else:
        try:
            ratio = limit_at_root(model.c / model.b, order)
        except DivergentLimitError:
            return  # an infinite ratio never equals a root of unity
    field = cyclotomic_field(order)
    for m in range(N):
        if ratio == field.zeta(4 * m % order):
            raise DegenerateSpectrumError(
                f"{label}: c/b equals q^(2m) at m = {m}; "
                f"the specialized eigenvalues would merge"
            )


def _merged_classes(N: int, d: int) -> list:
    if N > d:
        return [[t] for t in range(d + 1)]
    return [[t + k * N for k in range((d - t) // N + 1)] for t in range(N)]


def _kernel_dims(mat: ExactMatrix, values: list) -> list:
    ring = mat.ring
    eye = ExactMatrix.identity(ring, mat.n)
    return [len((mat - eye.scale(ring.coerce(v))).kernel()) for v in values]


def generic_eigenvectors(mat: ExactMatrix, model: SpectrumModel) -> list:
    """Kernel bases for theta_0..theta_d over the rational-function field.

    Returns a list of (value, vectors); vectors may not fill the space
    when the matrix is defective.
    """
    out = []
    for p in range(model.d + 1):
        th = model.evaluate(p)
        shifted = mat - ExactMatrix.identity(mat.ring, mat.n).scale(th)
        out.append((th, shifted.kernel()))
    return out


def cleared_at_root(vec: list, order: int) -> list:
    """Root limit of a function-field vector after scale normalization.

    The whole vector is rescaled so its lowest vanishing order at the
    root is zero, then evaluated there. The scaling keeps the direction
    (spanned line) and turns a vanishing vector into a nonzero one
    whenever some entry is a nonzero function.
    """
    field = cyclotomic_field(order)
    series = [series_of_ratfun(f, order) for f in vec]
    leads = [s.lead_order() for s in series if not s.is_zero_to_prec()]
    if not leads:
        return [field.zero() for _ in vec]
    m = min(leads)
    return [s.coeff(m) for s in series]


def limit_eigenspaces(pair: OperatorPair, which: str, order: int) -> list:
    """Root limits of the generic eigenspaces, one vector list per level.

    Entry n spans the limit of the n-th eigenspace of the chosen
    operator. Raises DecompositionError when the cleared vectors stop
    being linearly independent at the root, in which case the generic
    basis has no usable limit.
    """
    model = pair.model(which)
    if model is None:
        raise DecompositionError("pair carries no eigenvalue model")
    eig = generic_eigenvectors(pair.operator(which), model)
    field = cyclotomic_field(order)
    out = []
    total = 0
    span = EchelonSpan(field, pair.dim)
    for th, vecs in eig:
        level = []
        for v in vecs:
            w = cleared_at_root(v, order)
            if not span.insert(w):
                raise DecompositionError(
                    "cleared eigenvectors are dependent at the root"
                )
            level.append(w)
            total += 1
        out.append(level)
    if total != pair.dim:
        raise DecompositionError(
            f"limit eigenvectors span {total} of {pair.dim} dimensions"
        )
    return out


def _transition_flag(pair: OperatorPair, order: int) -> bool | None:
    """Whether the generic eigenbases stay usable at the root.

    Builds the transition matrix between the eigenbases of the two
    operators over the function field, rescales each column so its
    lowest vanishing order at the root is zero, and checks the limit
    matrix is still invertible. Column rescaling removes the
    normalization freedom of kernel bases; invertibility of the limit
    is what makes the two specialized pictures agree.
    """
    if pair.spectrum is None or pair.spectrum_star is None:
        return None
    eig = generic_eigenvectors(pair.A, pair.spectrum)
    eig_star = generic_eigenvectors(pair.Astar, pair.spectrum_star)
    cols = [v for _, vecs in eig for v in vecs]
    cols_star = [v for _, vecs in eig_star for v in vecs]
    n = pair.dim
    if len(cols) != n or len(cols_star) != n:
        return None
    E = ExactMatrix.from_columns(QS, cols)
    Es = ExactMatrix.from_columns(QS, cols_star)
    T = E.inverse() * Es
    field = cyclotomic_field(order)
    limit_cols = []
    for j in range(n):
        col = cleared_at_root([T.rows[i][j] for i in range(n)], order)
        if all(field.is_zero(x) for x in col):
            return False
        limit_cols.append(col)
    cleared = ExactMatrix.from_columns(field, limit_cols)
    return not cleared.det().is_zero()


def specialize_pair(pair: OperatorPair, N: int, check_transition: bool = True) -> SpecializedPair:
    """Evaluate a function-field pair at q = e^(i*pi/N), merging eigenvalues.

    Every matrix entry must have a finite limit at the root, and the
    eigenvalue families must stay pairwise distinct after merging
    (c/b != q^(2m)); violations raise with the offending entry or
    exponent named. The transition check is a diagnostic flag, not a
    gate: a False value means the specialized pair depends on the basis
    it was written in.
    """
    if N < 2:
        raise ValueError("cyclicity must be at least 2")
    if pair.ring is not QS:
        raise TypeError("specialize_pair needs a pair over the rational-function field")
    order = 4 * N
    A = _entry_values(pair.A, order, "A")
    Astar = _entry_values(pair.Astar, order, "Astar")
    if pair.spectrum is not None:
        _check_ratio(pair.spectrum, order, N, "A")
    if pair.spectrum_star is not None:
        _check_ratio(pair.spectrum_star, order, N, "Astar")

    spectra = spectra_star = None
    merged = None
    d = pair.diameter
    if pair.spectrum is not None and d is not None:
        merged = _merged_classes(N, d)
        spectra = [pair.spectrum.evaluate_at_root(cls[0], order) for cls in merged]
        for i in range(len(spectra)):
            for j in range(i + 1, len(spectra)):
                if spectra[i] == spectra[j]:
                    raise DegenerateSpectrumError(
                        f"A: merged eigenvalues {i} and {j} coincide at the root"
                    )
    if pair.spectrum_star is not None and d is not None:
        merged = merged or _merged_classes(N, d)
        spectra_star = [pair.spectrum_star.evaluate_at_root(cls[0], order) for cls in merged]
        for i in range(len(spectra_star)):
            for j in range(i + 1, len(spectra_star)):
                if spectra_star[i] == spectra_star[j]:
                    raise DegenerateSpectrumError(
                        f"Astar: merged eigenvalues {i} and {j} coincide at the root"
                    )

    field = cyclotomic_field(order)
    recipe = PairRecipe(KIND_EXPLICIT, {
        "specialized_from": pair.recipe.to_json(),
        "N": N,
    })
    model = model_star = None
    if spectra is not None:
        model = SpectrumModel(EXPLICIT, values=spectra, d=len(spectra) - 1)
    if spectra_star is not None:
        model_star = SpectrumModel(EXPLICIT, values=spectra_star,
                                   d=len(spectra_star) - 1, starred=True)
    spair = OperatorPair(A, Astar, field, recipe, model, model_star,
                         diameter=pair.diameter)
    dims = _kernel_dims(A, spectra) if spectra is not None else None
    dims_star = _kernel_dims(Astar, spectra_star) if spectra_star is not None else None
    flag = _transition_flag(pair, order) if check_transition else None
    return SpecializedPair(spair, N, order, spectra, spectra_star, merged,
                           dims, dims_star, flag)


def as_specialized(pair: OperatorPair, N: int, spectra: list,
                   spectra_star: list) -> SpecializedPair:
    """Wrap a pair that is already defined over a cyclotomic field.

    The eigenvalue lists are taken as given (they must live in the
    pair's field); block dimensions are computed by kernel ranks.
    """
    field = pair.ring
    spectra = [field.coerce(v) for v in spectra]
    spectra_star = [field.coerce(v) for v in spectra_star]
    dims = _kernel_dims(pair.A, spectra)
    dims_star = _kernel_dims(pair.Astar, spectra_star)
    if pair.spectrum is None:
        pair = OperatorPair(
            pair.A, pair.Astar, field, pair.recipe,
            SpectrumModel(EXPLICIT, values=spectra, d=len(spectra) - 1),
            SpectrumModel(EXPLICIT, values=spectra_star, d=len(spectra_star) - 1,
                          starred=True),
            diameter=pair.diameter,
        )
    merged = [[t] for t in range(len(spectra))]
    return SpecializedPair(pair, N, getattr(field, "order", 0), spectra,
                           spectra_star, merged, dims, dims_star, None)


# -- the four conditions ------------------------------------------------------


class IrreducibilityReport:
    """Outcome of the word-closure decision with its certificate."""

    __slots__ = ("irreducible", "span_dim", "total_dim", "spanning_words",
                 "invariant_subspace")

    def __init__(self, irreducible, span_dim, total_dim, spanning_words,
                 invariant_subspace):
        self.irreducible = irreducible
        self.span_dim = span_dim
        self.total_dim = total_dim
        self.spanning_words = spanning_words
        self.invariant_subspace = invariant_subspace

    def to_json(self) -> dict:
        out = {
            "irreducible": self.irreducible,
            "span_dim": self.span_dim,
            "full_dim": self.total_dim,
        }
        if self.spanning_words is not None:
            out["spanning_words"] = self.spanning_words
        if self.invariant_subspace is not None:
            out["invariant_subspace_dim"] = len(self.invariant_subspace)
        return out

    def __repr__(self):
        return f"IrreducibilityReport({self.irreducible}, span={self.span_dim})"


def _word_name(word: tuple) -> str:
    if not word:
        return "1"
    names = {0: "A", 1: "A*"}
    return "·".join(names[g] for g in word)


def irreducible(obj) -> IrreducibilityReport:
    """Decide common-invariant-subspace existence by word closure.

    The span of all words in {A, A*} (seeded with the identity) is
    grown breadth-first; the pair is irreducible exactly when the span
    fills End(V). On the reducible side a proper invariant subspace is
    located by closing single seed vectors: each standard basis vector,
    then each vector of each operator's eigenspaces when eigenvalue
    lists are available.

    For function-field pairs a sound shortcut runs first: the span rank
    can only drop under evaluating s at a rational point, so a full
    span at one such point already proves generic irreducibility (and
    the word list found there is a valid generic certificate). A
    short-rank point proves nothing and the generic closure runs.
    """
    spair = obj if isinstance(obj, OperatorPair) else obj.pair
    A, Astar = spair.A, spair.Astar
    n = A.n
    if spair.ring is QS:
        shortcut = _closure_at_point([A, Astar])
        if shortcut is not None:
            rank, words = shortcut
            if rank == n * n:
                return IrreducibilityReport(True, rank, n * n,
                                            [_word_name(w) for w in words], None)
    rank, _, words = algebra_closure([A, Astar], with_identity=True)
    if rank == n * n:
        return IrreducibilityReport(True, rank, n * n,
                                    [_word_name(w) for w in words], None)
    witness = _find_invariant_subspace(spair)
    return IrreducibilityReport(False, rank, n * n, None, witness)


def _closure_at_point(generators: list):
    """Word closure of function-field matrices evaluated at s = 2, 3, ...

    Returns (rank, words) for the first point where every entry is
    finite, or None when the tried points all sit on poles.
    """
    from .scalars.gaussian import GaussianRational
    from .scalars.rings import QI

    for point in (2, 3, 5):
        s_val = GaussianRational(point)
        try:
            evaluated = [
                g.map_entries(lambda f: f.eval_gaussian(s_val), ring=QI)
                for g in generators
            ]
        except ZeroDivisionError:
            continue
        rank, _, words = algebra_closure(evaluated, with_identity=True)
        return rank, words
    return None


def _find_invariant_subspace(pair: OperatorPair):
    ring = pair.ring
    n = pair.dim
    gens = [pair.A, pair.Astar]
    seeds = []
    eye = ExactMatrix.identity(ring, n)
    seeds.extend(eye.col(j) for j in range(n))
    for which in ("A", "Astar"):
        model = pair.model(which)
        if model is None or model.case != EXPLICIT:
            continue
        mat = pair.operator(which)
        for v in model.values:
            shifted = mat - eye.scale(ring.coerce(v))
            seeds.extend(shifted.kernel())
    for seed in seeds:
        if all(ring.is_zero(x) for x in seed):
            continue
        dim, span = invariant_subspace_from([seed], gens)
        if 0 < dim < n:
            return span.basis()
    return None


def _orderings(L: int):
    """Candidate eigenspace orderings: dihedral relabelings first (the
    natural relabeling freedom), then all remaining permutations, so an
    ordering is found whenever one exists at all."""
    import itertools

    base = list(range(L))
    seen = set()
    for r in range(L):
        rot = base[r:] + base[:r]
        for perm in (rot, rot[::-1]):
            key = tuple(perm)
            if key not in seen:
                seen.add(key)
                yield list(perm)
    for perm in itertools.permutations(base):
        if perm not in seen:
            yield list(perm)


def _banded_for(support: list, perm: list, modulus: int | None) -> tuple:
    """Worst offending block for an ordering; None when within band one.

    perm[p] is the eigenspace label at position p. modulus None means a
    linear band (no wrap-around).
    """
    L = len(perm)
    pos = {label: p for p, label in enumerate(perm)}
    worst = None
    for s in range(L):
        for t in range(L):
            if not support[s][t]:
                continue
            if modulus is None:
                dist = abs(pos[s] - pos[t])
            else:
                dist = cyclic_distance(pos[s], pos[t], modulus)
            if dist > 1 and (worst is None or dist > worst[2]):
                worst = (s, t, dist)
    return worst


def _band_condition(decomp, other_op: ExactMatrix, N: int) -> dict:
    conj = decomp.conjugate(other_op)
    support = block_support(conj, decomp.dims)
    L = len(decomp.dims)
    use_cyclic = L == N
    modulus = N if use_cyclic else None
    for perm in _orderings(L):
        if _banded_for(support, perm, modulus) is None:
            return {
                "passed": True,
                "ordering": perm,
                "support": support,
                "bandwidth": support_bandwidth(support, use_cyclic),
            }
    return {
        "passed": False,
        "ordering": None,
        "support": support,
        "offending": _banded_for(support, list(range(L)), modulus),
    }


class CyclicVerdict:
    """The four defining conditions, each with its witness data."""

    __slots__ = ("conditions", "passed", "cyclicity", "ordering", "ordering_star",
                 "irreducibility", "decomposition", "decomposition_star")

    def __init__(self, conditions, cyclicity, ordering, ordering_star,
                 irreducibility, decomposition, decomposition_star):
        self.conditions = conditions
        self.passed = all(c["passed"] for c in conditions.values())
        self.cyclicity = cyclicity
        self.ordering = ordering
        self.ordering_star = ordering_star
        self.irreducibility = irreducibility
        self.decomposition = decomposition
        self.decomposition_star = decomposition_star

    def to_json(self) -> dict:
        conds = {}
        for name, c in self.conditions.items():
            entry = {"passed": c["passed"]}
            for key in ("ordering", "bandwidth", "support", "offending", "witness"):
                if c.get(key) is not None:
                    entry[key] = c[key]
            conds[name] = entry
        return {
            "cyclic": self.passed,
            "cyclicity": self.cyclicity,
            "conditions": conds,
            "irreducibility": self.irreducibility.to_json(),
        }

    def __repr__(self):
        return f"CyclicVerdict(passed={self.passed}, N={self.cyclicity})"


def verify_cyclic(spair: SpecializedPair) -> CyclicVerdict:
    """Check the four conditions of a cyclic pair on a specialized pair.

    Failures land in the verdict rather than raising. Conditions:
    (i) both operators diagonalizable, (ii) the second operator is
    banded with wrap-around in an ordering of the first's eigenspaces,
    (iii) the same with roles swapped, (iv) no common invariant
    subspace.
    """
    pair = spair.pair
    ring = pair.ring
    conditions = {}
    decomp = decomp_star = None
    witness_i = []
    try:
        decomp = eigendecompose(pair.A, spair.spectra)
    except DecompositionError as e:
        witness_i.append(f"A: {e}")
    try:
        decomp_star = eigendecompose(pair.Astar, spair.spectra_star)
    except DecompositionError as e:
        witness_i.append(f"Astar: {e}")
    conditions["diagonalizable"] = {
        "passed": not witness_i,
        "witness": "; ".join(witness_i) if witness_i else None,
    }

    if decomp is not None:
        conditions["banded_in_A_basis"] = _band_condition(decomp, pair.Astar, spair.N)
    else:
        conditions["banded_in_A_basis"] = {"passed": False,
                                           "witness": "no eigenbasis for A"}
    if decomp_star is not None:
        conditions["banded_in_Astar_basis"] = _band_condition(decomp_star, pair.A, spair.N)
    else:
        conditions["banded_in_Astar_basis"] = {"passed": False,
                                               "witness": "no eigenbasis for Astar"}

    report = irreducible(pair)
    conditions["irreducible"] = {
        "passed": report.irreducible,
        "witness": None if report.irreducible else
        f"word span fills {report.span_dim} of {report.total_dim}",
    }
    return CyclicVerdict(
        conditions,
        spair.N,
        conditions["banded_in_A_basis"].get("ordering"),
        conditions["banded_in_Astar_basis"].get("ordering"),
        report,
        decomp,
        decomp_star,
    )


# -- word fast path -----------------------------------------------------------


def word_matrix(pair: OperatorPair, word) -> ExactMatrix:
    """Product of pair operators; word entries are "A" or "Astar",
    leftmost factor applied last."""
    out = ExactMatrix.identity(pair.ring, pair.dim)
    for name in word:
        out = out * pair.operator(name)
    return out


def words_span_space(pair: OperatorPair, words: list, seed: list) -> bool:
    """Whether the given words applied to the seed vector span the space.

    The empty word (the seed itself) is always included. This is the
    cheap spanning certificate used alongside the full word closure.
    """
    ring = pair.ring
    span = EchelonSpan(ring, pair.dim)
    span.insert([ring.coerce(x) for x in seed])
    for word in words:
        vec = word_matrix(pair, word).mul_vec([ring.coerce(x) for x in seed])
        span.insert(vec)
    return span.rank == pair.dim
