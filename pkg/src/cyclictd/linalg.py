"""Generic exact linear algebra over the package's ring tags.

Matrices are dense row-major lists of scalar objects together with a
Ring tag supplying the operations, so the same elimination code runs
over Q, Q(i), rational functions and cyclotomic fields. Everything is
exact; there is no pivoting heuristic beyond "first nonzero".
"""

from __future__ import annotations

from .errors import DecompositionError
from .scalars.rings import Ring


class ExactMatrix:
    __slots__ = ("ring", "n", "m", "rows")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.m:
                raise ValueError("ragged rows")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(ring: Ring, n: int, m: int | None = None) -> "ExactMatrix":
        m = n if m is None else m
        z = ring.zero()
        return ExactMatrix(ring, [[z for _ in range(m)] for _ in range(n)])

    @staticmethod
    def identity(ring: Ring, n: int) -> "ExactMatrix":
        out = ExactMatrix.zeros(ring, n, n)
        one = ring.one()
        for i in range(n):
            out.rows[i][i] = one
        return out

    @staticmethod
    def diagonal(ring: Ring, values) -> "ExactMatrix":
        values = list(values)
        out = ExactMatrix.zeros(ring, len(values))
        for i, v in enumerate(values):
            out.rows[i][i] = ring.coerce(v)
        return out

    @staticmethod
    def from_rows(ring: Ring, rows) -> "ExactMatrix":
        return ExactMatrix(ring, [[ring.coerce(x) for x in r] for r in rows])

    @staticmethod
    def column(ring: Ring, vec) -> "ExactMatrix":
        return ExactMatrix(ring, [[v] for v in vec])

    @staticmethod
    def from_columns(ring: Ring, cols) -> "ExactMatrix":
        cols = [list(c) for c in cols]
        n = len(cols[0])
        return ExactMatrix(ring, [[cols[j][i] for j in range(len(cols))] for i in range(n)])

    # -- access ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, self.rows)

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.m)]

    def submatrix(self, row_idx, col_idx) -> "ExactMatrix":
        return ExactMatrix(self.ring, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.n == self.m

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.n != other.n or self.m != other.m:
            return False
        rg = self.ring
        return all(
            rg.eq(self.rows[i][j], other.rows[i][j])
            for i in range(self.n)
            for j in range(self.m)
        )

    __hash__ = None

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        rg = self.ring
        return ExactMatrix(
            rg,
            [
                [rg.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        rg = self.ring
        return ExactMatrix(
            rg,
            [
                [rg.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "ExactMatrix":
        rg = self.ring
        return ExactMatrix(rg, [[rg.neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "ExactMatrix":
        rg = self.ring
        c = rg.coerce(c)
        return ExactMatrix(rg, [[rg.mul(c, a) for a in r] for r in self.rows])

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.m != other.n:
            raise ValueError(f"shape mismatch {self.n}x{self.m} * {other.n}x{other.m}")
        rg = self.ring
        zero = rg.zero()
        ocols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            nz = [(k, a) for k, a in enumerate(r) if not rg.is_zero(a)]
            for c in ocols:
                acc = zero
                for k, a in nz:
                    b = c[k]
                    if not rg.is_zero(b):
                        acc = rg.add(acc, rg.mul(a, b))
                row.append(acc)
            out.append(row)
        return ExactMatrix(rg, out)

    def mul_vec(self, vec: list) -> list:
        rg = self.ring
        out = []
        for r in self.rows:
            acc = rg.zero()
            for a, b in zip(r, vec):
                if not rg.is_zero(a) and not rg.is_zero(b):
                    acc = rg.add(acc, rg.mul(a, b))
            out.append(acc)
        return out

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise ValueError("powers need a square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactMatrix.identity(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, [list(c) for c in zip(*self.rows)])

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        rg = self.ring
        out = []
        for i in range(self.n):
            for k in range(other.n):
                row = []
                for j in range(self.m):
                    a = self.rows[i][j]
                    if rg.is_zero(a):
                        row.extend([rg.zero()] * other.m)
                    else:
                        row.extend(rg.mul(a, b) for b in other.rows[k])
                out.append(row)
        return ExactMatrix(rg, out)

    def trace(self):
        rg = self.ring
        acc = rg.zero()
        for i in range(self.n):
            acc = rg.add(acc, self.rows[i][i])
        return acc

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self * other - other * self

    def map_entries(self, fn, ring: Ring | None = None) -> "ExactMatrix":
        return ExactMatrix(ring or self.ring, [[fn(a) for a in r] for r in self.rows])

    # -- elimination ----------------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        rg = self.ring
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for col in range(self.m):
            sel = None
            for i in range(pr, self.n):
                if not rg.is_zero(rows[i][col]):
                    sel = i
                    break
            if sel is None:
                continue
            rows[pr], rows[sel] = rows[sel], rows[pr]
            inv = rg.inv(rows[pr][col])
            rows[pr] = [rg.mul(inv, x) for x in rows[pr]]
            for i in range(self.n):
                if i != pr and not rg.is_zero(rows[i][col]):
                    f = rows[i][col]
                    rows[i] = [rg.sub(a, rg.mul(f, b)) for a, b in zip(rows[i], rows[pr])]
            pivots.append(col)
            pr += 1
            if pr == self.n:
                break
        return ExactMatrix(rg, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> list:
        """Basis of the right kernel, echelon-normalized."""
        rg = self.ring
        R, pivots = self.rref()
        free = [j for j in range(self.m) if j not in pivots]
        out = []
        for j in free:
            v = [rg.zero()] * self.m
            v[j] = rg.one()
            for pi, pc in enumerate(pivots):
                v[pc] = rg.neg(R.rows[pi][j])
            out.append(v)
        return out

    def det(self):
        if not self.is_square():
            raise ValueError("determinant needs a square matrix")
        rg = self.ring
        rows = [list(r) for r in self.rows]
        det = rg.one()
        sign = False
        for col in range(self.n):
            sel = None
            for i in range(col, self.n):
                if not rg.is_zero(rows[i][col]):
                    sel = i
                    break
            if sel is None:
                return rg.zero()
            if sel != col:
                rows[col], rows[sel] = rows[sel], rows[col]
                sign = not sign
            piv = rows[col][col]
            det = rg.mul(det, piv)
            inv = rg.inv(piv)
            for i in range(col + 1, self.n):
                if not rg.is_zero(rows[i][col]):
                    f = rg.mul(inv, rows[i][col])
                    rows[i] = [rg.sub(a, rg.mul(f, b)) for a, b in zip(rows[i], rows[col])]
        return rg.neg(det) if sign else det

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise ValueError("inverse needs a square matrix")
        rg = self.ring
        n = self.n
        aug = [list(r) + [rg.one() if i == j else rg.zero() for j in range(n)] for i, r in enumerate(self.rows)]
        A = ExactMatrix(rg, aug)
        R, pivots = A.rref()
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix(rg, [r[n:] for r in R.rows])

    def solve(self, rhs: "ExactMatrix") -> "ExactMatrix":
        """Solve self * X = rhs for square invertible self."""
        return self.inverse() * rhs

    # -- display -----------------------------------------------------------------------

    def __repr__(self):
        return f"ExactMatrix({self.ring.name}, {self.n}x{self.m})"

    def pretty(self) -> str:
        cells = [[self.ring.fmt(a) for a in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


# -- incremental spans ------------------------------------------------------------


class EchelonSpan:
    """Growing subspace with echelonized basis for fast membership tests."""

    def __init__(self, ring: Ring, dim: int):
        self.ring = ring
        self.dim = dim
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, vec: list) -> list:
        rg = self.ring
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if not rg.is_zero(v[p]):
                f = v[p]
                v = [rg.sub(a, rg.mul(f, b)) for a, b in zip(v, row)]
        return v

    def insert(self, vec: list) -> bool:
        """Add vec to the span; False if it was already inside."""
        rg = self.ring
        v = self.reduce(vec)
        for p in range(self.dim):
            if not rg.is_zero(v[p]):
                inv = rg.inv(v[p])
                v = [rg.mul(inv, a) for a in v]
                # keep rows sorted by pivot for deterministic reduction
                at = len([x for x in self.pivots if x < p])
                self.rows.insert(at, v)
                self.pivots.insert(at, p)
                # back-substitute to keep reduced form
                for k, (row, pk) in enumerate(zip(self.rows, self.pivots)):
                    if pk != p and not rg.is_zero(row[p]):
                        f = row[p]
                        self.rows[k] = [rg.sub(a, rg.mul(f, b)) for a, b in zip(row, v)]
                return True
        return False

    def contains(self, vec: list) -> bool:
        rg = self.ring
        return all(rg.is_zero(a) for a in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [list(r) for r in self.rows]


# -- eigenstructure ------------------------------------------------------------------


class EigenDecomposition:
    """Diagonalization data: ordered eigenvalues with eigenspace bases."""

    def __init__(self, matrix: ExactMatrix, values: list, blocks: list):
        self.ring = matrix.ring
        self.matrix = matrix
        self.values = list(values)
        self.blocks = [list(b) for b in blocks]
        self._basis = None
        self._basis_inv = None

    @property
    def dims(self) -> list:
        return [len(b) for b in self.blocks]

    @property
    def size(self) -> int:
        return self.matrix.n

    def basis_matrix(self) -> ExactMatrix:
        if self._basis is None:
            cols = [v for b in self.blocks for v in b]
            self._basis = ExactMatrix.from_columns(self.ring, cols)
        return self._basis

    def basis_inverse(self) -> ExactMatrix:
        if self._basis_inv is None:
            self._basis_inv = self.basis_matrix().inverse()
        return self._basis_inv

    def conjugate(self, op: ExactMatrix) -> ExactMatrix:
        """op in the eigenbasis coordinates: B^(-1) op B."""
        return self.basis_inverse() * op * self.basis_matrix()

    def block_ranges(self) -> list:
        out = []
        at = 0
        for d in self.dims:
            out.append((at, at + d))
            at += d
        return out

    def idempotent(self, p: int) -> ExactMatrix:
        """Primitive idempotent onto the p-th eigenspace (Lagrange form)."""
        rg = self.ring
        A = self.matrix
        out = ExactMatrix.identity(rg, A.n)
        tp = self.values[p]
        for m, tm in enumerate(self.values):
            if m == p:
                continue
            num = A - ExactMatrix.identity(rg, A.n).scale(tm)
            out = out * num.scale(rg.inv(rg.sub(tp, tm)))
        return out

    def reordered(self, perm: list) -> "EigenDecomposition":
        return EigenDecomposition(
            self.matrix,
            [self.values[p] for p in perm],
            [self.blocks[p] for p in perm],
        )


def eigendecompose(matrix: ExactMatrix, candidates: list) -> EigenDecomposition:
    """Diagonalize over the given candidate eigenvalues.

    Raises DecompositionError when the eigenspaces do not fill the whole
    space (defective matrix or wrong/missing candidates).
    """
    rg = matrix.ring
    n = matrix.n
    values = []
    blocks = []
    seen_total = 0
    for th in candidates:
        th = rg.coerce(th)
        if any(rg.eq(th, v) for v in values):
            raise DecompositionError("duplicate eigenvalue candidate; merge them first")
        shifted = matrix - ExactMatrix.identity(rg, n).scale(th)
        vecs = shifted.kernel()
        if not vecs:
            raise DecompositionError(f"candidate {rg.fmt(th)} is not an eigenvalue")
        values.append(th)
        blocks.append(vecs)
        seen_total += len(vecs)
    if seen_total != n:
        raise DecompositionError(
            f"eigenspaces span dimension {seen_total} of {n}; "
            "matrix is defective or candidates are incomplete"
        )
    return EigenDecomposition(matrix, values, blocks)


def decomposition_from_vectors(matrix: ExactMatrix, values: list, blocks: list) -> EigenDecomposition:
    """Build a decomposition from explicitly supplied eigenvectors.

    Each supplied vector is validated against its eigenvalue and the
    full collection must be a basis.
    """
    rg = matrix.ring
    vals = [rg.coerce(v) for v in values]
    blks = []
    total = 0
    for th, vecs in zip(vals, blocks):
        cur = []
        for v in vecs:
            v = [rg.coerce(x) for x in v]
            got = matrix.mul_vec(v)
            want = [rg.mul(th, x) for x in v]
            if any(not rg.eq(a, b) for a, b in zip(got, want)):
                raise DecompositionError("supplied vector is not an eigenvector for its value")
            cur.append(v)
        blks.append(cur)
        total += len(cur)
    if total != matrix.n:
        raise DecompositionError(f"supplied vectors span {total} of {matrix.n} dimensions")
    d = EigenDecomposition(matrix, vals, blks)
    d.basis_inverse()  # raises if the vectors fail to form a basis
    return d


def transition_matrix(frm: EigenDecomposition, to: EigenDecomposition) -> ExactMatrix:
    """Change of basis S with (to-basis) * S = (frm-basis)."""
    return to.basis_inverse() * frm.basis_matrix()


# -- block band structure ---------------------------------------------------------------


def block_support(conjugated: ExactMatrix, dims: list) -> list:
    """Boolean block matrix: True where the block has any nonzero entry."""
    rg = conjugated.ring
    ranges = []
    at = 0
    for d in dims:
        ranges.append((at, at + d))
        at += d
    out = []
    for r0, r1 in ranges:
        row = []
        for c0, c1 in ranges:
            nz = any(
                not rg.is_zero(conjugated.rows[i][j])
                for i in range(r0, r1)
                for j in range(c0, c1)
            )
            row.append(nz)
        out.append(row)
    return out


def cyclic_distance(i: int, j: int, n: int) -> int:
    d = abs(i - j) % n
    return min(d, n - d)


def support_bandwidth(support: list, cyclic: bool) -> int:
    n = len(support)
    w = 0
    for i in range(n):
        for j in range(n):
            if support[i][j]:
                d = cyclic_distance(i, j, n) if cyclic else abs(i - j)
                w = max(w, d)
    return w


def band_profile(op: ExactMatrix, decomp: EigenDecomposition, cyclic: bool = True) -> dict:
    """How op spreads the eigenspaces of decomp: support and bandwidth."""
    conj = decomp.conjugate(op)
    support = block_support(conj, decomp.dims)
    return {
        "support": support,
        "bandwidth": support_bandwidth(support, cyclic),
        "cyclic": cyclic,
        "dims": decomp.dims,
    }


# -- word closures (generated algebras and invariant subspaces) ----------------------------


def algebra_closure(generators: list, with_identity: bool = True, limit: int | None = None):
    """Span of all words in the generators inside End(V).

    Returns (dimension, EchelonSpan, words) where words lists one word
    (as a tuple of generator indices) per independent basis element.
    """
    if not generators:
        raise ValueError("need at least one generator")
    rg = generators[0].ring
    n = generators[0].n
    dim2 = n * n
    span = EchelonSpan(rg, dim2)
    words: list = []
    queue: list = []
    if with_identity:
        ident = ExactMatrix.identity(rg, n)
        span.insert([x for r in ident.rows for x in r])
        words.append(())
        queue.append(((), ident))
    else:
        for gi, g in enumerate(generators):
            if span.insert([x for r in g.rows for x in r]):
                words.append((gi,))
                queue.append(((gi,), g))
    cap = limit if limit is not None else dim2
    while queue and span.rank < cap:
        word, mat = queue.pop(0)
        for gi, g in enumerate(generators):
            cand = g * mat
            flat = [x for r in cand.rows for x in r]
            if span.insert(flat):
                w = (gi,) + word
                words.append(w)
                queue.append((w, cand))
    return span.rank, span, words


def invariant_subspace_from(seeds: list, generators: list):
    """Smallest invariant subspace containing the seed vectors.

    Returns (dimension, EchelonSpan).
    """
    rg = generators[0].ring
    n = generators[0].n
    span = EchelonSpan(rg, n)
    queue = []
    for v in seeds:
        if span.insert(list(v)):
            queue.append(list(v))
    while queue and span.rank < n:
        v = queue.pop(0)
        for g in generators:
            w = g.mul_vec(v)
            if span.insert(w):
                queue.append(w)
    return span.rank, span
