"""Exact linear algebra over the rationals.

Dense matrices are tuples of tuples of Q, vectors are tuples of Q.
The big defining systems for derivation solving never materialize as
dense matrices; they go through SparseEchelon, which eliminates rows
incrementally as they are generated.
"""

from .ratio import Q, ZERO, ONE, ratio


class SingularMatrixError(ValueError):
    pass


def vec(entries):
    return tuple(ratio(x) for x in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(u):
    return all(not a for a in u)


def dense(sparse_row, n):
    v = [ZERO] * n
    for k, c in sparse_row.items():
        v[k] = c
    return tuple(v)


def sparsify(v):
    return {k: c for k, c in enumerate(v) if c}


class RatMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries):
        self.entries = tuple(vec(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag):
        d = vec(diag)
        n = len(d)
        return cls([[d[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, cols):
        cols = [vec(c) for c in cols]
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "RatMatrix(%r)" % [list(map(str, r)) for r in self.entries]

    def __add__(self, other):
        return RatMatrix([vec_add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return RatMatrix([vec_sub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return RatMatrix([vec_scale(-ONE, r) for r in self.entries])

    def scale(self, c):
        c = ratio(c)
        return RatMatrix([vec_scale(c, r) for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.entries))
            return RatMatrix(
                [[sum((a * b for a, b in zip(row, col)), ZERO) for col in cols]
                 for row in self.entries])
        return self.scale(other)

    __rmul__ = scale

    def apply(self, v):
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in self.entries)

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return RatMatrix(list(zip(*self.entries)))

    def trace(self):
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def is_zero(self):
        return all(vec_is_zero(r) for r in self.entries)

    def commutator(self, other):
        return self * other - other * self

    def rank(self):
        return rank([list(r) for r in self.entries])

    def det(self):
        return det([list(r) for r in self.entries])

    def inverse(self):
        return RatMatrix(inverse([list(r) for r in self.entries]))

    def charpoly(self):
        return charpoly(self.entries)

    def nullspace(self):
        return nullspace([list(r) for r in self.entries])

    def vectorize(self):
        """Column-major flattening; column c occupies slots c*rows .. c*rows+rows-1."""
        out = []
        for j in range(self.cols):
            out.extend(self.entries[i][j] for i in range(self.rows))
        return tuple(out)

    @classmethod
    def unvectorize(cls, v, rows, cols):
        if len(v) != rows * cols:
            raise ValueError("length mismatch")
        return cls([[v[j * rows + i] for j in range(cols)] for i in range(rows)])


def rref(rows):
    """In-place-ish reduced row echelon form. Returns (reduced rows, pivot cols)."""
    rows = [list(map(ratio, r)) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows):
    """Canonical kernel basis: one vector per free column, a 1 there,
    zeros at the other free columns. Ordered by free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for prow, pc in zip(red, pivots):
            v[pc] = -prow[f]
        basis.append(tuple(v))
    return basis


def det(rows):
    """Fraction-free Bareiss on a denominator-cleared copy."""
    n = len(rows)
    if n == 0:
        return ONE
    if any(len(r) != n for r in rows):
        raise ValueError("not square")
    m = []
    denom = 1
    for r in rows:
        r = [ratio(x) for x in r]
        lcm = 1
        for x in r:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        denom *= lcm
        m.append([int(x * lcm) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            p = next((i for i in range(k + 1, n) if m[i][k]), None)
            if p is None:
                return ZERO
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Q(sign * m[n - 1][n - 1], denom)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def det_cofactor(rows):
    """Minor expansion with memoization. Independent slow oracle for det()."""
    n = len(rows)
    rows = [[ratio(x) for x in r] for r in rows]
    memo = {}

    def minor(cols_mask, r):
        if r == n:
            return ONE
        got = memo.get(cols_mask)
        if got is not None:
            return got
        total = ZERO
        sign = ONE
        for j in range(n):
            bit = 1 << j
            if not cols_mask & bit:
                continue
            a = rows[r][j]
            if a:
                total += sign * a * minor(cols_mask & ~bit, r + 1)
            sign = -sign
        memo[cols_mask] = total
        return total

    return minor((1 << n) - 1, 0)


def inverse(rows):
    n = len(rows)
    aug = [[ratio(x) for x in r] + [ONE if i == j else ZERO for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def charpoly(rows):
    """Coefficients of det(x*I - A), lowest degree first, length n+1, monic."""
    n = len(rows)
    if n == 0:
        return [ONE]
    a = [[ratio(x) for x in r] for r in rows]
    coeffs = [ONE]  # leading
    m = [row[:] for row in a]
    c = -sum((m[i][i] for i in range(n)), ZERO)
    coeffs.append(c)
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] += c
        m = [[sum((a[i][t] * m[t][j] for t in range(n) if a[i][t]), ZERO)
              for j in range(n)] for i in range(n)]
        c = -sum((m[i][i] for i in range(n)), ZERO) / k
        coeffs.append(c)
    coeffs.reverse()
    return coeffs


def solve(rows, rhs):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for prow, pc in zip(red, pivots):
        x[pc] = prow[-1]
    return tuple(x)


class SparseEchelon:
    """Incremental exact Gaussian elimination on sparse rows.

    Rows are dicts {column: coefficient}. Each accepted row is normalized
    to pivot 1 and stored keyed by its pivot column; later rows are reduced
    against the stored pivots as they arrive, so memory stays proportional
    to the final rank, not the number of equations.
    """

    def __init__(self):
        self.pivots = {}
        self._reduced = False

    def add(self, row):
        """Reduce a row against current pivots; install it if independent.
        Returns the new pivot column or None."""
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                inv = ONE / row[c]
                self.pivots[c] = {k: v * inv for k, v in row.items()}
                self._reduced = False
                return c
            f = row.pop(c)
            for k, v in piv.items():
                if k == c:
                    continue
                w = row.get(k, ZERO) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
        return None

    def rank(self):
        return len(self.pivots)

    def residual(self, row):
        """Reduce a row without installing it. Empty dict iff row is in the span."""
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            f = row.pop(c)
            for k, v in piv.items():
                if k == c:
                    continue
                w = row.get(k, ZERO) - f * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
        return row

    def reduce(self):
        """Back-substitute to full RREF (idempotent)."""
        if self._reduced:
            return
        for c in sorted(self.pivots, reverse=True):
            row = self.pivots[c]
            targets = [k for k in row if k != c and k in self.pivots]
            for k in targets:
                f = row.pop(k)
                for kk, vv in self.pivots[k].items():
                    if kk == k:
                        continue
                    w = row.get(kk, ZERO) - f * vv
                    if w:
                        row[kk] = w
                    else:
                        row.pop(kk, None)
        self._reduced = True

    def nullspace(self, ncols):
        """Canonical kernel basis of the accumulated system, one vector per
        free column (1 there, 0 at other free columns), ordered by column."""
        self.reduce()
        free = [c for c in range(ncols) if c not in self.pivots]
        basis = []
        for f in free:
            v = [ZERO] * ncols
            v[f] = ONE
            for c, row in self.pivots.items():
                coeff = row.get(f)
                if coeff:
                    v[c] = -coeff
            basis.append(tuple(v))
        return basis

    def rref_rows(self):
        self.reduce()
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]

    def kernel_contains(self, v):
        """Whether the dense vector v satisfies every accumulated equation."""
        for row in self.pivots.values():
            if sum((c * v[k] for k, c in row.items()), ZERO):
                return False
        return True


def echelon_basis(vectors):
    """Canonical RREF basis of the span of the given dense vectors."""
    vectors = list(vectors)
    if not vectors:
        return []
    n = len(vectors[0])
    ech = SparseEchelon()
    for v in vectors:
        ech.add(sparsify(v))
    ech.reduce()
    return [dense(ech.pivots[c], n) for c in sorted(ech.pivots)]


def in_span(basis_echelon, v):
    """Membership against an echelon_basis() result."""
    ech = SparseEchelon()
    for b in basis_echelon:
        ech.add(sparsify(b))
    return not ech.residual(sparsify(v))


class SpanChecker:
    """Reusable membership tester for the span of a fixed set of vectors."""

    def __init__(self, vectors):
        self.ech = SparseEchelon()
        self.dim = 0
        for v in vectors:
            if self.ech.add(sparsify(v)) is not None:
                self.dim += 1

    def contains(self, v):
        return not self.ech.residual(sparsify(v))
