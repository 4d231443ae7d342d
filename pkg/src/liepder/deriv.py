"""Solution spaces of the derivation and prederivation equations.

A linear map D is a derivation when D[x,y] = [Dx,y] + [x,Dy]; P is a
prederivation when P[x,[y,z]] = [Px,[y,z]] + [x,[Py,z]] + [x,[y,Pz]].
Both conditions are linear in the n^2 matrix entries, so each space is
the kernel of a large sparse system. Rows are generated one basis tuple
at a time and eliminated incrementally; the dense system never exists.

Matrix entries are flattened column-major: entry (r, c) is unknown c*n + r.
"""

from .ratio import Q, ZERO, ONE
from .linalg import RatMatrix, SparseEchelon, sparsify, dense
from .poly import GenericMatrix
from . import core


class SolutionSpace:
    """Kernel of a defining system, as a basis of matrices plus the reduced
    echelon form used for membership tests and canonical coordinates."""

    __slots__ = ("algebra", "kind", "ech", "free", "basis")

    def __init__(self, algebra, kind, ech):
        self.algebra = algebra
        self.kind = kind
        self.ech = ech
        n = algebra.dim
        vectors = ech.nullspace(n * n)
        self.free = [c for c in range(n * n) if c not in ech.pivots]
        self.basis = [RatMatrix.unvectorize(v, n, n) for v in vectors]

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, mat):
        return self.ech.kernel_contains(mat.vectorize())

    def coordinates(self, mat):
        """Parameter point t with sum t_r B_r = mat. The canonical kernel
        basis puts an identity pattern on the free unknowns, so the
        coordinates are just the entries of mat at the free positions."""
        if not self.contains(mat):
            raise ValueError("matrix is not in the solution space")
        v = mat.vectorize()
        return tuple(v[f] for f in self.free)

    def generic(self):
        """Generic member sum_r t_r B_r as a matrix of linear polynomials."""
        return GenericMatrix.from_basis(self.basis, self.algebra.dim)

    def __repr__(self):
        return "SolutionSpace(%s, dim=%d, algebra=%r)" % (
            self.kind, self.dim, self.algebra.name)


def _bump(rows, t, col, val):
    row = rows.get(t)
    if row is None:
        row = rows[t] = {}
    w = row.get(col, ZERO) + val
    if w:
        row[col] = w
    else:
        row.pop(col, None)


def _canonical(row):
    items = sorted(row.items())
    lead = items[0][1]
    if lead != ONE:
        inv = ONE / lead
        return tuple((k, v * inv) for k, v in items)
    return tuple(items)


def derivation_space(g):
    """Solve D[e_j,e_k] = [De_j,e_k] + [e_j,De_k] over all pairs j < k."""
    n = g.dim
    ech = SparseEchelon()
    seen = set()
    for j in range(n):
        for k in range(j + 1, n):
            w = g.table[j][k]
            rows = {}
            for s, ws in w.items():
                for t in range(n):
                    _bump(rows, t, s * n + t, ws)
            for r in range(n):
                for t, c in g.table[r][k].items():
                    _bump(rows, t, j * n + r, -c)
                for t, c in g.table[j][r].items():
                    _bump(rows, t, k * n + r, -c)
            for row in rows.values():
                if row:
                    key = _canonical(row)
                    if key not in seen:
                        seen.add(key)
                        ech.add(row)
    return SolutionSpace(g, "derivation", ech)


def prederivation_space(g):
    """Solve P[e_i,[e_j,e_k]] = [Pe_i,[e_j,e_k]] + [e_i,[Pe_j,e_k]]
    + [e_i,[e_j,Pe_k]] over all i and all pairs j < k. Both sides are
    antisymmetric in (j, k) and vanish at j = k, so the restriction to
    j < k loses nothing."""
    n = g.dim
    ech = SparseEchelon()
    seen = set()
    for j in range(n):
        for k in range(j + 1, n):
            w = g.table[j][k]
            adw = [g.bracket_sparse({r: ONE}, w) if w else {} for r in range(n)]
            ws = [r for r in range(n) if adw[r]]
            rk = [r for r in range(n) if g.table[r][k]]
            jr = [r for r in range(n) if g.table[j][r]]
            if not (ws or rk or jr):
                continue
            for i in range(n):
                v = adw[i]
                rows = {}
                for s, vs in v.items():
                    for t in range(n):
                        _bump(rows, t, s * n + t, vs)
                for r in ws:
                    for t, c in adw[r].items():
                        _bump(rows, t, i * n + r, -c)
                for r in rk:
                    for t, c in g.ad2(i, r, k).items():
                        _bump(rows, t, j * n + r, -c)
                for r in jr:
                    for t, c in g.ad2(i, j, r).items():
                        _bump(rows, t, k * n + r, -c)
                for row in rows.values():
                    if row:
                        key = _canonical(row)
                        if key not in seen:
                            seen.add(key)
                            ech.add(row)
    return SolutionSpace(g, "prederivation", ech)


def is_derivation(g, mat, full=False):
    """Definitional check. full=True scans all ordered pairs instead of
    relying on antisymmetry."""
    n = g.dim
    pairs = ((j, k) for j in range(n) for k in range(n)) if full else \
            ((j, k) for j in range(n) for k in range(j + 1, n))
    cols = [mat.col(i) for i in range(n)]
    for j, k in pairs:
        w = dense(g.table[j][k], n)
        lhs = mat.apply(w)
        rhs = tuple(a + b for a, b in
                    zip(g.bracket(cols[j], g.basis_vector(k)),
                        g.bracket(g.basis_vector(j), cols[k])))
        if lhs != rhs:
            return False
    return True


def is_prederivation(g, mat, full=False):
    n = g.dim
    if full:
        triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
    else:
        triples = ((i, j, k) for i in range(n)
                   for j in range(n) for k in range(j + 1, n))
    cols = [sparsify(mat.col(i)) for i in range(n)]
    e = [{i: ONE} for i in range(n)]
    for i, j, k in triples:
        w = g.table[j][k]
        lhs = sparsify(mat.apply(dense(g.bracket_sparse(e[i], w), n)))
        rhs = g.bracket_sparse(cols[i], w)
        for t, c in g.bracket_sparse(e[i], g.bracket_sparse(cols[j], e[k])).items():
            v = rhs.get(t, ZERO) + c
            if v:
                rhs[t] = v
            else:
                rhs.pop(t, None)
        for t, c in g.bracket_sparse(e[i], g.bracket_sparse(e[j], cols[k])).items():
            v = rhs.get(t, ZERO) + c
            if v:
                rhs[t] = v
            else:
                rhs.pop(t, None)
        if lhs != rhs:
            return False
    return True


def membership(space, mat):
    """Echelon membership cross-checked against the definitional identity.
    The two must agree; disagreement means a solver bug, not a math fact."""
    by_span = space.contains(mat)
    checker = is_derivation if space.kind == "derivation" else is_prederivation
    by_identity = checker(space.algebra, mat)
    if by_span != by_identity:
        raise AssertionError(
            "membership mismatch: span says %r, identity says %r" %
            (by_span, by_identity))
    return by_span


def closure_check(space):
    """Commutators of basis elements stay in the space (it is a Lie
    subalgebra of gl(g)), checked pairwise."""
    b = space.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if not space.contains(b[i].commutator(b[j])):
                return False
    return True


def central_prederivation(g):
    """A prederivation that is not a derivation, for nilpotent g of
    nilindex >= 2.

    Pick basis vectors x, y of the first filtration block with w = [x, y]
    outside g^2 (one exists since g^1/g^2 != 0), a central z from the last
    nonzero term of the lower central series, and a basis containing w but
    otherwise avoiding it in the expansion of g^2. The map sending w to z
    and the rest of that basis to 0 kills every [x,[y,z]] (they lie in g^2)
    while its image is central, so the defining identity reads 0 = 0; it
    fails the derivation rule at (x, y)."""
    from .core import lower_central_series, filtration_complements, nilindex

    p = nilindex(g)
    if p is None or p < 2:
        raise core.StructureError("need a nilpotent algebra of nilindex >= 2")
    series = lower_central_series(g)
    flag = filtration_complements(g)
    v1 = flag.blocks[0]
    g2 = series[2]
    checker = SparseEchelon()
    for b in g2:
        checker.add(sparsify(b))
    w = None
    for a in range(len(v1)):
        for b in range(a + 1, len(v1)):
            cand = g.bracket(v1[a], v1[b])
            if checker.residual(sparsify(cand)):
                w = cand
                break
        if w is not None:
            break
    if w is None:
        raise AssertionError("no product of first-block vectors leaves g^2")
    z = series[p - 1][0]

    # replace one vector of V_2 by w so that the new set is still a basis
    # and g^2 is still spanned by the untouched later blocks
    basis = list(v1)
    v2 = flag.blocks[1]
    ech = SparseEchelon()
    for u in v1:
        ech.add(sparsify(u))
    for b3 in flag.blocks[2:]:
        for u in b3:
            ech.add(sparsify(u))
    ech.add(sparsify(w))
    w_index = len(basis)
    basis.append(w)
    for u in v2:
        if ech.add(sparsify(u)) is not None:
            basis.append(u)
    for b3 in flag.blocks[2:]:
        basis.extend(b3)
    c = RatMatrix.from_cols(basis)
    lam = c.inverse().row(w_index)
    mat = RatMatrix([[z[t] * lam[s] for s in range(g.dim)] for t in range(g.dim)])
    if not is_prederivation(g, mat):
        raise AssertionError("constructed map is not a prederivation")
    if is_derivation(g, mat):
        raise AssertionError("constructed map is a derivation")
    return mat
