"""Finite-dimensional Lie algebras over Q, given by structure constants.

Basis indices are 0-based everywhere in code; the JSON interchange format
and printed output use 1-based labels e_1..e_n.
"""

import json

from .ratio import Q, ZERO, ONE, ratio, ratio_str
from .linalg import (RatMatrix, SparseEchelon, echelon_basis, sparsify,
                     dense, vec, vec_is_zero)


class StructureError(ValueError):
    """Malformed structure constants or interchange data."""


class LieAlgebra:
    """Structure constants [e_i, e_j] = sum_k c^k_{ij} e_k for i < j.

    brackets maps (i, j) with i < j to {k: coefficient}; pairs and
    components not listed are zero. Antisymmetry fills in j > i.
    """

    __slots__ = ("dim", "name", "brackets", "table", "_ad2")

    def __init__(self, dim, brackets, name=""):
        if not isinstance(dim, int) or dim < 0:
            raise StructureError("dim must be a non-negative integer")
        self.dim = dim
        self.name = name
        norm = {}
        for (i, j), comp in brackets.items():
            if not (0 <= i < j < dim):
                raise StructureError("bad basis pair (%r, %r)" % (i, j))
            c = {}
            for k, x in comp.items():
                if not (0 <= k < dim):
                    raise StructureError("bad component index %r" % k)
                x = ratio(x)
                if x:
                    c[k] = x
            if c:
                norm[(i, j)] = c
        self.brackets = norm
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), c in norm.items():
            table[i][j] = c
            table[j][i] = {k: -x for k, x in c.items()}
        self.table = table
        self._ad2 = {}

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.dim == other.dim
                and self.brackets == other.brackets)

    def __repr__(self):
        return "LieAlgebra(dim=%d, name=%r, %d brackets)" % (
            self.dim, self.name, len(self.brackets))

    def basis_vector(self, i):
        return tuple(ONE if t == i else ZERO for t in range(self.dim))

    def bracket_sparse(self, x, y):
        """[x, y] for sparse dict vectors, result sparse."""
        out = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                if i == j:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    w = out.get(k, ZERO) + ab * c
                    if w:
                        out[k] = w
                    else:
                        out.pop(k, None)
        return out

    def bracket(self, x, y):
        """[x, y] for dense vectors, result dense."""
        return dense(self.bracket_sparse(sparsify(x), sparsify(y)), self.dim)

    def ad(self, x):
        """Matrix of ad(x): y -> [x, y]."""
        xs = sparsify(x)
        cols = [dense(self.bracket_sparse(xs, {j: ONE}), self.dim)
                for j in range(self.dim)]
        return RatMatrix.from_cols(cols) if cols else RatMatrix([])

    def ad_basis(self, i):
        return self.ad(self.basis_vector(i))

    def ad2(self, i, r, k):
        """[e_i, [e_r, e_k]] as a sparse dict, memoized."""
        key = (i, r, k)
        got = self._ad2.get(key)
        if got is None:
            got = self.bracket_sparse({i: ONE}, self.table[r][k])
            self._ad2[key] = got
        return got

    def triple(self, x, y, z):
        """[x, y, z] = [x, [y, z]] on sparse dicts."""
        return self.bracket_sparse(x, self.bracket_sparse(y, z))


def jacobi_check(g):
    """All violated triples (i, j, k), i < j < k; empty list iff Jacobi holds."""
    bad = []
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = {}
                for t, c in g.ad2(i, j, k).items():
                    acc[t] = acc.get(t, ZERO) + c
                for t, c in g.ad2(j, k, i).items():
                    acc[t] = acc.get(t, ZERO) + c
                for t, c in g.ad2(k, i, j).items():
                    acc[t] = acc.get(t, ZERO) + c
                if any(acc.values()):
                    bad.append((i, j, k))
    return bad


def lts_check(g):
    """Check the Lie triple system axioms for [x,y,z] := [x,[y,z]].

    Returns a list of (axiom, indices) violations. Axiom 1 is antisymmetry
    in the last two slots, axiom 2 the cyclic sum, axiom 3 the derivation
    rule for the pair action: [[x,y,z],a,b] - [[x,a,b],y,z]
    = [x,[y,a,b],z] + [x,y,[z,a,b]]. Axiom 3 is antisymmetric in (y,z)
    and in (a,b) separately, so y<z and a<b cover all cases.
    """
    n = g.dim
    bad = []

    def sub(u, w):
        out = dict(u)
        for t, c in w.items():
            v = out.get(t, ZERO) - c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return out

    for (i, j, k) in jacobi_check(g):
        bad.append((2, (i, j, k)))
    # axiom 1 (antisymmetry in the last two slots) holds identically
    # because the lookup table is built antisymmetric; nothing to scan.
    e = [{i: ONE} for i in range(n)]
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                xyz = g.ad2(x, y, z)
                for a in range(n):
                    for b in range(a + 1, n):
                        lhs = g.triple(xyz, e[a], e[b])
                        lhs = sub(lhs, g.triple(g.ad2(x, a, b), e[y], e[z]))
                        rhs = g.triple(e[x], g.ad2(y, a, b), e[z])
                        for t, c in g.triple(e[x], e[y], g.ad2(z, a, b)).items():
                            v = rhs.get(t, ZERO) + c
                            if v:
                                rhs[t] = v
                            else:
                                rhs.pop(t, None)
                        if sub(lhs, rhs):
                            bad.append((3, (x, y, z, a, b)))
    return bad


def product_space(g, basis_a, basis_b):
    """Echelon basis of span{[a, b]}."""
    prods = []
    for a in basis_a:
        sa = sparsify(a)
        for b in basis_b:
            w = g.bracket_sparse(sa, sparsify(b))
            if w:
                prods.append(dense(w, g.dim))
    return echelon_basis(prods)


def lower_central_series(g):
    """[basis(g^0), basis(g^1), ...] down to and including the zero term."""
    full = [g.basis_vector(i) for i in range(g.dim)]
    series = [full]
    cur = full
    while cur:
        nxt = product_space(g, cur, full)
        if len(nxt) == len(cur):
            series.append(nxt)
            break
        series.append(nxt)
        cur = nxt
    return series


def derived_series(g):
    full = [g.basis_vector(i) for i in range(g.dim)]
    series = [full]
    cur = full
    while cur:
        nxt = product_space(g, cur, cur)
        if len(nxt) == len(cur):
            series.append(nxt)
            break
        series.append(nxt)
        cur = nxt
    return series


def nilindex(g):
    """Smallest p with g^p = 0, or None when the series stabilizes above 0."""
    series = lower_central_series(g)
    if series[-1]:
        return None
    return len(series) - 1


def is_nilpotent(g):
    return nilindex(g) is not None


def is_filiform(g):
    p = nilindex(g)
    return p is not None and g.dim >= 2 and p == g.dim - 1


def center(g):
    """Echelon basis of {x : [x, e_j] = 0 for all j}."""
    n = g.dim
    ech = SparseEchelon()
    for j in range(n):
        rows = {}
        for i in range(n):
            for t, c in g.table[i][j].items():
                rows.setdefault(t, {})[i] = c
        for row in rows.values():
            ech.add(row)
    return ech.nullspace(n)


class Flag:
    """Ordered direct-sum decomposition g = V_1 + ... + V_p adapted to a
    descending chain: chain(k) = V_{k+1} + ... + V_p."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = [list(b) for b in blocks]

    @property
    def dims(self):
        return [len(b) for b in self.blocks]

    def basis(self):
        out = []
        for b in self.blocks:
            out.extend(b)
        return out

    def change_of_basis(self):
        """Columns are the flag basis vectors, in block order."""
        return RatMatrix.from_cols(self.basis())

    def chain(self, k):
        """Echelon basis of V_{k+1} + ... + V_p (k = 0 gives the whole space)."""
        out = []
        for b in self.blocks[k:]:
            out.extend(b)
        return echelon_basis(out)


def filtration_complements(g):
    """Flag V_1..V_p with g^{k-1} = V_k + g^k for the lower central series.

    Nested RREF bases have nested pivot sets, so each V_k can be read off
    as the rows of the g^{k-1} basis whose pivot is not a pivot of g^k.
    Requires a nilpotent algebra.
    """
    series = lower_central_series(g)
    if series[-1]:
        raise StructureError("algebra is not nilpotent")

    def pivot(v):
        return next(i for i, x in enumerate(v) if x)

    blocks = []
    for k in range(len(series) - 1):
        inner = {pivot(v) for v in series[k + 1]}
        blocks.append([v for v in series[k] if pivot(v) not in inner])
    return Flag(blocks)


def transport(g, f, name=""):
    """Pull the bracket back through the invertible matrix f:
    [x, y]_new = f^{-1} [f x, f y]."""
    if not isinstance(f, RatMatrix):
        f = RatMatrix(f)
    if f.rows != g.dim or f.cols != g.dim:
        raise StructureError("change of basis has wrong shape")
    finv = f.inverse()
    brackets = {}
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            w = g.bracket(f.col(i), f.col(j))
            v = finv.apply(w)
            comp = {k: c for k, c in enumerate(v) if c}
            if comp:
                brackets[(i, j)] = comp
    return LieAlgebra(n, brackets, name=name or g.name)


def to_json(g):
    items = []
    for (i, j) in sorted(g.brackets):
        comp = g.brackets[(i, j)]
        items.append({
            "i": i + 1,
            "j": j + 1,
            "c": [[k + 1, ratio_str(comp[k])] for k in sorted(comp)],
        })
    out = {"dim": g.dim, "brackets": items}
    if g.name:
        out["name"] = g.name
    return out


def from_json(data):
    """Parse the interchange dict (or JSON text). 1-based indices,
    coefficients as 'p/q' strings or integers. Duplicate pairs or duplicate
    components are errors."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise StructureError("invalid JSON: %s" % exc) from exc
    if not isinstance(data, dict):
        raise StructureError("top level must be an object")
    if "dim" not in data:
        raise StructureError("missing dim")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise StructureError("dim must be a non-negative integer")
    brackets = {}
    seen = set()
    for item in data.get("brackets", []):
        if not isinstance(item, dict) or "i" not in item or "j" not in item:
            raise StructureError("bracket entries need i and j")
        i, j = item["i"], item["j"]
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= dim):
            raise StructureError("bad pair (%r, %r): need 1 <= i < j <= dim" % (i, j))
        if (i, j) in seen:
            raise StructureError("pair (%d, %d) listed twice" % (i, j))
        seen.add((i, j))
        comp = {}
        for entry in item.get("c", []):
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise StructureError("components must be [k, coefficient] pairs")
            k, val = entry
            if not (isinstance(k, int) and 1 <= k <= dim):
                raise StructureError("bad component index %r" % k)
            if k - 1 in comp:
                raise StructureError("component %d of (%d, %d) listed twice" % (k, i, j))
            try:
                x = ratio(val)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise StructureError("bad coefficient %r" % (val,)) from exc
            if x:
                comp[k - 1] = x
        if comp:
            brackets[(i - 1, j - 1)] = comp
    name = data.get("name", "")
    if not isinstance(name, str):
        raise StructureError("name must be a string")
    return LieAlgebra(dim, brackets, name=name)
