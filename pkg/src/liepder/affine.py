"""Bilinear products induced by non-singular prederivations.

For P in Pder(g), omega(x,y) = P([x,y]) - [x,P(y)] + [y,P(x)] measures
the failure of P to be a derivation and satisfies the coboundary
identity [x, omega(y,z)] + omega(x,[y,z]) = 0. When P is also
invertible, theta(x) = P^-1 ad(x) P + (1/2) P^-1 omega(x, .) defines a
product x*y = theta(x)y with x*y - y*x = [x,y] on the nose; the product
is affine (left-symmetric) exactly when theta is a representation. The
1/2 factor is harmless over the rationals.
"""

from .ratio import Q, ZERO
from .linalg import (RatMatrix, SingularMatrixError, vec_add, vec_sub,
                     vec_scale, vec_is_zero)
from .deriv import is_prederivation


def omega(g, P):
    """Table of omega on basis pairs: {(i,j): dense vector}, all ordered
    pairs, antisymmetric by construction."""
    n = g.dim
    if P.rows != n or P.cols != n:
        raise ValueError("matrix size %dx%d does not match dim %d"
                         % (P.rows, P.cols, n))
    cols = [P.col(j) for j in range(n)]
    table = {}
    zero = [ZERO] * n
    for i in range(n):
        table[(i, i)] = list(zero)
        for j in range(i + 1, n):
            w = P.apply(g.bracket(g.basis_vector(i), g.basis_vector(j)))
            w = vec_sub(w, g.bracket(g.basis_vector(i), cols[j]))
            w = vec_add(w, g.bracket(g.basis_vector(j), cols[i]))
            table[(i, j)] = w
            table[(j, i)] = vec_scale(Q(-1), w)
    return table


def _omega_of(g, table, x, v):
    """omega(e_x, v) for a dense vector v, by bilinearity."""
    out = [ZERO] * g.dim
    for k, c in enumerate(v):
        if c:
            out = vec_add(out, vec_scale(c, table[(x, k)]))
    return out


def lemma25_check(g, P):
    """Violated triples (x,y,z) of [e_x, omega(e_y,e_z)] + omega(e_x,
    [e_y,e_z]). Empty for every prederivation; non-empty means the input
    is not one (or flags a bug)."""
    n = g.dim
    table = omega(g, P)
    bad = []
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                lhs = g.bracket(g.basis_vector(x), table[(y, z)])
                lhs = vec_add(lhs, _omega_of(
                    g, table, x, g.bracket(g.basis_vector(y),
                                           g.basis_vector(z))))
                if not vec_is_zero(lhs):
                    bad.append((x, y, z))
    return bad


class BilinearProduct:
    """Product on g given by all ordered basis-pair values e_i * e_j."""
    __slots__ = ("algebra", "table")

    def __init__(self, algebra, table):
        self.algebra = algebra
        self.table = table

    def left_mult(self, i):
        """Matrix of x -> e_i * x."""
        n = self.algebra.dim
        return RatMatrix.from_cols([self.table[(i, j)] for j in range(n)])

    def multiply(self, x, y):
        out = [ZERO] * self.algebra.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out = vec_add(out, vec_scale(a * b, self.table[(i, j)]))
        return out

    def commutator_defect(self):
        """Basis pairs where x*y - y*x != [x,y]; empty for theta products."""
        g = self.algebra
        bad = []
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                d = vec_sub(self.table[(i, j)], self.table[(j, i)])
                d = vec_sub(d, g.bracket(g.basis_vector(i),
                                         g.basis_vector(j)))
                if not vec_is_zero(d):
                    bad.append((i, j))
        return bad


def theta_product(g, P):
    """The product x*y = theta(x)y for a non-singular prederivation P."""
    n = g.dim
    if not is_prederivation(g, P, full=True):
        raise ValueError("matrix is not a prederivation")
    try:
        pinv = P.inverse()
    except SingularMatrixError:
        raise ValueError("prederivation is singular") from None
    om = omega(g, P)
    half = Q(1, 2)
    table = {}
    for i in range(n):
        ad_i = g.ad(g.basis_vector(i))
        om_i = RatMatrix.from_cols([om[(i, j)] for j in range(n)])
        theta_i = pinv * ad_i * P + (pinv * om_i).scale(half)
        for j in range(n):
            table[(i, j)] = theta_i.col(j)
    prod = BilinearProduct(g, table)
    assert not prod.commutator_defect(), "commutator identity failed"
    return prod


def affine_violations(prod):
    """Pairs (i,j) where the left-multiplication maps fail the
    representation condition L_[ei,ej] = [L_i, L_j]. Cross-checked
    against the left-symmetry of the associator; the two formulations
    must agree."""
    g = prod.algebra
    n = g.dim
    left = [prod.left_mult(i) for i in range(n)]
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            br = g.bracket(g.basis_vector(i), g.basis_vector(j))
            l_br = RatMatrix.zeros(n, n)
            for k, c in enumerate(br):
                if c:
                    l_br = l_br + left[k].scale(c)
            if l_br != left[i].commutator(left[j]):
                bad.append((i, j))

    sym = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                ek = g.basis_vector(k)
                a = vec_sub(prod.multiply(prod.table[(i, j)], ek),
                            prod.multiply(g.basis_vector(i),
                                          prod.table[(j, k)]))
                b = vec_sub(prod.multiply(prod.table[(j, i)], ek),
                            prod.multiply(g.basis_vector(j),
                                          prod.table[(i, k)]))
                if not vec_is_zero(vec_sub(a, b)):
                    sym.append((i, j))
                    break
    if not prod.commutator_defect():
        # with x*y - y*x = [x,y] the two formulations agree pair by pair
        assert bad == sym, "formulations disagree"
    return bad


def is_affine(prod):
    return not affine_violations(prod)
