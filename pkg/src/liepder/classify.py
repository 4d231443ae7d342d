"""Classification predicates with machine-checkable certificates.

Four questions per algebra: does a non-singular derivation exist, does a
non-singular prederivation exist, are all derivations nilpotent, are all
prederivations nilpotent. Positive existence answers carry an evaluation
point and the resulting matrix; negative ones carry a symbolic vanishing
determinant. Nilpotency of the whole space is decided by an Engel-style
common flag, with the generic characteristic polynomial checked
symbolically on the triangularized form; failure produces an explicit
non-nilpotent member.
"""

import random

from .ratio import Q, ZERO, ONE, ratio_str
from .linalg import (RatMatrix, SparseEchelon, sparsify, nullspace, charpoly,
                     echelon_basis)
from .poly import MultiPoly, GenericMatrix, poly_det, poly_charpoly
from .core import Flag, filtration_complements, nilindex, StructureError
from .deriv import derivation_space, prederivation_space, is_prederivation

SEARCH_TRIALS = 8
SEARCH_BOUND = 10 ** 6
DEFAULT_SEED = 42


def _mat_json(m):
    return [[ratio_str(x) for x in row] for row in m.entries]


def _vec_json(v):
    return [ratio_str(x) for x in v]


class Witness:
    """Explicit member with non-zero determinant."""

    kind = "nonsingular-witness"

    def __init__(self, point, matrix, det):
        self.point = point
        self.matrix = matrix
        self.det = det

    def to_dict(self):
        return {"kind": self.kind, "point": _vec_json(self.point),
                "matrix": _mat_json(self.matrix), "det": ratio_str(self.det)}


class VanishingDet:
    """The determinant of the generic member is the zero polynomial."""

    kind = "vanishing-det"

    def __init__(self, nparams, method="laplace-memo"):
        self.nparams = nparams
        self.method = method

    def to_dict(self):
        return {"kind": self.kind, "params": self.nparams, "method": self.method}


class VanishingCharpoly:
    """All non-leading coefficients of the generic characteristic polynomial
    are identically zero; the Engel flag that triangularizes the space is
    attached."""

    kind = "vanishing-charpoly"

    def __init__(self, flag):
        self.flag = flag

    def to_dict(self):
        return {"kind": self.kind, "flag_dims": self.flag.dims,
                "flag_basis": [_vec_json(v) for v in self.flag.basis()]}


class NonNilpotentWitness:
    """Explicit member whose characteristic polynomial has a non-zero
    coefficient below the leading term."""

    kind = "non-nilpotent-witness"

    def __init__(self, point, matrix, coeff_index, coeff):
        self.point = point
        self.matrix = matrix
        self.coeff_index = coeff_index
        self.coeff = coeff

    def to_dict(self):
        return {"kind": self.kind, "point": _vec_json(self.point),
                "matrix": _mat_json(self.matrix),
                "coeff_index": self.coeff_index, "coeff": ratio_str(self.coeff)}


def _eval_member(space, point):
    n = space.algebra.dim
    m = RatMatrix.zeros(n, n)
    for c, b in zip(point, space.basis):
        if c:
            m = m + b.scale(c)
    return m


def nonzero_point(p):
    """Deterministic rational point where the non-zero polynomial p does not
    vanish: fix variables one at a time, keeping the partial substitution
    non-zero. Trying degree+1 distinct values always succeeds."""
    point = [ZERO] * p.nvars
    cur = p
    while not cur.is_const():
        i = min(cur.variables_used())
        v = 0
        while True:
            s = cur.substitute(i, v)
            if not s.is_zero():
                point[i] = Q(v)
                cur = s
                break
            v = -v + (1 if v <= 0 else 0)
    if not cur.const_value():
        raise ValueError("polynomial is zero")
    return tuple(point)


def exists_nonsingular(space, seed=DEFAULT_SEED, trials=SEARCH_TRIALS):
    """Decide whether the space contains a matrix with det != 0.

    Seeded random integer evaluations first; if none hits, the symbolic
    determinant of the generic member settles the question exactly, and a
    non-vanishing point is then constructed deterministically. Negative
    answers are always symbolic, never sampled."""
    n = space.algebra.dim
    if n == 0:
        return True, Witness((), RatMatrix([]), ONE)
    if space.dim == 0:
        return False, VanishingDet(0, method="empty-space")
    rng = random.Random(seed)
    for _ in range(trials):
        point = tuple(Q(rng.randint(-SEARCH_BOUND, SEARCH_BOUND))
                      for _ in range(space.dim))
        m = _eval_member(space, point)
        d = m.det()
        if d:
            return True, Witness(point, m, d)
    d = poly_det(space.generic())
    if d.is_zero():
        return False, VanishingDet(space.dim)
    point = nonzero_point(d)
    m = _eval_member(space, point)
    dv = m.det()
    if not dv:
        raise AssertionError("symbolic point evaluation disagrees with det")
    return True, Witness(point, m, dv)


def _annihilator(basis, n):
    """Row vectors c with c . w = 0 for every w in the span."""
    if not basis:
        return [tuple(ONE if i == j else ZERO for j in range(n))
                for i in range(n)]
    return nullspace([list(v) for v in basis])


def engel_flag(space):
    """Common flag 0 = W_0 < W_1 < ... < W_p = g with B W_{k+1} <= W_k for
    every member B, or None when the chain stalls (some member is not
    nilpotent). Returned as blocks V_k with W_k = V_1 + ... + V_k."""
    n = space.algebra.dim
    mats = space.basis
    if not mats:
        return Flag([[space.algebra.basis_vector(i) for i in range(n)]])
    chain = [[]]
    prev = []
    while True:
        ann = _annihilator(prev, n)
        ech = SparseEchelon()
        for b in mats:
            for c in ann:
                row = {}
                for j in range(n):
                    s = sum((c[i] * b[i, j] for i in range(n)), ZERO)
                    if s:
                        row[j] = s
                if row:
                    ech.add(row)
        # echelonize so leading indices are distinct and nested chains have
        # nested leading-index sets; block extraction below depends on it
        w = echelon_basis(ech.nullspace(n))
        if len(w) == len(prev):
            return None
        chain.append(w)
        if len(w) == n:
            break
        prev = w

    def pivot(v):
        return next(i for i, x in enumerate(v) if x)

    blocks = []
    for k in range(1, len(chain)):
        outer = {pivot(v) for v in chain[k - 1]}
        blocks.append([v for v in chain[k] if pivot(v) not in outer])
    return Flag(blocks)


def all_nilpotent(space, seed=DEFAULT_SEED):
    """Decide whether every matrix in the space is nilpotent.

    The Engel chain succeeds exactly when the whole space is nilpotent
    (it is a Lie subalgebra of gl(g)); on success the generic member is
    conjugated into strictly triangular form and its characteristic
    polynomial checked to be x^n identically. On failure a concrete
    non-nilpotent member is exhibited."""
    n = space.algebra.dim
    flag = engel_flag(space)
    if flag is not None:
        if space.dim == 0:
            return True, VanishingCharpoly(flag)
        s = flag.change_of_basis()
        tri = space.generic().transform(s)
        for i in range(n):
            for j in range(i + 1):
                if not tri.entries[i][j].is_zero():
                    raise AssertionError("flag failed to triangularize")
        coeffs = poly_charpoly(tri)
        if any(not c.is_zero() for c in coeffs[:-1]):
            raise AssertionError("triangular form has non-trivial charpoly")
        return True, VanishingCharpoly(flag)
    # stalled chain: some member is not nilpotent; find one
    for r, b in enumerate(space.basis):
        cert = _non_nilpotent_witness(space, r, b)
        if cert:
            return False, cert
    rng = random.Random(seed)
    for _ in range(64):
        point = tuple(Q(rng.randint(-9, 9)) for _ in range(space.dim))
        m = _eval_member(space, point)
        cert = _witness_from(point, m)
        if cert:
            return False, cert
    coeffs = poly_charpoly(space.generic())
    bad = next(p for p in coeffs[:-1] if not p.is_zero())
    point = nonzero_point(bad)
    m = _eval_member(space, point)
    cert = _witness_from(point, m)
    if cert is None:
        raise AssertionError("symbolic witness evaluation failed")
    return False, cert


def _non_nilpotent_witness(space, r, b):
    point = tuple(ONE if i == r else ZERO for i in range(space.dim))
    return _witness_from(point, b)


def _witness_from(point, m):
    coeffs = charpoly(m.entries)
    for idx, c in enumerate(coeffs[:-1]):
        if c:
            return NonNilpotentWitness(point, m, idx, c)
    return None


def grading_prederivation(g):
    """Non-singular prederivation for nilpotent algebras of nilindex <= 4:
    scale the first two filtration blocks by 1 and the next two by 3.
    Every triple bracket lands at filtration depth >= the sum of its
    factors' depths, which forces the eigenvalue bookkeeping to close."""
    p = nilindex(g)
    if p is None or p > 4:
        raise StructureError("need a nilpotent algebra of nilindex <= 4")
    flag = filtration_complements(g)
    diag = []
    for k, block in enumerate(flag.blocks):
        lam = ONE if k < 2 else Q(3)
        diag.extend([lam] * len(block))
    s = flag.change_of_basis()
    m = s * RatMatrix.diagonal(diag) * s.inverse()
    if not is_prederivation(g, m):
        raise AssertionError("grading map failed the prederivation identity")
    return m


class ClassificationReport:
    __slots__ = ("algebra", "der_dim", "pder_dim", "answers", "certificates",
                 "seed")

    PREDICATES = ("admits_nonsingular_derivation",
                  "admits_nonsingular_prederivation",
                  "characteristically_nilpotent",
                  "strongly_nilpotent")

    def __init__(self, algebra, der_dim, pder_dim, answers, certificates, seed):
        self.algebra = algebra
        self.der_dim = der_dim
        self.pder_dim = pder_dim
        self.answers = answers
        self.certificates = certificates
        self.seed = seed

    def __getitem__(self, key):
        return self.answers[key]

    def to_dict(self):
        return {
            "name": self.algebra.name,
            "dim": self.algebra.dim,
            "der_dim": self.der_dim,
            "pder_dim": self.pder_dim,
            "seed": self.seed,
            "answers": dict(self.answers),
            "certificates": {k: c.to_dict() for k, c in self.certificates.items()},
        }

    def __repr__(self):
        flags = ", ".join("%s=%s" % (k, v) for k, v in self.answers.items())
        return "ClassificationReport(%r, der=%d, pder=%d, %s)" % (
            self.algebra.name, self.der_dim, self.pder_dim, flags)


def classify(g, seed=DEFAULT_SEED):
    """All four predicates, with certificates and consistency checks."""
    der = derivation_space(g)
    pder = prederivation_space(g)
    adm_d, cert_d = exists_nonsingular(der, seed=seed)
    adm_p, cert_p = exists_nonsingular(pder, seed=seed)
    char_nil, cert_c = all_nilpotent(der, seed=seed)
    strong_nil, cert_s = all_nilpotent(pder, seed=seed)
    if strong_nil and not char_nil:
        raise AssertionError("strongly nilpotent but not characteristically")
    if adm_d and not adm_p:
        raise AssertionError("nonsingular derivation without prederivation")
    if adm_d and char_nil:
        raise AssertionError("nonsingular derivation in a nilpotent space")
    if adm_p and strong_nil:
        raise AssertionError("nonsingular prederivation in a nilpotent space")
    answers = {
        "admits_nonsingular_derivation": adm_d,
        "admits_nonsingular_prederivation": adm_p,
        "characteristically_nilpotent": char_nil,
        "strongly_nilpotent": strong_nil,
    }
    certs = {
        "admits_nonsingular_derivation": cert_d,
        "admits_nonsingular_prederivation": cert_p,
        "characteristically_nilpotent": cert_c,
        "strongly_nilpotent": cert_s,
    }
    return ClassificationReport(g, der.dim, pder.dim, answers, certs, seed)
