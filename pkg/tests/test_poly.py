import random

import pytest

from liepder.ratio import Q
from liepder.linalg import RatMatrix
from liepder.poly import (
    GenericMatrix,
    InexactDivision,
    MultiPoly,
    exact_div,
    poly_charpoly,
    poly_det,
    poly_det_bareiss,
)


def tvar(m, i):
    return MultiPoly.variable(m, i)


def test_poly_basic_arithmetic():
    t1 = tvar(2, 0)
    t2 = tvar(2, 1)
    p = (t1 + t2) * (t1 - t2)
    assert p == t1 * t1 - t2 * t2
    assert (t1 + 1) * (t1 - 1) == t1 ** 2 - 1
    assert (t1 - t1).is_zero()
    assert MultiPoly.const(2, Q(3, 4)).const_value() == Q(3, 4)
    assert not t1.is_const()


def test_poly_pow_and_degrees():
    t1, t2 = tvar(2, 0), tvar(2, 1)
    p = (t1 + t2) ** 3
    assert p.total_degree() == 3
    assert p.degree_in(0) == 3
    assert p.evaluate([Q(1), Q(2)]) == 27
    assert t1 ** 0 == 1


def test_poly_evaluate_and_substitute():
    t1, t2 = tvar(2, 0), tvar(2, 1)
    p = 2 * t1 * t2 + t2 ** 2 - 5
    assert p.evaluate([Q(3), Q(1, 2)]) == 3 + Q(1, 4) - 5
    q = p.substitute(0, Q(3))
    assert q.degree_in(0) == 0
    assert q.evaluate([Q(0), Q(1, 2)]) == p.evaluate([Q(3), Q(1, 2)])


def test_poly_linear_in():
    t1, t2 = tvar(2, 0), tvar(2, 1)
    p = t2 ** 2 + 3 * t1 * t2 - 7
    a, b = p.linear_in(0)
    assert a == t2 ** 2 - 7
    assert b == 3 * t2
    assert (t1 ** 2).linear_in(0) is None


def test_poly_str():
    t1, t2 = tvar(2, 0), tvar(2, 1)
    assert str(MultiPoly.zero(2)) == "0"
    assert str(t1 - t2) == "t1 - t2"
    assert str(2 * t1 ** 2 + Q(1, 3)) == "2*t1^2 + 1/3"


def test_exact_div():
    t1, t2 = tvar(2, 0), tvar(2, 1)
    p = t1 ** 2 - t2 ** 2
    assert exact_div(p, t1 - t2) == t1 + t2
    with pytest.raises(InexactDivision):
        exact_div(t1 ** 2 + 1, t1 + 1)


def test_generic_matrix_from_basis_and_evaluate():
    b0 = RatMatrix([[1, 0], [0, 0]])
    b1 = RatMatrix([[0, 1], [1, 0]])
    gm = GenericMatrix.from_basis([b0, b1], 2)
    assert gm.nvars == 2
    assert str(gm.entry(0, 0)) == "t1"
    assert str(gm.entry(0, 1)) == "t2"
    pt = [Q(3), Q(5)]
    assert gm.evaluate(pt) == b0.scale(3) + b1.scale(5)


def test_poly_det_agrees_with_bareiss_and_points():
    rng = random.Random(23)
    for _ in range(6):
        mats = [RatMatrix([[Q(rng.randint(-3, 3)) for _ in range(3)]
                           for _ in range(3)]) for _ in range(2)]
        gm = GenericMatrix.from_basis(mats, 3)
        d1 = poly_det(gm)
        d2 = poly_det_bareiss(gm)
        assert d1 == d2
        for _ in range(4):
            pt = [Q(rng.randint(-5, 5)) for _ in range(2)]
            assert d1.evaluate(pt) == gm.evaluate(pt).det()


def test_poly_det_constant_matrix():
    gm = GenericMatrix([[MultiPoly.const(1, 2), MultiPoly.const(1, 1)],
                        [MultiPoly.const(1, 1), MultiPoly.const(1, 1)]], nvars=1)
    assert poly_det(gm) == 1


def test_poly_charpoly_matches_scalar_charpoly():
    rng = random.Random(5)
    mats = [RatMatrix([[Q(rng.randint(-3, 3)) for _ in range(3)]
                       for _ in range(3)]) for _ in range(2)]
    gm = GenericMatrix.from_basis(mats, 3)
    cp = poly_charpoly(gm)
    assert len(cp) == 4
    assert cp[-1] == 1
    # constant term is (-1)^n det
    assert cp[0] == poly_det(gm) * (-1) ** 3
    for _ in range(4):
        pt = [Q(rng.randint(-4, 4)) for _ in range(2)]
        scalar = gm.evaluate(pt).charpoly()
        assert [c.evaluate(pt) for c in cp] == scalar


def test_generic_matrix_transform_is_conjugation():
    rng = random.Random(9)
    mats = [RatMatrix([[Q(rng.randint(-3, 3)) for _ in range(3)]
                       for _ in range(3)]) for _ in range(2)]
    gm = GenericMatrix.from_basis(mats, 3)
    s = RatMatrix([[1, 1, 0], [0, 1, 0], [2, 0, 1]])
    tg = gm.transform(s)
    pt = [Q(2), Q(-3)]
    assert tg.evaluate(pt) == s.inverse() * gm.evaluate(pt) * s
    # determinant is invariant under conjugation
    assert poly_det(tg) == poly_det(gm)
