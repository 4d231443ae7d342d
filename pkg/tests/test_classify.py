import pytest

from liepder.ratio import Q, ONE
from liepder.linalg import RatMatrix, charpoly
from liepder.core import StructureError, nilindex
from liepder.deriv import derivation_space, is_prederivation, prederivation_space
from liepder.poly import MultiPoly, poly_det
from liepder.classify import (
    ClassificationReport,
    all_nilpotent,
    classify,
    engel_flag,
    exists_nonsingular,
    grading_prederivation,
    nonzero_point,
)
from liepder import catalog


def rebuild(space, point):
    m = RatMatrix.zeros(space.algebra.dim, space.algebra.dim)
    for c, b in zip(point, space.basis):
        m = m + b.scale(c)
    return m


def test_nonzero_point():
    t1 = MultiPoly.variable(2, 0)
    t2 = MultiPoly.variable(2, 1)
    p = t1 * t2 - t2 ** 2
    pt = nonzero_point(p)
    assert p.evaluate(pt) != 0
    # deterministic
    assert nonzero_point(p) == pt
    with pytest.raises(ValueError):
        nonzero_point(MultiPoly.zero(2))


def test_exists_nonsingular_positive():
    g = catalog.get("heisenberg3")
    der = derivation_space(g)
    ok, cert = exists_nonsingular(der)
    assert ok
    assert cert.kind == "nonsingular-witness"
    # witness re-verification: point rebuilds the matrix, det matches
    assert rebuild(der, cert.point) == cert.matrix
    assert cert.matrix.det() == cert.det != 0
    assert der.contains(cert.matrix)


def test_exists_nonsingular_negative_is_symbolic():
    g = catalog.get("g_7_1")
    der = derivation_space(g)
    ok, cert = exists_nonsingular(der)
    assert not ok
    assert cert.kind == "vanishing-det"
    assert cert.nparams == der.dim
    # independent confirmation that the symbolic determinant vanishes
    assert poly_det(der.generic()).is_zero()


def test_engel_flag_triangularizes():
    g = catalog.get("g_7_1")
    pder = prederivation_space(g)
    flag = engel_flag(pder)
    assert flag is not None
    assert sum(flag.dims) == g.dim
    s = flag.change_of_basis()
    sinv = s.inverse()
    for b in pder.basis:
        t = sinv * b * s
        for i in range(g.dim):
            for j in range(i + 1):
                assert t[i, j] == 0


def test_engel_flag_stalls_on_non_nilpotent_space():
    g = catalog.get("sl2")
    assert engel_flag(derivation_space(g)) is None


def test_all_nilpotent_positive():
    g = catalog.get("g_7_1")
    ok, cert = all_nilpotent(prederivation_space(g))
    assert ok
    assert cert.kind == "vanishing-charpoly"


def test_all_nilpotent_negative_witness():
    g = catalog.get("heisenberg3")
    der = derivation_space(g)
    ok, cert = all_nilpotent(der)
    assert not ok
    assert cert.kind == "non-nilpotent-witness"
    m = rebuild(der, cert.point)
    assert m == cert.matrix
    coeffs = charpoly(m.entries)
    assert coeffs[cert.coeff_index] == cert.coeff != 0
    assert cert.coeff_index < len(coeffs) - 1  # not the leading 1


def test_classify_heisenberg():
    rep = classify(catalog.get("heisenberg3"))
    assert rep.der_dim == 6
    assert rep.pder_dim == 9
    assert rep["admits_nonsingular_derivation"]
    assert rep["admits_nonsingular_prederivation"]
    assert not rep["characteristically_nilpotent"]
    assert not rep["strongly_nilpotent"]


def test_classify_sl2():
    rep = classify(catalog.get("sl2"))
    assert rep.der_dim == 3
    assert rep.pder_dim == 3
    assert not rep["admits_nonsingular_derivation"]
    assert not rep["admits_nonsingular_prederivation"]
    assert not rep["characteristically_nilpotent"]
    assert not rep["strongly_nilpotent"]


def test_classify_strongly_nilpotent_example():
    rep = classify(catalog.get("g_7_1"))
    assert rep.der_dim == 10
    assert rep.pder_dim == 13
    assert not rep["admits_nonsingular_derivation"]
    assert not rep["admits_nonsingular_prederivation"]
    assert rep["characteristically_nilpotent"]
    assert rep["strongly_nilpotent"]


def test_classify_separating_example():
    # characteristically nilpotent but carries a non-singular prederivation
    rep = classify(catalog.get("g_7_5"))
    assert rep.der_dim == 10
    assert rep.pder_dim == 13
    assert not rep["admits_nonsingular_derivation"]
    assert rep["admits_nonsingular_prederivation"]
    assert rep["characteristically_nilpotent"]
    assert not rep["strongly_nilpotent"]
    cert = rep.certificates["admits_nonsingular_prederivation"]
    assert cert.matrix.det() == cert.det != 0
    assert is_prederivation(rep.algebra, cert.matrix)


def test_classify_implication_lattice():
    names = ("g_7_1", "g_7_4", "g_7_5", "g_7_7", "remark_algebra",
             "heisenberg3", "sl2", "free_nilpotent_23")
    for name in names:
        g = catalog.get(name, {"lambda": 1} if name == "g_7_4" else None)
        a = classify(g).answers
        if a["strongly_nilpotent"]:
            assert a["characteristically_nilpotent"]
        if a["admits_nonsingular_derivation"]:
            assert a["admits_nonsingular_prederivation"]
        if a["admits_nonsingular_prederivation"]:
            assert not a["strongly_nilpotent"]
        if a["admits_nonsingular_derivation"]:
            assert not a["characteristically_nilpotent"]


def test_classify_deterministic_and_seed_independent_answers():
    g = catalog.get("g_7_5")
    r1 = classify(g, seed=42)
    r2 = classify(g, seed=42)
    assert r1.to_dict() == r2.to_dict()
    r3 = classify(g, seed=20240901)
    assert r3.answers == r1.answers


def test_report_to_dict_shape():
    rep = classify(catalog.get("heisenberg3"))
    d = rep.to_dict()
    assert d["name"] == "heisenberg3"
    assert d["dim"] == 3
    assert set(d["answers"]) == set(ClassificationReport.PREDICATES)
    assert set(d["certificates"]) == set(ClassificationReport.PREDICATES)
    for cert in d["certificates"].values():
        assert "kind" in cert


def test_grading_prederivation_dets():
    # nilindex <= 2 gives the identity; higher blocks scale by 3
    cases = [
        ("heisenberg3", None, Q(1)),
        ("free_nilpotent_23", None, Q(1)),
        ("abelian", {"n": 3}, Q(1)),
        ("model_filiform", {"n": 4}, Q(3)),
        ("model_filiform", {"n": 5}, Q(9)),
    ]
    for name, params, expected_det in cases:
        g = catalog.get(name, params)
        m = grading_prederivation(g)
        assert is_prederivation(g, m)
        assert m.det() == expected_det


def test_grading_prederivation_rejects_high_nilindex():
    g = catalog.get("model_filiform", {"n": 6})  # nilindex 5
    assert nilindex(g) == 5
    with pytest.raises(StructureError):
        grading_prederivation(g)
    with pytest.raises(StructureError):
        grading_prederivation(catalog.get("sl2"))
