import random

import pytest

from liepder.ratio import Q, ONE
from liepder.core import jacobi_check, is_filiform, nilindex, transport
from liepder.classify import classify
from liepder.filiform import (
    AlphaVector,
    a_class_membership,
    adapted_scaling,
    an1_nonsingular_criterion,
    build_filiform,
    catalan_alpha,
    index_set,
    jacobi_constraints_dim11,
    normalize_a25,
    properties,
    random_laws,
    solve_jacobi,
    symbolic_filiform_brackets,
    symbolic_jacobi_residuals,
)
from liepder import catalog


def test_index_set():
    assert index_set(7) == [(2, 5), (2, 6), (2, 7), (3, 7)]
    assert len(index_set(11)) == 16
    assert len(index_set(12)) == 21
    # even n admits the extra top pair (n/2, n)
    assert (6, 12) in index_set(12)
    assert all(s >= 2 * k + 1 or (k, s) == (6, 12) for k, s in index_set(12))
    with pytest.raises(ValueError):
        index_set(2)


def test_alpha_vector_validation():
    a = AlphaVector(7, {(2, 5): 1, (3, 7): Q(1, 2)})
    assert a.get(2, 5) == 1
    assert a.get(2, 6) == 0
    with pytest.raises(ValueError):
        AlphaVector(7, {(2, 4): 1})  # not admissible
    with pytest.raises(ValueError):
        AlphaVector(7, {(4, 9): 1})  # outside range for n=7
    # zero values are dropped
    assert AlphaVector(7, {(2, 5): 0}).values == {}


def test_alpha_tuple_round_trip():
    coords = (Q(1), Q(0), Q(-2), Q(1, 3))
    a = AlphaVector.from_tuple(7, coords)
    assert a.to_tuple() == coords
    with pytest.raises(ValueError):
        AlphaVector.from_tuple(7, (1, 2, 3))  # wrong length


def test_build_filiform_zero_alpha_is_model():
    n = 6
    g = build_filiform(n, AlphaVector(n))
    h = catalog.get("model_filiform", {"n": n})
    assert g.brackets == h.brackets
    assert jacobi_check(g) == []
    assert is_filiform(g)
    assert nilindex(g) == n - 1


def test_build_filiform_matches_symbolic_table():
    n = 9
    sym, pairs = symbolic_filiform_brackets(n)
    a = random_laws(n, 1, 5)[0]
    pt = list(a.to_tuple())
    g = build_filiform(n, a)
    for (i, j), comp in sym.items():
        for k, p in comp.items():
            assert p.evaluate(pt) == g.brackets.get((i, j), {}).get(k, Q(0))


def test_symbolic_residuals_detect_jacobi():
    n = 10
    res, pairs = symbolic_jacobi_residuals(n)
    assert pairs == index_set(n)
    rng = random.Random(17)
    for _ in range(20):
        coords = [Q(rng.randint(-3, 3)) for _ in pairs]
        g = build_filiform(n, AlphaVector.from_tuple(n, coords))
        holds = jacobi_check(g) == []
        symbolic = all(r.evaluate(coords) == 0 for r in res)
        assert holds == symbolic


def test_dim11_constraints_equivalent_to_jacobi():
    pairs = index_set(11)
    rng = random.Random(29)
    # random tuples land off the variety, genuine laws on it
    samples = [AlphaVector.from_tuple(
        11, [Q(rng.randint(-2, 2)) for _ in pairs]) for _ in range(25)]
    samples += random_laws(11, 10, 29)
    seen_pass = seen_fail = 0
    for a in samples:
        holds = jacobi_check(build_filiform(11, a)) == []
        cons = jacobi_constraints_dim11(a)
        assert holds == all(c == 0 for c in cons)
        seen_pass += holds
        seen_fail += not holds
    assert seen_pass and seen_fail  # the sample must exercise both branches


def test_adapted_scaling_matches_transport():
    n = 9
    alpha = random_laws(n, 1, 11, profile="a1")[0]
    g = build_filiform(n, alpha)
    a, b = Q(2), Q(3)
    s = adapted_scaling(n, a, b)
    # rescaled coefficients: each alpha_{k,s} picks up b * a^(2k-s-1)
    vals = {}
    for (k, sx), v in alpha.values.items():
        e = 2 * k - sx - 1
        vals[(k, sx)] = v * b * (a ** e if e >= 0 else ONE / a ** (-e))
    assert transport(g, s).brackets == \
        build_filiform(n, AlphaVector(n, vals)).brackets
    with pytest.raises(ValueError):
        adapted_scaling(n, 0, 1)


def test_normalize_a25():
    n = 9
    base = random_laws(n, 1, 11, profile="a1")[0]
    tripled = AlphaVector(n, {k: v * 3 for k, v in base.values.items()})
    assert tripled.get(2, 5) == 3
    assert jacobi_check(build_filiform(n, tripled)) == []
    norm, s = normalize_a25(tripled)
    assert norm.get(2, 5) == 1
    assert norm == base
    assert transport(build_filiform(n, tripled), s).brackets == \
        build_filiform(n, norm).brackets
    with pytest.raises(ValueError):
        normalize_a25(AlphaVector(n))  # alpha_{2,5} = 0


def test_catalan_alpha_values():
    assert catalan_alpha(7, 1) == Q(5, 4)
    assert catalan_alpha(8, 1) == Q(7, 4)
    # with a26 = 2 the pattern is the Catalan numbers themselves
    assert [catalan_alpha(j, 2) for j in range(7, 13)] == [5, 14, 42, 132, 429, 1430]
    with pytest.raises(ValueError):
        catalan_alpha(6, 1)


def test_properties_and_class_membership():
    n = 12
    a1 = AlphaVector(n, {(2, 5): 1})
    p = properties(n, a1)
    assert p.a and p.b and p.c
    assert a_class_membership(n, a1) == "A1"
    a2 = AlphaVector(n, {(2, 5): 1, (3, 7): 1})
    assert a_class_membership(n, a2) == "A2"
    # property (b) fails when the even top coefficient is present
    bad = AlphaVector(n, {(2, 5): 1, (6, 12): 1})
    assert not properties(n, bad).b
    assert a_class_membership(n, bad) is None
    assert a_class_membership(n, AlphaVector(n)) is None


def test_an1_criterion_catalan_pattern():
    n = 12
    fixed = {(2, 5): 1, (2, 6): 2, (3, 7): 0}
    for j in range(7, n + 1):
        fixed[(2, j)] = catalan_alpha(j, 2)
    for i in range(8, n + 1):
        fixed[(3, i)] = 0
    a = solve_jacobi(n, fixed, random.Random(1))
    assert a is not None
    g = build_filiform(n, a)
    assert jacobi_check(g) == []
    assert an1_nonsingular_criterion(n, a) == (True, True)
    rep = classify(g)
    assert rep["admits_nonsingular_derivation"]
    assert rep["admits_nonsingular_prederivation"]


def test_an1_criterion_agrees_with_search():
    n = 12
    for law in random_laws(n, 3, 7, profile="a1"):
        norm, _ = normalize_a25(law)
        crit_p, crit_d = an1_nonsingular_criterion(n, norm)
        g = build_filiform(n, law)
        rep = classify(g)
        assert rep["admits_nonsingular_prederivation"] == crit_p
        assert rep["admits_nonsingular_derivation"] == crit_d


def test_an1_criterion_input_validation():
    n = 12
    with pytest.raises(ValueError):
        an1_nonsingular_criterion(n, AlphaVector(n, {(2, 5): 1, (3, 7): 1}))
    with pytest.raises(ValueError):
        an1_nonsingular_criterion(n, AlphaVector(n, {(2, 5): 2}))


def test_solve_jacobi_respects_fixed_values():
    n = 10
    fixed = {(2, 5): 1, (2, 6): Q(1, 2)}
    a = solve_jacobi(n, fixed, random.Random(3))
    assert a is not None
    assert a.get(2, 5) == 1
    assert a.get(2, 6) == Q(1, 2)
    assert jacobi_check(build_filiform(n, a)) == []


def test_random_laws_profiles():
    n = 11
    any_laws = random_laws(n, 4, 13)
    assert len(any_laws) == 4
    for a in any_laws:
        assert jacobi_check(build_filiform(n, a)) == []
    for a in random_laws(n, 3, 13, profile="a1"):
        assert a_class_membership(n, a) == "A1"
        assert jacobi_check(build_filiform(n, a)) == []
    for a in random_laws(n, 3, 13, profile="a2"):
        assert a_class_membership(n, a) == "A2"
        assert jacobi_check(build_filiform(n, a)) == []


def test_random_laws_deterministic():
    n = 11
    a = [x.to_tuple() for x in random_laws(n, 3, 99)]
    b = [x.to_tuple() for x in random_laws(n, 3, 99)]
    assert a == b


def test_random_laws_a2_high_dim():
    # even for n >= 12 the A2 profile must produce Jacobi laws; the
    # quadratic constraints pin the alpha_{2,5}:alpha_{3,7} ratio there
    for a in random_laws(12, 2, 5, profile="a2"):
        assert a_class_membership(12, a) == "A2"
        assert jacobi_check(build_filiform(12, a)) == []
