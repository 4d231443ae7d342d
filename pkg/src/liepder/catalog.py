"""Built-in algebras with their published classification data.

Bracket tables are transcribed exactly as printed, 1-based, and shifted
to the internal 0-based convention in one place. Expected values act as
golden data for the test suite; entries without a published value for
some field simply omit it.
"""

from .ratio import Q, ratio
from .core import LieAlgebra
from .filiform import AlphaVector, build_filiform


class CatalogError(ValueError):
    pass


def _alg(name, n, table):
    return LieAlgebra(n, {(i - 1, j - 1): {k - 1: c for k, c in comp.items()}
                          for (i, j), comp in table.items()}, name=name)


def _chain(n, lo, hi):
    """[e_1, e_i] = e_{i+1} for lo <= i <= hi, as a 1-based table."""
    return {(1, i): {i + 1: 1} for i in range(lo, hi + 1)}


def _int_param(params, key, minimum=None):
    if key not in params:
        raise CatalogError("missing parameter %r" % key)
    v = params[key]
    if not isinstance(v, int):
        try:
            v = int(str(v))
        except ValueError:
            raise CatalogError("parameter %r must be an integer" % key) from None
    if minimum is not None and v < minimum:
        raise CatalogError("parameter %r must be >= %d" % (key, minimum))
    return v


def _rat_param(params, key, nonzero=False):
    if key not in params:
        raise CatalogError("missing parameter %r" % key)
    try:
        v = ratio(params[key])
    except (ValueError, TypeError, ZeroDivisionError):
        raise CatalogError("parameter %r must be rational" % key) from None
    if nonzero and not v:
        raise CatalogError("parameter %r must be non-zero" % key)
    return v


def _g_7_1(params):
    t = _chain(7, 2, 6)
    t[(2, 3)] = {6: 1}
    t[(2, 4)] = {7: 1}
    t[(2, 5)] = {7: 1}
    t[(3, 4)] = {7: -1}
    return _alg("g_7_1", 7, t)


def _g_7_4(params):
    lam = _rat_param(params, "lambda")
    t = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {6: 1, 7: lam},
         (1, 5): {7: 1}, (1, 6): {7: 1},
         (2, 3): {5: 1}, (2, 4): {7: 1}, (2, 5): {6: 1}, (3, 5): {7: 1}}
    return _alg("g_7_4", 7, t)


def _g_7_5(params):
    t = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 6): {7: 1},
         (1, 4): {6: 1, 7: 1},
         (2, 3): {5: 1}, (2, 5): {6: 1}, (3, 5): {7: 1}}
    return _alg("g_7_5", 7, t)


def _g_7_7(params):
    t = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 6): {7: 1},
         (1, 4): {7: 1}, (1, 5): {7: 1},
         (2, 3): {5: 1}, (2, 4): {7: 1}, (2, 5): {6: 1}, (3, 5): {7: 1}}
    return _alg("g_7_7", 7, t)


def _remark_algebra(params):
    t = _chain(7, 2, 6)
    t[(2, 3)] = {6: 1, 7: 1}
    t[(2, 4)] = {7: 1}
    return _alg("remark_algebra", 7, t)


def _strongly_nilpotent_family(params):
    n = _int_param(params, "n", minimum=7)
    t = _chain(n, 2, n - 1)
    t[(2, 3)] = {n - 1: 1}
    t[(2, 4)] = {n: 1}
    t[(2, 5)] = {n: -1}
    t[(3, 4)] = {n: 1}
    return _alg("strongly_nilpotent_family", n, t)


def _g_n_alpha(params):
    n = _int_param(params, "n", minimum=7)
    alpha = _rat_param(params, "alpha", nonzero=True)
    t = _chain(n, 2, n - 1)
    t[(2, 3)] = {5: 1, n: alpha}
    for j in range(4, n - 1):
        t[(2, j)] = {j + 2: 1}
    return _alg("g_n_alpha", n, t)


def _mu11(name, pairs):
    def build(params):
        return build_filiform(11, AlphaVector(11, pairs), name=name)
    return build


def _mu11_62(params):
    beta = _rat_param(params, "beta", nonzero=True)
    a = AlphaVector(11, {(2, 7): beta, (2, 11): 1, (3, 9): Q(1, 2),
                         (4, 11): 1})
    return build_filiform(11, a, name="mu11_62")


def _heisenberg3(params):
    return _alg("heisenberg3", 3, {(1, 2): {3: 1}})


def _abelian(params):
    n = _int_param(params, "n", minimum=0)
    return LieAlgebra(n, {}, name="abelian")


def _sl2(params):
    return _alg("sl2", 3, {(1, 2): {3: 1}, (1, 3): {1: -2}, (2, 3): {2: 2}})


def _model_filiform(params):
    n = _int_param(params, "n", minimum=3)
    return _alg("model_filiform", n, _chain(n, 2, n - 1))


def _free_nilpotent_23(params):
    return _alg("free_nilpotent_23", 6,
                {(1, 2): {4: 1}, (1, 3): {5: 1}, (2, 3): {6: 1}})


class CatalogEntry:
    __slots__ = ("name", "builder", "params", "expected", "note")

    def __init__(self, name, builder, params=(), expected=None, note=""):
        self.name = name
        self.builder = builder
        self.params = tuple(params)
        self.expected = dict(expected or {})
        self.note = note

    def build(self, params=None):
        return self.builder(params or {})


_MU_EXPECT = {"p_inv": True, "d_inv": False, "strongly_nilpotent": False}

ENTRIES = [
    CatalogEntry("g_7_1", _g_7_1, (), {
        "dim_der": 10, "dim_pder": 13, "p_inv": False, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": True}),
    CatalogEntry("g_7_4", _g_7_4, ("lambda",), {
        "dim_der": 10, "dim_pder": 12, "p_inv": False, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": True}),
    CatalogEntry("g_7_5", _g_7_5, (), {
        "dim_der": 10, "dim_pder": 13, "p_inv": True, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": False}),
    CatalogEntry("g_7_7", _g_7_7, (), {
        "dim_der": 10, "dim_pder": 12, "p_inv": False, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": True},
                 note="source discrepancy: the printed brackets give "
                      "dim Pder = 13, not the tabulated 12; every "
                      "single-symbol repair reaching 12 collapses onto a "
                      "g_7_4 member, so the brackets are kept verbatim"),
    CatalogEntry("remark_algebra", _remark_algebra, (), {
        "dim_der": 11, "dim_pder": 16, "p_inv": True, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": False}),
    CatalogEntry("strongly_nilpotent_family", _strongly_nilpotent_family,
                 ("n",), {
        "p_inv": False, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": True}),
    CatalogEntry("g_n_alpha", _g_n_alpha, ("n", "alpha"), {
        "p_inv": True, "d_inv": False,
        "char_nilpotent": True, "strongly_nilpotent": False}),
    CatalogEntry("mu11_71", _mu11("mu11_71", {(2, 6): 1, (2, 11): 1}),
                 (), _MU_EXPECT),
    CatalogEntry("mu11_62", _mu11_62, ("beta",), _MU_EXPECT),
    CatalogEntry("mu11_81", _mu11("mu11_81", {(2, 7): 1, (2, 11): 1}),
                 (), _MU_EXPECT),
    CatalogEntry("mu11_89", _mu11("mu11_89", {(2, 8): 1, (2, 11): 1}),
                 (), _MU_EXPECT),
    CatalogEntry("mu11_16", _mu11("mu11_16", {(2, 5): 1, (2, 11): 1}),
                 (), _MU_EXPECT),
    CatalogEntry("mu11_4_00", _mu11("mu11_4_00", {
        (2, 5): 1, (2, 11): 1, (3, 7): Q(4, 7), (4, 9): Q(8, 21)}),
                 (), _MU_EXPECT),
    CatalogEntry("mu11_96a", _mu11("mu11_96a", {(2, 9): 1, (2, 11): 1}),
                 (), _MU_EXPECT,
                 note="deformation-basis convention: the printed 16-tuple "
                      "(0,0,0,0,1,0,1,0,...) read in canonical pair order"),
    CatalogEntry("mu11_101a", _mu11("mu11_101a", {(2, 10): 1, (2, 11): 1}),
                 (), _MU_EXPECT,
                 note="deformation-basis convention: the printed 16-tuple "
                      "(0,0,0,0,0,1,1,0,...) read in canonical pair order"),
    CatalogEntry("heisenberg3", _heisenberg3, (), {
        "p_inv": True, "d_inv": True,
        "char_nilpotent": False, "strongly_nilpotent": False}),
    CatalogEntry("abelian", _abelian, ("n",), {
        "p_inv": True, "d_inv": True,
        "char_nilpotent": False, "strongly_nilpotent": False}),
    CatalogEntry("sl2", _sl2, (), {
        "dim_der": 3, "dim_pder": 3, "p_inv": False, "d_inv": False,
        "char_nilpotent": False, "strongly_nilpotent": False}),
    CatalogEntry("model_filiform", _model_filiform, ("n",), {
        "p_inv": True, "d_inv": True,
        "char_nilpotent": False, "strongly_nilpotent": False}),
    CatalogEntry("free_nilpotent_23", _free_nilpotent_23, (), {
        "p_inv": True, "d_inv": True,
        "char_nilpotent": False, "strongly_nilpotent": False}),
]

_BY_NAME = {e.name: e for e in ENTRIES}


def list_entries():
    return list(ENTRIES)


def entry(name):
    e = _BY_NAME.get(name)
    if e is None:
        raise CatalogError("unknown catalog entry %r" % name)
    return e


def get(name, params=None):
    return entry(name).build(params or {})
