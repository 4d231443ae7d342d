"""Command-line front end.

Every subcommand reads algebras from a JSON file, from stdin ("-"), or
from the built-in catalog via a ``catalog:NAME`` URI, optionally with
``--param k=v`` arguments for parametric entries.  Rationals are printed
as "p/q" strings, never floats.  Exit codes: 0 on success, 1 when a
predicate-style command gets a mathematically negative answer, 2 on bad
input, with a one-line JSON error object on stderr.
"""

import argparse
import json
import os
import sys

from .ratio import Q, ratio, ratio_str
from .linalg import RatMatrix
from . import core
from .core import (LieAlgebra, StructureError, jacobi_check, lts_check,
                   lower_central_series, derived_series, nilindex,
                   is_nilpotent, is_filiform)
from .deriv import derivation_space, prederivation_space, is_prederivation
from .classify import classify, DEFAULT_SEED
from .filiform import AlphaVector, index_set, build_filiform
from .affine import theta_product, affine_violations
from . import catalog
from .catalog import CatalogError


class InputError(ValueError):
    """Bad file, JSON, catalog name, or parameter value."""


def _parse_params(pairs):
    out = {}
    for item in pairs or []:
        key, eq, val = item.partition("=")
        if not eq or not key:
            raise InputError("--param needs the form k=v, got %r" % item)
        try:
            out[key] = int(val)
        except ValueError:
            try:
                out[key] = Q(ratio(val))
            except (ValueError, TypeError, ZeroDivisionError):
                raise InputError("parameter %s: %r is not an integer "
                                 "or rational" % (key, val)) from None
    return out


def _read_source(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc


def load_algebra(path, params=None):
    """Resolve FILE arguments: 'catalog:NAME', '-' for stdin, or a path."""
    if path.startswith("catalog:"):
        name = path[len("catalog:"):]
        try:
            return catalog.get(name, params)
        except CatalogError as exc:
            raise InputError(str(exc)) from exc
    if params:
        raise InputError("--param only applies to catalog: inputs")
    text = _read_source(path)
    try:
        return core.from_json(text)
    except StructureError as exc:
        raise InputError(str(exc)) from exc


def load_matrix(path, n):
    """Row-major rational matrix from JSON: lists of 'p/q' strings or ints."""
    text = _read_source(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON in %s: %s" % (path, exc)) from exc
    if not (isinstance(data, list) and len(data) == n
            and all(isinstance(r, list) and len(r) == n for r in data)):
        raise InputError("expected a %dx%d row-major matrix" % (n, n))
    try:
        return RatMatrix([[ratio(x) for x in row] for row in data])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError("bad matrix entry: %s" % exc) from exc


def _emit(obj, as_json):
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    return obj


def _mat_strs(m):
    return [[ratio_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _print_matrix(m, indent="  "):
    cells = _mat_strs(m)
    width = max(len(s) for row in cells for s in row)
    for row in cells:
        print(indent + "[" + "  ".join(s.rjust(width) for s in row) + "]")


# ---------------------------------------------------------------- commands


def cmd_check(args):
    g = load_algebra(args.file, _parse_params(args.param))
    jac = jacobi_check(g)
    lts = lts_check(g)
    ok = not jac and not lts
    if args.json:
        _emit({"name": g.name, "dim": g.dim, "jacobi_ok": not jac,
               "lts_ok": not lts,
               "jacobi_violations": [[i + 1, j + 1, k + 1]
                                     for (i, j, k) in jac],
               "lts_violations": lts}, True)
    else:
        print("%s: dim %d" % (g.name or args.file, g.dim))
        print("jacobi: %s" % ("ok" if not jac else
                              "FAIL at triples %s" %
                              [(i + 1, j + 1, k + 1) for (i, j, k) in jac]))
        print("lts: %s" % ("ok" if not lts else "FAIL %s" % lts))
    return 0 if ok else 1


def cmd_series(args):
    g = load_algebra(args.file, _parse_params(args.param))
    lcs = [len(b) for b in lower_central_series(g)]
    der = [len(b) for b in derived_series(g)]
    nil = is_nilpotent(g)
    out = {
        "name": g.name, "dim": g.dim,
        "lower_central": lcs, "derived": der,
        "nilpotent": nil,
        "nilindex": nilindex(g) if nil else None,
        "filiform": is_filiform(g),
    }
    if args.json:
        _emit(out, True)
    else:
        print("%s: dim %d" % (g.name or args.file, g.dim))
        print("lower central dims: %s" % " > ".join(str(d) for d in lcs))
        print("derived dims: %s" % " > ".join(str(d) for d in der))
        if nil:
            print("nilpotent: yes (nilindex %d)" % out["nilindex"])
        else:
            print("nilpotent: no")
        print("filiform: %s" % ("yes" if out["filiform"] else "no"))
    return 0


def _cmd_space(args, kind):
    g = load_algebra(args.file, _parse_params(args.param))
    space = derivation_space(g) if kind == "der" else prederivation_space(g)
    if args.json:
        out = {"name": g.name, "dim_algebra": g.dim, "kind": space.kind,
               "dim": space.dim,
               "basis": [_mat_strs(b) for b in space.basis]}
        if args.generic:
            gm = space.generic()
            out["generic"] = [[str(gm.entry(i, j)) for j in range(gm.n)]
                              for i in range(gm.n)]
        _emit(out, True)
    else:
        label = "Der" if kind == "der" else "Pder"
        print("%s: dim %s(g) = %d" % (g.name or args.file, label, space.dim))
        for r, b in enumerate(space.basis):
            print("B%d:" % (r + 1))
            _print_matrix(b)
        if args.generic:
            gm = space.generic()
            print("generic member (parameters t1..t%d):" % space.dim)
            cells = [[str(gm.entry(i, j)) for j in range(gm.n)]
                     for i in range(gm.n)]
            width = max(len(s) for row in cells for s in row)
            for row in cells:
                print("  [" + "  ".join(s.rjust(width) for s in row) + "]")
    return 0


def cmd_der(args):
    return _cmd_space(args, "der")


def cmd_pder(args):
    return _cmd_space(args, "pder")


def cmd_classify(args):
    g = load_algebra(args.file, _parse_params(args.param))
    report = classify(g, seed=args.seed)
    out = report.to_dict()
    if not args.certificates:
        del out["certificates"]
    if args.json:
        _emit(out, True)
    else:
        print("%s: dim %d" % (g.name or args.file, g.dim))
        print("dim Der  = %d" % report.der_dim)
        print("dim Pder = %d" % report.pder_dim)
        for key in report.PREDICATES:
            print("%-34s %s" % (key, "yes" if report.answers[key] else "no"))
        if args.certificates:
            print(json.dumps(out["certificates"], sort_keys=True, indent=2))
    return 0


def cmd_affine(args):
    g = load_algebra(args.file, _parse_params(args.param))
    P = load_matrix(args.prederivation, g.dim)
    is_pder = is_prederivation(g, P, full=True)
    det = P.det()
    violations = []
    is_aff = False
    if is_pder and det:
        prod = theta_product(g, P)
        violations = affine_violations(prod)
        is_aff = not violations
    out = {
        "is_prederivation": is_pder,
        "det": ratio_str(det),
        "is_affine": is_aff,
        "violations": [[i + 1, j + 1] for (i, j) in violations],
    }
    if args.json:
        _emit(out, True)
    else:
        print("prederivation: %s" % ("yes" if is_pder else "no"))
        print("det = %s" % out["det"])
        print("affine: %s" % ("yes" if is_aff else "no"))
        if violations:
            print("violating pairs: %s" % out["violations"])
    return 0 if is_aff else 1


def cmd_filiform_gen(args):
    if args.n < 3:
        raise InputError("need n >= 3")
    pairs = index_set(args.n)
    coords = [s for s in args.alpha.split(",") if s.strip() != ""]
    if len(coords) != len(pairs):
        raise InputError("alpha list for n=%d needs %d entries, got %d"
                         % (args.n, len(pairs), len(coords)))
    try:
        alpha = AlphaVector.from_tuple(args.n, [ratio(s.strip())
                                                for s in coords])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError("bad alpha entry: %s" % exc) from exc
    g = build_filiform(args.n, alpha, name="filiform_n%d" % args.n)
    doc = core.to_json(g)
    if args.check:
        jac = jacobi_check(g)
        if args.json:
            _emit({"algebra": doc, "jacobi_ok": not jac,
                   "violations": [[i + 1, j + 1, k + 1]
                                  for (i, j, k) in jac]}, True)
        else:
            print(json.dumps(doc, sort_keys=True))
            print("jacobi: %s" % ("ok" if not jac else
                                  "FAIL at triples %s" %
                                  [(i + 1, j + 1, k + 1)
                                   for (i, j, k) in jac]))
        return 0 if not jac else 1
    print(json.dumps(doc, sort_keys=True))
    return 0


def cmd_catalog_list(args):
    rows = [{"name": e.name, "params": list(e.params), "note": e.note}
            for e in catalog.list_entries()]
    if args.json:
        _emit(rows, True)
    else:
        for r in rows:
            extra = ""
            if r["params"]:
                extra = " (params: %s)" % ", ".join(r["params"])
            print("%s%s" % (r["name"], extra))
    return 0


def cmd_catalog_get(args):
    try:
        g = catalog.get(args.name, _parse_params(args.param))
    except CatalogError as exc:
        raise InputError(str(exc)) from exc
    print(json.dumps(core.to_json(g), sort_keys=True))
    return 0


TABLE7_ROWS = ("g_7_1", "g_7_4", "g_7_5", "g_7_7")


def cmd_table7(args):
    """Recompute the dim-7 rows whose brackets the catalog carries."""
    rows = []
    ok = True
    for name in TABLE7_ROWS:
        e = catalog.entry(name)
        params = {"lambda": 1} if "lambda" in e.params else {}
        report = classify(e.build(params), seed=args.seed)
        p_inv = report["admits_nonsingular_prederivation"]
        match = (report.der_dim == e.expected["dim_der"]
                 and report.pder_dim == e.expected["dim_pder"]
                 and p_inv == e.expected["p_inv"])
        ok = ok and match
        rows.append({"name": name, "dim_der": report.der_dim,
                     "dim_pder": report.pder_dim,
                     "nonsingular_prederivation": p_inv,
                     "expected": {"dim_der": e.expected["dim_der"],
                                  "dim_pder": e.expected["dim_pder"],
                                  "p_inv": e.expected["p_inv"]},
                     "match": match})
    if args.json:
        _emit(rows, True)
    else:
        print("%-8s %8s %9s %6s  %s" % ("algebra", "dim Der", "dim Pder",
                                        "P_inv", "status"))
        for r in rows:
            print("%-8s %8d %9d %6s  %s" % (
                r["name"], r["dim_der"], r["dim_pder"],
                "yes" if r["nonsingular_prederivation"] else "no",
                "ok" if r["match"] else "MISMATCH"))
    return 0 if ok else 1


# ------------------------------------------------------------------ driver


def _default_seed():
    env = os.environ.get("LIE_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError("LIE_SEED must be an integer, got %r" % env) from None


def _add_common(sp, with_file=True):
    if with_file:
        sp.add_argument("file", metavar="FILE",
                        help="algebra JSON path, '-' for stdin, or "
                             "catalog:NAME")
    sp.add_argument("--param", action="append", metavar="K=V",
                    help="catalog entry parameter, repeatable")
    sp.add_argument("--json", action="store_true",
                    help="machine-readable output")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="lie",
        description="Exact derivation/prederivation computations for "
                    "rational Lie algebra structure constants.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="Jacobi identity and triple-system "
                                      "axioms")
    _add_common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("series", help="central/derived series, nilindex, "
                                       "filiform flag")
    _add_common(sp)
    sp.set_defaults(func=cmd_series)

    for kind, help_text in (("der", "derivation algebra basis"),
                            ("pder", "prederivation algebra basis")):
        sp = sub.add_parser(kind, help=help_text)
        _add_common(sp)
        sp.add_argument("--generic", action="store_true",
                        help="render the generic member with parameters")
        sp.set_defaults(func=cmd_der if kind == "der" else cmd_pder)

    sp = sub.add_parser("classify", help="all four predicates with "
                                         "certificates")
    _add_common(sp)
    sp.add_argument("--certificates", action="store_true",
                    help="include certificate objects in the output")
    sp.add_argument("--seed", type=int, default=None,
                    help="witness search seed (default: LIE_SEED or 42)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("affine", help="theta-product affinity test for a "
                                       "prederivation matrix")
    _add_common(sp)
    sp.add_argument("--prederivation", required=True, metavar="P.json",
                    help="row-major rational matrix JSON")
    sp.set_defaults(func=cmd_affine)

    sp = sub.add_parser("filiform", help="adapted-basis filiform generator")
    fsub = sp.add_subparsers(dest="subcommand", required=True)
    sg = fsub.add_parser("gen", help="build the law for an alpha vector")
    sg.add_argument("--n", type=int, required=True, help="dimension, >= 3")
    sg.add_argument("--alpha", required=True,
                    help="comma-separated rationals in index-set order")
    sg.add_argument("--check", action="store_true",
                    help="run the Jacobi test on the result")
    sg.add_argument("--json", action="store_true")
    sg.set_defaults(func=cmd_filiform_gen)

    sp = sub.add_parser("catalog", help="built-in algebra collection")
    csub = sp.add_subparsers(dest="subcommand", required=True)
    cl = csub.add_parser("list", help="list entries")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_catalog_list)
    cg = csub.add_parser("get", help="emit an entry in the algebra JSON "
                                     "format")
    cg.add_argument("name")
    cg.add_argument("--param", action="append", metavar="K=V")
    cg.add_argument("--json", action="store_true",
                    help="accepted for symmetry; output is always JSON")
    cg.set_defaults(func=cmd_catalog_get)

    sp = sub.add_parser("table7", help="recompute the printed dim-7 rows")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_table7)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except (StructureError, CatalogError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream consumer (e.g. head) closed the pipe; not an error
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
