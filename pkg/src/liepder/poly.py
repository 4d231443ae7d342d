"""Sparse multivariate polynomials over Q, and matrices of them.

Terms are {exponent tuple: coefficient}. Printing and leading-term
selection use graded lexicographic order, highest first. Variables are
rendered t1..tm.
"""

from .ratio import Q, ZERO, ONE, ratio
from .linalg import RatMatrix


class InexactDivision(ArithmeticError):
    pass


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                c = ratio(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: ratio(c)})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ONE})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return ZERO
        ((e, c),) = self.terms.items()
        if any(e):
            raise ValueError("not a constant")
        return c

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            w = t.get(e, ZERO) + c
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        out = MultiPoly(self.nvars)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = ratio(other)
            out = MultiPoly(self.nvars)
            if c:
                out.terms = {e: x * c for e, x in self.terms.items()}
            return out
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = t.get(e, ZERO) + c1 * c2
                if w:
                    t[e] = w
                else:
                    t.pop(e, None)
        out = MultiPoly(self.nvars)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.is_const() and self.const_value() == ratio(other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        pt = [ratio(x) for x in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x ** k
            total += v
        return total

    def substitute(self, i, value):
        """Replace variable i by a rational constant."""
        value = ratio(value)
        out = MultiPoly(self.nvars)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c = c * value ** k
                e = e[:i] + (0,) + e[i + 1:]
            if not c:
                continue
            w = t.get(e, ZERO) + c
            if w:
                t[e] = w
            else:
                t.pop(e, None)
        out.terms = t
        return out

    def linear_in(self, i):
        """Write p = A + B * x_i when degree_in(i) <= 1; returns (A, B) or
        None when the variable appears with a higher power."""
        a = MultiPoly(self.nvars)
        b = MultiPoly(self.nvars)
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                a.terms[e] = c
            elif k == 1:
                b.terms[e[:i] + (0,) + e[i + 1:]] = c
            else:
                return None
        return a, b

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append("t%d" % (i + 1))
                elif k > 1:
                    factors.append("t%d^%d" % (i + 1, k))
            neg = c < 0
            mag = -c if neg else c
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = str(mag) + "*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append((neg, body))
        neg, body = parts[0]
        out = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return "MultiPoly(%d, %s)" % (self.nvars, str(self))


def exact_div(p, q):
    """Exact quotient p / q in Q[t1..tm]; raises InexactDivision otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return MultiPoly(p.nvars)
    qe, qc = q.leading()
    quot = MultiPoly(p.nvars)
    rem = p
    while not rem.is_zero():
        re, rc = rem.leading()
        e = tuple(a - b for a, b in zip(re, qe))
        if any(x < 0 for x in e):
            raise InexactDivision("leading term not divisible")
        t = MultiPoly(p.nvars, {e: rc / qc})
        quot = quot + t
        rem = rem - t * q
    return quot


class GenericMatrix:
    """Square matrix of polynomials, typically sum_r t_r * B_r for a basis
    of matrices B_r, so every entry is linear homogeneous in the t's."""

    __slots__ = ("n", "nvars", "entries")

    def __init__(self, entries, nvars=None):
        self.entries = [list(row) for row in entries]
        self.n = len(self.entries)
        if any(len(r) != self.n for r in self.entries):
            raise ValueError("not square")
        if nvars is None:
            if not self.entries:
                raise ValueError("need nvars for an empty matrix")
            nvars = self.entries[0][0].nvars
        self.nvars = nvars
        for row in self.entries:
            for p in row:
                if p.nvars != nvars:
                    raise ValueError("variable count mismatch")

    @classmethod
    def from_basis(cls, mats, n):
        """Generic member sum_r t_r * B_r of a span of RatMatrix."""
        m = len(mats)
        entries = [[MultiPoly(m) for _ in range(n)] for _ in range(n)]
        for r, b in enumerate(mats):
            e = [0] * m
            e[r] = 1
            e = tuple(e)
            for i in range(n):
                for j in range(n):
                    c = b[i, j]
                    if c:
                        entries[i][j].terms[e] = c
        return cls(entries, nvars=m)

    def entry(self, i, j):
        return self.entries[i][j]

    def evaluate(self, point):
        return RatMatrix([[p.evaluate(point) for p in row] for row in self.entries])

    def transform(self, s):
        """Conjugate by a RatMatrix: s^-1 * G * s."""
        sinv = s.inverse()
        n = self.n
        mid = [[_poly_lincomb(self.entries[i], s.col(j), self.nvars)
                for j in range(n)] for i in range(n)]
        out = [[MultiPoly(self.nvars) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = MultiPoly(self.nvars)
                for t in range(n):
                    c = sinv[i, t]
                    if c:
                        acc = acc + mid[t][j] * c
                out[i][j] = acc
        return GenericMatrix(out, nvars=self.nvars)


def _poly_lincomb(polys, coeffs, nvars):
    acc = MultiPoly(nvars)
    for p, c in zip(polys, coeffs):
        if c and not p.is_zero():
            acc = acc + p * c
    return acc


def poly_det(gm):
    """Determinant by Laplace expansion along columns ordered sparsest
    first, memoized on the set of remaining rows."""
    n = gm.n
    if n == 0:
        return MultiPoly.const(max(gm.nvars, 0), 1)
    order = sorted(range(n),
                   key=lambda j: sum(1 for i in range(n) if gm.entries[i][j]))
    sign = _perm_sign(order)
    cols = [[gm.entries[i][order[k]] for i in range(n)] for k in range(n)]
    memo = {}
    full = (1 << n) - 1

    def rec(mask):
        if mask == 0:
            return MultiPoly.const(gm.nvars, 1)
        got = memo.get(mask)
        if got is not None:
            return got
        k = n - bin(mask).count("1")
        col = cols[k]
        acc = MultiPoly(gm.nvars)
        s = ONE
        for i in range(n):
            bit = 1 << i
            if not mask & bit:
                continue
            p = col[i]
            if p:
                sub = rec(mask & ~bit)
                if sub:
                    acc = acc + p * sub * s
            s = -s
        memo[mask] = acc
        return acc

    d = rec(full)
    return d * sign if sign == -1 else d


def _perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def poly_det_bareiss(gm):
    """Fraction-free Bareiss determinant over the polynomial ring.
    Slower; kept as an independent check on poly_det."""
    n = gm.n
    if n == 0:
        return MultiPoly.const(max(gm.nvars, 0), 1)
    m = [[p for p in row] for row in gm.entries]
    one = MultiPoly.const(gm.nvars, 1)
    prev = one
    sign = 1
    for k in range(n - 1):
        if m[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if p is None:
                return MultiPoly(gm.nvars)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev) if not num.is_zero() else num
            m[i][k] = MultiPoly(gm.nvars)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def poly_charpoly(gm):
    """Coefficients of det(x*I - M), lowest degree first, length n+1.
    Faddeev-LeVerrier; all divisions are by integers, hence exact."""
    n = gm.n
    one = MultiPoly.const(gm.nvars, 1)
    if n == 0:
        return [one]
    a = gm.entries
    zero = MultiPoly(gm.nvars)

    def mat_mul(x, y):
        out = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(n):
            xi = x[i]
            for j in range(n):
                acc = MultiPoly(gm.nvars)
                for t in range(n):
                    if xi[t] and y[t][j]:
                        acc = acc + xi[t] * y[t][j]
                out[i][j] = acc
        return out

    def tr(x):
        acc = MultiPoly(gm.nvars)
        for i in range(n):
            acc = acc + x[i][i]
        return acc

    coeffs = [one]
    m = [row[:] for row in a]
    c = -tr(m)
    coeffs.append(c)
    for k in range(2, n + 1):
        for i in range(n):
            m[i][i] = m[i][i] + c
        m = mat_mul(a, m)
        c = tr(m) * Q(-1, k)
        coeffs.append(c)
    coeffs.reverse()
    return coeffs
