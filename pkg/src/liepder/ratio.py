"""Rational scalar type used everywhere else.

gmpy2.mpq when available (much faster), fractions.Fraction otherwise.
The two are hash-compatible and print the same way, so nothing above
this module needs to care which one is active.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def ratio(x):
    """Coerce int, str 'p/q', Fraction or Q to Q. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("refusing float %r; pass a string or Fraction" % x)
    return Q(x)


def ratio_str(x):
    """Canonical 'p' or 'p/q' form, as accepted back by ratio()."""
    return str(x)
