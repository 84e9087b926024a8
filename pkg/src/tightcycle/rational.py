"""Exact rational arithmetic helpers.

gmpy2.mpq is used internally where available (it is several times faster
than fractions.Fraction in simplex pivoting); public APIs always expose
fractions.Fraction.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def as_fraction(x):
    """Convert an internal rational (mpq/Fraction/int) to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x.numerator, x.denominator)


def frac(a, b=1):
    return Fraction(a, b)
