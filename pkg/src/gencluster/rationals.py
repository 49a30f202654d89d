"""Exact rational scalars.

Every number in this package is an arbitrary-precision rational kept in
lowest terms with a positive denominator; no floating point is used
anywhere.  ``Q`` is the constructor: ``gmpy2.mpq`` when gmpy2 is installed
(noticeably faster on the large numerators produced by determinants),
``fractions.Fraction`` otherwise.  The two types interoperate, compare and
hash identically for equal values, so the rest of the code treats rationals
as opaque.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    Q = _mpq
    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Q = Fraction
    HAVE_GMPY2 = False

QLike = object  # any exact rational value accepted by Q()

ZERO = Q(0)
ONE = Q(1)


def qstr(value) -> str:
    """Render a rational as ``p`` or ``p/q`` (lowest terms)."""
    return str(Q(value))


def parse_q(text: str):
    """Parse the output of :func:`qstr` back into a rational."""
    return Q(Fraction(text))


def is_integer(value) -> bool:
    return Q(value).denominator == 1


def as_int(value) -> int:
    """Convert an integer-valued rational to ``int``; raise otherwise."""
    q = Q(value)
    if q.denominator != 1:
        raise ValueError(f"not an integer: {q}")
    return int(q.numerator)


def exponent_of(value, base, max_exp: int = 10_000):
    """Return the integer w with ``base**w == value``, or None.

    ``base`` must be a rational different from 0, 1 and -1.  Used to read
    off homogeneity degrees from exact scaling ratios.
    """
    v = Q(value)
    b = Q(base)
    if v <= 0 or b <= 0 or b == 1:
        return None
    if v == 1:
        return 0
    w = 0
    if (v > 1) == (b > 1):
        cur = v
        while cur > 1 if b > 1 else cur < 1:
            cur = cur / b
            w += 1
            if w > max_exp:
                return None
        return w if cur == 1 else None
    cur = v
    while cur < 1 if b > 1 else cur > 1:
        cur = cur * b
        w += 1
        if w > max_exp:
            return None
    return -w if cur == 1 else None
