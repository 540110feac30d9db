"""Exact rationals in the unit interval.

Membership degrees, distances, discount factors and tolerances are all plain
:class:`fractions.Fraction` values that have been checked to lie in [0, 1].
Nothing on the computation path ever touches a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

UnitRational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_FRACTION_RE = re.compile(r"\s*(\d+)\s*/\s*(\d+)\s*\Z")
_DECIMAL_RE = re.compile(r"\s*(\d+)(?:\.(\d+))?\s*\Z")


class RationalSyntaxError(ValueError):
    pass


def parse_literal(text: str) -> tuple[int, int]:
    """Split a rational literal into (numerator, denominator) as written.

    Accepts ``"p/q"`` and terminating decimals such as ``"0.85"`` (read as
    85/100). No reduction happens here; ``"8/10"`` gives ``(8, 10)``.
    """
    if not isinstance(text, str):
        raise RationalSyntaxError(f"rational literal must be a string, got {text!r}")
    m = _FRACTION_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise RationalSyntaxError(f"zero denominator in {text!r}")
        return num, den
    m = _DECIMAL_RE.match(text)
    if m:
        whole, frac = m.group(1), m.group(2) or ""
        return int(whole + frac), 10 ** len(frac)
    raise RationalSyntaxError(f"not a rational literal: {text!r}")


def parse_rational(text: str) -> Fraction:
    num, den = parse_literal(text)
    return Fraction(num, den)


def unit(value: Union[Fraction, int, str]) -> Fraction:
    """Coerce ``value`` to a Fraction and check that it lies in [0, 1]."""
    if isinstance(value, str):
        q = parse_rational(value)
    elif isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        q = Fraction(value)
    else:
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    if not 0 <= q <= 1:
        raise ValueError(f"{q} is outside [0, 1]")
    return q


def format_rational(q: Fraction) -> str:
    """Render as ``p/q`` in lowest terms, including ``0/1`` and ``1/1``."""
    return f"{q.numerator}/{q.denominator}"


def ceil_log2(n: int) -> int:
    # 0 and 1 both cost nothing
    if n <= 1:
        return 0
    return (n - 1).bit_length()


def bit_size(q: Union[Fraction, tuple[int, int]]) -> int:
    """Encoding size of a rational as ceil(log2 p) + ceil(log2 q).

    Pass a ``(numerator, denominator)`` tuple to measure a literal exactly as
    it was written (``(8, 10)`` costs 7 bits, whereas ``Fraction(4, 5)``
    costs 5).
    """
    if isinstance(q, tuple):
        num, den = q
    else:
        num, den = q.numerator, q.denominator
    return ceil_log2(num) + ceil_log2(den)


def smallest_denominator_in(lo: Fraction, hi: Fraction) -> Fraction:
    """Return the rational in [lo, hi] with the least denominator.

    Stern-Brocot descent with run-length steps, so the work is proportional
    to the length of the continued fraction expansion rather than to the
    size of the partial quotients.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    if lo <= 0 <= hi:
        return ZERO
    if lo < 0:
        return -smallest_denominator_in(-hi, -lo)
    # integers first: the denominator 1 wins whenever available
    whole = -(-lo.numerator // lo.denominator)
    if whole <= hi:
        return Fraction(whole)

    # left = a/b < lo, right = c/d > hi, both bounding the interval
    a, b, c, d = 0, 1, 1, 0
    while True:
        # number of steps towards the right before the mediant passes lo
        # mediant (a + k c) / (b + k d) < lo  <=>  k < (lo.n b - lo.d a) / (lo.d c - lo.n d)
        num = lo.numerator * b - lo.denominator * a
        den = lo.denominator * c - lo.numerator * d
        k = (num - 1) // den if den > 0 else 0
        if k > 0:
            a, b = a + k * c, b + k * d
        m = Fraction(a + c, b + d)
        if lo <= m <= hi:
            return m
        if m < lo:
            a, b = a + c, b + d
            continue
        # mediant overshoots hi; step left as far as possible
        num = hi.denominator * c - hi.numerator * d
        den = hi.numerator * b - hi.denominator * a
        k = (num - 1) // den if den > 0 else 0
        if k > 0:
            c, d = c + k * a, d + k * b
        m = Fraction(a + c, b + d)
        if lo <= m <= hi:
            return m
        if m > hi:
            c, d = a + c, b + d
        else:
            a, b = a + c, b + d
