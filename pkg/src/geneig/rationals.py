"""Exact rational scalars: parsing, formatting and normalization.

Every scalar in this package is either a Python ``int`` or a
``fractions.Fraction``.  Both are arbitrary precision and always stored in
lowest terms with a positive denominator, so equality tests are trivial and
no rounding can occur anywhere.  Integers are preferred over denominator-1
fractions because integer arithmetic is several times faster.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = int | Fraction


def normalize(value: Rational) -> Rational:
    """Collapse denominator-1 fractions to plain ints."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def as_rational(value) -> Rational:
    """Coerce *value* to an exact scalar.

    Accepts ints, Fractions, and strings of the form ``"p"`` or ``"p/q"``.
    Floats are rejected: silently converting them would launder rounding
    error into an exact computation.
    """
    if isinstance(value, bool):
        raise TypeError("boolean is not a rational scalar")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return normalize(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r} of type {type(value).__name__}")


def parse_rational(text: str) -> Rational:
    """Parse ``"p"`` or ``"p/q"`` into an exact scalar."""
    text = text.strip()
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        try:
            num, den = int(num_text), int(den_text)
        except ValueError:
            raise ValueError(f"malformed rational: {text!r}") from None
        if den == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return normalize(Fraction(num, den))
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"malformed rational: {text!r}") from None


def format_rational(value: Rational) -> str:
    """Format an exact scalar as ``"p"`` or ``"p/q"``."""
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def numerator(value: Rational) -> int:
    return value.numerator if isinstance(value, Fraction) else value


def denominator(value: Rational) -> int:
    return value.denominator if isinstance(value, Fraction) else 1


def lcm_int(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a // gcd(a, b) * b)


def bit_length(value: Rational) -> int:
    """Bit length of the largest component, used for growth diagnostics."""
    return max(numerator(value).__abs__().bit_length(), denominator(value).bit_length())
