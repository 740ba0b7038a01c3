"""Parsing and formatting of exact rationals."""

import re
from fractions import Fraction
from numbers import Rational

RATIONAL_PATTERN = r"-?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^{RATIONAL_PATTERN}$")


def parse_rational(text):
    """Parse ``[-]DIGITS[/DIGITS]`` into a :class:`Fraction`.

    Raises ``ValueError`` on anything else, including a zero denominator.
    """
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def to_fraction(value):
    """Coerce ints, Fractions and rational strings. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(value):
    """Render as ``p/q`` in lowest terms (``p`` alone when ``q == 1``)."""
    return str(Fraction(value))
