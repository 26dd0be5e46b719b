"""Exact rational scalars and their "p/q" wire format."""
import re
from math import isqrt
from fractions import Fraction
from typing import Union

from core.exceptions import DocumentError

RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: RationalLike) -> Fraction:
    """Parse "p/q" or "p"; decimals and floats are rejected"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise DocumentError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise DocumentError(f"not a rational: {text!r}")

    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise DocumentError(f"not a p/q rational: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise DocumentError(f"zero denominator: {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    """Lowest-terms "p/q" string ("p" for integers)"""
    return str(Fraction(value))


def rational_sqrt(value: Fraction) -> Fraction:
    """Exact square root of a rational square; raises ValueError otherwise"""
    value = Fraction(value)
    if value < 0:
        raise ValueError(f"negative value {value}")
    num, den = isqrt(value.numerator), isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        raise ValueError(f"{value} is not the square of a rational")
    return Fraction(num, den)
