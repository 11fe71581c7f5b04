"""
Parsing and rendering of exact rationals as "p/q" strings
"""
from fractions import Fraction
from typing import Any, Union

import sympy

RationalLike = Union[int, str, Fraction]


def parse_rational(value: Any) -> Fraction:
    """
    Parse an integer, a Fraction or a "p/q" string into a reduced Fraction

    Raises:
        ValueError: If the value is a float, a bool or malformed text
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"Not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"Not an exact rational: {value!r}") from exc
    raise ValueError(f"Not an exact rational: {value!r}")


def render_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_value(value: Any) -> str:
    """Render a tensor entry: rationals as "p/q", symbolic entries via sympy"""
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return render_rational(Fraction(value))
    if isinstance(value, sympy.Rational):
        return render_rational(parse_rational(value))
    return sympy.sstr(value)


def to_sympy(value: Fraction) -> sympy.Rational:
    """Exact conversion of a Fraction into a sympy Rational"""
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)
