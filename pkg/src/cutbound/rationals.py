"""Exact rational arithmetic helpers.

All metric quantities in this package are `fractions.Fraction` values, which
are arbitrary precision and kept in canonical form (positive denominator,
gcd(|num|, den) = 1) by construction.  Nothing in the package ever rounds.

This module adds the small amount of plumbing the rest of the code needs:
construction with a friendly error, parsing/formatting of the "p/q" wire
format, and a decimal rendering used only for human-facing output.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def rat(num: int, den: int = 1) -> Fraction:
    """Build the canonical rational num/den.

    >>> rat(6, 4)
    Fraction(3, 2)
    >>> rat(3, -9)
    Fraction(-1, 3)
    """
    if den == 0:
        raise InputError("rational denominator must be nonzero")
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "p", or a decimal string like "1.25" into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    s = str(text).strip()
    if not s:
        raise InputError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational literal {text!r}: {exc}") from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as the canonical "p/q" wire string ("p" when q=1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_approx(value: Fraction, digits: int = 6) -> str:
    """Advisory decimal rendering with `digits` significant digits.

    Output is never consumed by the package itself; exact values travel as
    "p/q" strings.
    """
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    v = -value if value < 0 else value
    # Scale so the leading significant digit sits just left of the point.
    magnitude = 0
    while v >= 10:
        v /= 10
        magnitude += 1
    while v < 1:
        v *= 10
        magnitude -= 1
    scaled = v * Fraction(10) ** (digits - 1)
    digits_int = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator % scaled.denominator) >= scaled.denominator:
        digits_int += 1
        if digits_int >= 10**digits:  # rounding carried into a new digit
            digits_int //= 10
            magnitude += 1
    text = str(digits_int)
    point = magnitude + 1
    if 0 < point <= len(text):
        out = text[:point] + ("." + text[point:] if text[point:] else "")
    elif point <= 0:
        out = "0." + "0" * (-point) + text
    else:
        out = text + "0" * (point - len(text))
    return sign + out.rstrip(".")
