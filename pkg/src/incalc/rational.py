"""Exact rational helpers: parsing, decimal rendering, integer square roots.

Everything here stays in integer arithmetic so that rendered output is
deterministic across platforms and test runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def parse_rational(text: str) -> Fraction:
    """Parse '2/5', '0.4', or '3' into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def round_half_up(q: Fraction) -> int:
    """Nearest integer to q, ties toward +infinity."""
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def _strip_scaled(scaled: int, digits: int, negative: bool) -> str:
    whole, frac = divmod(scaled, 10**digits)
    sign = "-" if negative and scaled else ""
    if frac == 0:
        return f"{sign}{whole}"
    tail = str(frac).rjust(digits, "0").rstrip("0")
    return f"{sign}{whole}.{tail}"


def decimal_str(q: Fraction, digits: int = 6) -> str:
    """Decimal rendering of q, rounded half-up at `digits` places,
    trailing zeros trimmed ('1/5' -> '0.2', '1/3' -> '0.333333')."""
    p = abs(q)
    scaled = (2 * p.numerator * 10**digits + p.denominator) // (2 * p.denominator)
    return _strip_scaled(scaled, digits, q < 0)


def sqrt_scaled(q: Fraction, digits: int) -> int:
    """Nearest integer to sqrt(q) * 10**digits, computed exactly.

    sqrt(n/d) = sqrt(n*d)/d, so the scaled value is sqrt(M)/d with
    M = n * d * 10**(2*digits); rounding to nearest is
    (floor(2*sqrt(M)) + d) // (2*d), and floor(2*sqrt(M)) = isqrt(4*M).
    """
    if q < 0:
        raise ValueError("square root of a negative rational")
    n, d = q.numerator, q.denominator
    m = n * d * 10 ** (2 * digits)
    return (isqrt(4 * m) + d) // (2 * d)


def sqrt_decimal_str(q: Fraction, digits: int = 6) -> str:
    """Decimal rendering of sqrt(q) to `digits` places, zeros trimmed."""
    return _strip_scaled(sqrt_scaled(q, digits), digits, False)


def sqrt_fraction(q: Fraction, digits: int = 15) -> Fraction:
    """sqrt(q) as a Fraction accurate to `digits` decimal places."""
    return Fraction(sqrt_scaled(q, digits), 10**digits)


def format_prob(q: Fraction) -> str:
    """Dual rendering of an exact probability: 'num/den (= decimal)',
    or the bare integer when the value is whole ('0', '1')."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator} (= {decimal_str(q)})"
