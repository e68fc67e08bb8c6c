"""Helpers for exact rationals and their display renderings.

All probability arithmetic in this package is exact `fractions.Fraction`
arithmetic; floats are display-only and never accepted as inputs.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

RationalLike = Fraction | int | str


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an exact representation ("p/q" string, int, Fraction)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    # floats are rejected on purpose: they would break exact equality
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    return str(value)


def decimal_str(value: Fraction, digits: int = 6) -> str:
    """Approximate decimal rendering, display-only."""
    return f"{float(value):.{digits}g}"


def exact_decimal(value: Fraction) -> str | None:
    """Finite decimal expansion of `value`, or None if it does not terminate."""
    den = value.denominator
    e2 = e5 = 0
    while den % 2 == 0:
        den //= 2
        e2 += 1
    while den % 5 == 0:
        den //= 5
        e5 += 1
    if den != 1:
        return None
    k = max(e2, e5)
    scaled = value * 10**k
    digits = str(abs(scaled.numerator))
    sign = "-" if value < 0 else ""
    if k == 0:
        return sign + digits
    digits = digits.rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:]
    return f"{sign}{whole}.{frac}".rstrip("0").rstrip(".")


def percent_str(value: Fraction) -> str:
    """Percent rendering: exact when terminating, else 4 significant digits.

    The approximation rounds half-up and is marked with a leading tilde.
    """
    pct = value * 100
    exact = exact_decimal(pct)
    if exact is not None:
        return f"{exact}%"
    with localcontext() as ctx:
        ctx.prec = 4
        ctx.rounding = ROUND_HALF_UP
        approx = Decimal(pct.numerator) / Decimal(pct.denominator)
    return f"~{approx}%"
