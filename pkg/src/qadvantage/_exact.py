"""Decimal-exact products and quotients of configured constants.

Machine parameters are written as short decimals (``1e-5``, ``0.7e-9``).
Evaluating ratios of them in binary floating point leaves residues such as
``10000 / 1e-5 == 999999999.9999999``; reading each float by its shortest
decimal repr and dividing rationally gives the correctly rounded result.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Number = Union[int, float, Fraction]


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def product(*factors: Number) -> Fraction:
    out = Fraction(1)
    for f in factors:
        out *= as_fraction(f)
    return out


def quotient(numerator: Number, *denominators: Number) -> float:
    """Return ``numerator / prod(denominators)`` rounded once to float."""
    return float(as_fraction(numerator) / product(*denominators))
