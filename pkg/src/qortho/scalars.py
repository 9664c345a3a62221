"""Scalar plumbing shared by every numeric module.

All formulas in this package are written generically: a computation stays in
whatever scalar type the caller supplies.  Binary64 mode works on plain
Python float/complex, extended mode on mpmath mpf/mpc values created under an
``extended_precision`` context.  Only the handful of operations that need to
dispatch on the type live here.
"""

from __future__ import annotations

import cmath
import math

import mpmath

MP_TYPES = (mpmath.mpf, mpmath.mpc)

DEFAULT_EXTENDED_DIGITS = 50


def extended_precision(digits: int = DEFAULT_EXTENDED_DIGITS):
    """Context manager setting the mpmath working precision in decimal digits."""
    return mpmath.workdps(digits)


def is_mp(x) -> bool:
    """True for mpmath scalars (extended-precision mode)."""
    return isinstance(x, MP_TYPES)


def as_scalar(value, extended: bool = False):
    """Coerce a number or decimal string to the working scalar type.

    In extended mode strings are handed to mpmath directly so decimal input
    keeps full precision instead of round-tripping through binary64.
    """
    if extended:
        if isinstance(value, MP_TYPES):
            return value
        return mpmath.mpf(value)
    return float(value)


def sqrt(x):
    """Square root staying in x's scalar family, complex for negative reals."""
    if is_mp(x):
        return mpmath.sqrt(x)
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


def format_scalar(x, digits: int = 17) -> str:
    """Deterministic decimal rendering with a fixed number of significant digits."""
    if is_mp(x):
        return mpmath.nstr(x, digits)
    return "%.*g" % (digits, x)
