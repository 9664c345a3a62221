"""q-Pochhammer symbols and terminating basic hypergeometric sums.

This is the numeric substrate of the package.  The series engine treats
numerator and denominator parameter lists uniformly: the standard r-phi-s
normalisation is obtained by listing the nome q itself among the denominator
parameters, which contributes the usual (q;q)_k factor.  Every sum
terminates, either at an explicitly supplied truncation degree or at the
degree implied by a numerator parameter of the form q**(-n).

In binary64 mode terms are accumulated in increasing k with compensated
(Kahan) summation; mpmath inputs are summed plainly since the working
precision already dominates the roundoff budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .scalars import is_mp, sqrt

__all__ = [
    "SingularSeriesError",
    "SeriesSpec",
    "qpochhammer",
    "qpochhammer_multi",
    "phi_basis",
    "terminating_series_eval",
    "z_from_x",
]

# Relative guard below which a denominator q-Pochhammer factor is treated as
# an exact zero: legitimate factors in this package never come this close.
_SINGULAR_GUARD = 1e-13


class SingularSeriesError(ArithmeticError):
    """A denominator q-Pochhammer factor vanishes inside the summation range."""

    def __init__(self, parameter, index):
        self.parameter = parameter
        self.index = index
        super().__init__(
            "denominator factor 1 - (%s) * q^%d vanishes" % (parameter, index)
        )


def _check_nome(q):
    if not 0 < q < 1:
        raise ValueError("nome q must be real with 0 < q < 1")


def _check_length(k) -> int:
    try:
        ki = int(k)
    except (OverflowError, ValueError, TypeError):
        raise ValueError("only finite integer q-Pochhammer lengths are supported")
    if ki != k:
        raise ValueError("only finite integer q-Pochhammer lengths are supported")
    if ki < 0:
        raise ValueError("q-Pochhammer length must be non-negative")
    return ki


def qpochhammer(a, q, k):
    """(a;q)_k = prod_{i=0}^{k-1} (1 - a q^i); the empty product 1 for k = 0."""
    _check_nome(q)
    k = _check_length(k)
    out = 1.0
    qpow = q ** 0
    for _ in range(k):
        out = out * (1 - a * qpow)
        qpow = qpow * q
    return out


def qpochhammer_multi(bases: Sequence, q, k):
    """Product of qpochhammer over several bases; 1 for an empty base list."""
    _check_nome(q)
    k = _check_length(k)
    out = 1.0
    for a in bases:
        out = out * qpochhammer(a, q, k)
    return out


def phi_basis(a, z, q, k):
    """The degree-k basis factor (a z; q)_k (a/z; q)_k at x = (z + 1/z)/2."""
    if z == 0:
        raise ValueError("z must be nonzero")
    return qpochhammer(a * z, q, k) * qpochhammer(a / z, q, k)


@dataclass
class SeriesSpec:
    """A terminating basic hypergeometric sum.

    sum_{k=0}^{d} [prod (num; q)_k / prod (den; q)_k] * argument**k

    where d is the truncation degree.  Callers wanting the standard phi-series
    convention list q among the denominator parameters.
    """

    numerator: tuple
    denominator: tuple
    q: object
    argument: object
    truncation: Optional[int] = None


def _terminating_degree(numerator, q) -> int:
    """Smallest n with some numerator parameter equal to q**(-n), n >= 0."""
    logq = math.log(float(q))
    best = None
    for p in numerator:
        if getattr(p, "imag", 0.0) != 0:
            continue
        x = float(getattr(p, "real", p))
        if x <= 0:
            continue
        n = round(-math.log(x) / logq)
        if n < 0:
            continue
        if abs(x * float(q) ** n - 1.0) <= 1e-9:
            best = n if best is None else min(best, n)
    if best is None:
        raise ValueError(
            "series does not terminate: no numerator parameter of the form "
            "q**(-n); supply an explicit truncation degree"
        )
    return best


def terminating_series_eval(spec: SeriesSpec):
    """Evaluate a terminating parameter-list series term by term."""
    return _series_eval_with_magnitude(spec)[0]


def _series_eval_with_magnitude(spec: SeriesSpec):
    """(value, sum of |term|): the magnitude bounds the cancellation noise."""
    q = spec.q
    _check_nome(q)
    num = tuple(spec.numerator)
    den = tuple(spec.denominator)
    degree = spec.truncation
    if degree is None:
        degree = _terminating_degree(num, q)
    if degree < 0:
        raise ValueError("truncation degree must be non-negative")

    plain = any(is_mp(v) for v in (q, spec.argument) + num + den)
    term = 1.0 * spec.argument ** 0
    total = 0.0
    comp = 0.0
    magnitude = 0.0
    qpow = q ** 0
    for k in range(degree + 1):
        magnitude = magnitude + abs(term)
        if plain:
            total = total + term
        else:
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        if k == degree:
            break
        for p in num:
            term = term * (1 - p * qpow)
        for p in den:
            f = 1 - p * qpow
            if abs(f) <= _SINGULAR_GUARD * max(1.0, abs(p * qpow)):
                raise SingularSeriesError(p, k)
            term = term / f
        term = term * spec.argument
        qpow = qpow * q
    return total, magnitude


def z_from_x(x):
    """Principal representative z = x + sqrt(x^2 - 1), so x = (z + 1/z)/2.

    The result is complex of modulus one for |x| < 1.  Lattice points should
    bypass this converter and supply their exponential z directly.
    """
    return x + sqrt(x * x - 1)
