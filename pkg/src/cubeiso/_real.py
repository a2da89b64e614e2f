"""High-precision real arithmetic for the transcendental side of the checks.

Every measure, influence and symmetric-difference quantity in this package is
an exact rational; a real number only ever appears when a logarithm is taken
(log-measure comparisons, the isoperimetric excess, the lemma functions).
Those computations run here on mpmath floats at PREC bits, and a single
tolerance comparison at the end decides each inequality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath
from mpmath import mp

# Working precision in bits.  float64 would already leave ~1e-15 relative
# error, far below the 1e-9 tolerance, but logs of ratios of large integers
# deserve headroom and mpmath is cheap at this scale.
PREC = 113

#: Default slack tolerance: an inequality "lhs >= rhs" counts as satisfied
#: when lhs - rhs >= -DEFAULT_TOL.
DEFAULT_TOL = 1e-9

Real = Union[int, float, Fraction, mpmath.mpf]


def to_mpf(x: Real) -> mpmath.mpf:
    """Convert exactly-representable inputs to an mpf at working precision."""
    with mp.workprec(PREC):
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / mp.mpf(x.denominator)
        return mp.mpf(x)


@lru_cache(maxsize=1 << 17)
def _ln_cached(num: int, den: int) -> mpmath.mpf:
    with mp.workprec(PREC):
        return mp.ln(mp.mpf(num)) - mp.ln(mp.mpf(den))


def ln(x: Real) -> mpmath.mpf:
    """Natural log at working precision; exact rationals are cached."""
    if isinstance(x, Fraction):
        return _ln_cached(x.numerator, x.denominator)
    if isinstance(x, int):
        return _ln_cached(x, 1)
    with mp.workprec(PREC):
        return mp.ln(to_mpf(x))


def log_base_p(x: Real, p: Real) -> mpmath.mpf:
    """log_p(x) = ln(x)/ln(p), requiring x > 0 and 0 < p < 1."""
    with mp.workprec(PREC):
        return ln(x) / ln(p)


def xlogp(x: Real, p: Real) -> mpmath.mpf:
    """x * log_p(x) with the continuous-extension convention 0*log_p(0) = 0."""
    if x == 0:
        return mp.mpf(0)
    with mp.workprec(PREC):
        return to_mpf(x) * log_base_p(x, p)


def deficit_parts(mu: Fraction, total_influence: Fraction, p: Fraction):
    """Isoperimetric comparison of p*I against mu*log_p(mu).

    Returns (lhs, rhs, epsilon, epsilon_prime) as mpf values, where
      lhs = p * I * ln(1/p),
      rhs = mu * ln(1/mu)      (0 when mu is 0 or 1),
      epsilon = p*I/mu - log_p(mu)   (0 when mu = 0, by convention),
      epsilon_prime = epsilon * ln(1/p).
    epsilon >= 0 is equivalent to p*I >= mu*log_p(mu).
    """
    with mp.workprec(PREC):
        ln_inv_p = -ln(p)
        lhs = to_mpf(p * total_influence) * ln_inv_p
        if mu == 0 or mu == 1:
            rhs = mp.mpf(0)
        else:
            rhs = to_mpf(mu) * (-ln(mu))
        if mu == 0:
            eps = mp.mpf(0)
        else:
            # p*I/mu is exact; only the log contributes rounding.
            eps = to_mpf(p * total_influence / mu) - (-ln(mu)) / ln_inv_p
        return lhs, rhs, eps, eps * ln_inv_p


def epsilon_of(mu: Fraction, total_influence: Fraction, p: Fraction) -> mpmath.mpf:
    """The excess epsilon alone (see deficit_parts)."""
    return deficit_parts(mu, total_influence, p)[2]
