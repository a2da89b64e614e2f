"""Exact p-biased measures, influences and edge boundaries.

Everything here is exact rational arithmetic (`fractions.Fraction`, exposed
as `Rational`): measures group the 1-points by Hamming weight, influences
group boundary edges by the weight of their lower endpoint, and the
polynomial forms keep integer coefficients so that identities like the
Margulis-Russo lemma can be checked with zero tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .cube import (
    BooleanFunction,
    is_monotone,
    iter_set_bits,
    low_half_mask,
    popcount_class_masks,
)

#: Exact arbitrary-precision rational; the stdlib type already guarantees a
#: positive reduced denominator after every operation.
Rational = Fraction


def _check_p(p: Fraction) -> None:
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")


def weight_class_counts(f: BooleanFunction) -> list[int]:
    """counts[w] = number of 1-points of f with Hamming weight w."""
    return [(f.table & mask).bit_count() for mask in popcount_class_masks(f.n)]


@lru_cache(maxsize=4096)
def _point_weights(n: int, p: Fraction) -> tuple[Fraction, ...]:
    q = 1 - p
    return tuple(p**w * q ** (n - w) for w in range(n + 1))


def mu(f: BooleanFunction, p: Fraction) -> Fraction:
    """mu_p(f): the p-biased measure of the 1-set, exactly."""
    _check_p(p)
    weights = _point_weights(f.n, p)
    return sum(
        (c * w for c, w in zip(weight_class_counts(f), weights)),
        start=Fraction(0),
    )


def _pivotal_mask(f: BooleanFunction, i: int) -> int:
    """Lower endpoints x (x_i = 0) of the coordinate-i edges where f differs."""
    bit = i - 1
    return (f.table ^ (f.table >> (1 << bit))) & low_half_mask(f.n, bit)


def influence(f: BooleanFunction, i: int, p: Fraction) -> Fraction:
    """I_i^p(f) = Pr_{mu_p}[f(x) != f(x xor e_i)], exactly."""
    _check_p(p)
    if not 1 <= i <= f.n:
        raise ValueError(f"coordinate {i} out of range [1, {f.n}]")
    weights = _point_weights(f.n - 1, p) if f.n > 1 else (Fraction(1),)
    d = _pivotal_mask(f, i)
    masks = popcount_class_masks(f.n)
    total = Fraction(0)
    for s in range(f.n):
        c = (d & masks[s]).bit_count()
        if c:
            total += c * weights[s]
    return total


def total_influence(f: BooleanFunction, p: Fraction) -> Fraction:
    """I^p(f) = sum of the n coordinate influences, exactly."""
    return sum((influence(f, i, p) for i in range(1, f.n + 1)), start=Fraction(0))


# ---------------------------------------------------------------------------
# edge boundary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeSet:
    """Edges {x, x xor e_i} listed once as (index of x, i) with x_i = 0."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)


def edge_boundary(f: BooleanFunction) -> EdgeSet:
    """All edges of the cube joining a 1-point of f to a 0-point."""
    edges = []
    for i in range(1, f.n + 1):
        for x in iter_set_bits(_pivotal_mask(f, i)):
            edges.append((x, i))
    return EdgeSet(f.n, tuple(edges))


def boundary_size(f: BooleanFunction) -> int:
    """Number of boundary edges (uniform-measure count)."""
    return sum(_pivotal_mask(f, i).bit_count() for i in range(1, f.n + 1))


def boundary_measure(e: EdgeSet, p: Fraction) -> Fraction:
    """Sum of edge measures p^s (1-p)^(n-1-s), s = weight of the lower endpoint.

    With that exponent choice the total over edge_boundary(f) equals the
    total influence of f, which is the identity that pins the formula down.
    """
    _check_p(p)
    weights = _point_weights(e.n - 1, p) if e.n > 1 else (Fraction(1),)
    return sum((weights[x.bit_count()] for x, _ in e.edges), start=Fraction(0))


# ---------------------------------------------------------------------------
# polynomials in p
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurePolynomial:
    """Dense integer-coefficient polynomial in p; index = power of p."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def evaluate(self, p: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * p + c
        return acc

    def derivative(self) -> "MeasurePolynomial":
        return MeasurePolynomial(
            tuple(k * c for k, c in enumerate(self.coefficients) if k >= 1)
        )

    def __sub__(self, other: "MeasurePolynomial") -> "MeasurePolynomial":
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return MeasurePolynomial(
            tuple(
                (a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0)
                for k in range(size)
            )
        )


def _weighted_expansion(counts: list[int], n: int) -> MeasurePolynomial:
    # sum_w counts[w] * p^w * (1-p)^(n-w), expanded in the monomial basis
    coeffs = [0] * (n + 1)
    for w, c in enumerate(counts):
        if not c:
            continue
        m = n - w
        for j in range(m + 1):
            coeffs[w + j] += c * comb(m, j) * (-1) ** j
    return MeasurePolynomial(tuple(coeffs))


def measure_polynomial(f: BooleanFunction) -> MeasurePolynomial:
    """mu_p(f) as an integer polynomial in p, valid for all p at once."""
    return _weighted_expansion(weight_class_counts(f), f.n)


def influence_polynomial(f: BooleanFunction) -> MeasurePolynomial:
    """I^p(f) as an integer polynomial in p."""
    masks = popcount_class_masks(f.n)
    counts = [0] * f.n
    for i in range(1, f.n + 1):
        d = _pivotal_mask(f, i)
        for s in range(f.n):
            counts[s] += (d & masks[s]).bit_count()
    return _weighted_expansion(counts, f.n - 1)


def margulis_russo_residual(f: BooleanFunction) -> MeasurePolynomial:
    """d/dp of the measure polynomial minus the influence polynomial.

    For monotone increasing f this is identically zero (Margulis-Russo);
    non-monotone input is rejected because the identity is not claimed there.
    """
    if not is_monotone(f):
        raise ValueError("margulis_russo_residual requires a monotone function")
    return measure_polynomial(f).derivative() - influence_polynomial(f)
