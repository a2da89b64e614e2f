"""Lexicographic families, their measure-space limits, and upper shadows.

The lexicographic order on subsets of [n] puts S above T iff min(S delta T)
belongs to S, so the m largest sets form the classical extremal family for
edge isoperimetry.  For biases p != 1/2 an initial segment of every measure
does not exist at any finite n; the right limiting object is a union of
disjoint cylinders indexed by a strictly increasing digit sequence
i_1 < i_2 < ... (the positions of the 1s in the binary expansion of
lambda = sum_j 2^(-i_j)).  Cylinder j fixes the first i_j coordinates:
coordinates i_1, ..., i_(j-1) to 0, every other coordinate up to i_j to 1.
Its measure is p^(i_j - j + 1) * (1-p)^(j - 1), and because a finite digit
set reproduces a finite lexicographic family exactly, measures and total
influences of the limit family are exact rational sums over the digits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .cube import (
    BooleanFunction,
    HypothesisError,
    is_monotone,
    popcount_class_masks,
)
from . import measure

#: Default digit cap for the greedy expansion solver.
DEFAULT_DEPTH = 64


# ---------------------------------------------------------------------------
# finite lexicographic families
# ---------------------------------------------------------------------------

def _rev(k: int, n: int) -> int:
    return int(format(k, f"0{n}b")[::-1], 2)


@lru_cache(maxsize=4096)
def _lex_table(n: int, m: int) -> int:
    # x belongs to the top-m segment iff its min-element-first score is in
    # the top m values; reversing the index bits turns the comparator into
    # plain integer order.
    threshold = (1 << n) - m
    table = 0
    for k in range(1 << n):
        if _rev(k, n) >= threshold:
            table |= 1 << k
    return table


def lex_family(n: int, m: int) -> BooleanFunction:
    """Indicator of the m largest subsets of [n] in lexicographic order."""
    if not 0 <= m <= 1 << n:
        raise ValueError(f"family size {m} out of range [0, 2^{n}]")
    return BooleanFunction(n, _lex_table(n, m))


# ---------------------------------------------------------------------------
# k-uniform families and upper shadows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KUniformFamily:
    """A family of k-subsets of [n], members encoded as bitmasks."""

    n: int
    k: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise ValueError(f"uniformity {self.k} out of range [0, {self.n}]")
        members = frozenset(self.members)
        for m in members:
            if m >> self.n or m.bit_count() != self.k:
                raise ValueError(f"member {m:#x} is not a {self.k}-subset of [{self.n}]")
        object.__setattr__(self, "members", members)

    def __len__(self) -> int:
        return len(self.members)


def upper_shadow(a: KUniformFamily) -> KUniformFamily:
    """All (k+1)-sets containing some member."""
    if a.k >= a.n:
        raise ValueError("upper shadow would exceed the ground set")
    out = set()
    for m in a.members:
        free = ~m & ((1 << a.n) - 1)
        while free:
            lsb = free & -free
            out.add(m | lsb)
            free ^= lsb
    return KUniformFamily(a.n, a.k + 1, frozenset(out))


def iterated_upper_shadow(a: KUniformFamily, i: int) -> KUniformFamily:
    """The i-fold upper shadow (the (k+i)-sets containing some member)."""
    if i < 0 or a.k + i > a.n:
        raise ValueError("iterated shadow exceeds the ground set")
    for _ in range(i):
        a = upper_shadow(a)
    return a


def lex_ksets(n: int, k: int, m: int) -> KUniformFamily:
    """The m largest k-subsets of [n] in lexicographic order."""
    if not 0 <= m <= comb(n, k):
        raise ValueError(f"size {m} out of range [0, C({n},{k})]")
    masks = [sum(1 << (i - 1) for i in c) for c in combinations(range(1, n + 1), k)]
    masks.sort(key=lambda mask: _rev(mask, n), reverse=True)
    return KUniformFamily(n, k, frozenset(masks[:m]))


def kk_min_upper_shadow(n: int, k: int, m: int) -> int:
    """Size of the upper shadow of the lexicographic segment of m k-sets.

    By the Kruskal-Katona theorem this is the minimum of |upper shadow|
    over all families of m k-sets; the brute-force sweeps test exactly that.
    """
    if k >= n:
        raise ValueError("need k < n")
    if m == 0:
        return 0
    return len(upper_shadow(lex_ksets(n, k, m)))


# ---------------------------------------------------------------------------
# limit families via binary expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryExpansion:
    """Strictly increasing digit positions i_1 < i_2 < ... of a lambda in (0,1).

    `exact` marks a complete (terminating) expansion; a truncated expansion
    stands for an unknown lambda whose first digits these are.
    """

    digits: tuple[int, ...]
    exact: bool = True

    def __post_init__(self) -> None:
        digits = tuple(int(d) for d in self.digits)
        if not digits:
            raise ValueError("expansion needs at least one digit")
        if digits[0] < 1 or any(a >= b for a, b in zip(digits, digits[1:])):
            raise ValueError("digits must be strictly increasing and >= 1")
        object.__setattr__(self, "digits", digits)

    @property
    def value(self) -> Fraction:
        """lambda = sum_j 2^(-i_j) (a lower bound when not exact)."""
        return sum((Fraction(1, 1 << d) for d in self.digits), start=Fraction(0))

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def max_digit(self) -> int:
        return self.digits[-1]

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.digits)

    @classmethod
    def from_string(cls, s: str, exact: bool = True) -> "BinaryExpansion":
        """Parse a comma-separated digit list like "1,2"."""
        try:
            digits = tuple(int(part) for part in s.split(","))
        except ValueError:
            raise ValueError(f"bad expansion string {s!r}") from None
        return cls(digits, exact)


def _cylinder_measures(b: BinaryExpansion, p: Fraction) -> list[Fraction]:
    q = 1 - p
    return [p ** (ij - j + 1) * q ** (j - 1) for j, ij in enumerate(b.digits, start=1)]


def _undecided_measure(b: BinaryExpansion, p: Fraction) -> Fraction:
    # measure of the region left undecided after the listed digits
    return p ** (b.max_digit - b.depth) * (1 - p) ** b.depth


def limit_lex_measure(b: BinaryExpansion, p: Fraction) -> tuple[Fraction, Fraction]:
    """(measure of the limit family, tail bound).

    The value sums the disjoint cylinder measures of the listed digits; for a
    truncated expansion the unknown deeper digits can add at most the measure
    of the deepest undecided cylinder, returned as the tail bound.
    """
    measure._check_p(p)
    value = sum(_cylinder_measures(b, p), start=Fraction(0))
    tail = Fraction(0) if b.exact else _undecided_measure(b, p)
    return value, tail


def limit_lex_influence(b: BinaryExpansion, p: Fraction) -> tuple[Fraction, Fraction]:
    """(total influence of the limit family, tail bound).

    For monotone families total influence is the p-derivative of the measure,
    so differentiating the cylinder sum term by term gives the influence of
    the family spanned by the listed digits exactly:
        d/dp [p^a (1-p)^c] = p^a (1-p)^c * (a/p - c/(1-p)).
    For a truncated expansion the returned tail bound covers the discrepancy
    to the limit: unknown digits change the value by at most
        m * ((i_D - D)/p + D/(1-p) + 1/min(p, 1-p)),
    where m is the undecided-cylinder measure, because each listed digit's
    term moves by at most the tail measure over (1-p), each pass-through
    coordinate's by the tail measure over p, and the coordinates beyond i_D
    contribute m times the influence of a shifted family (at most
    1/min(p,1-p) for any family decided by a coordinate scan).
    """
    measure._check_p(p)
    q = 1 - p
    value = Fraction(0)
    for j, (ij, cyl) in enumerate(zip(b.digits, _cylinder_measures(b, p)), start=1):
        a, c = ij - j + 1, j - 1
        value += cyl * (Fraction(a) / p - Fraction(c) / q)
    if b.exact:
        return value, Fraction(0)
    i_d, d = b.max_digit, b.depth
    tail = _undecided_measure(b, p) * (
        Fraction(i_d - d) / p + Fraction(d) / q + 1 / min(p, q)
    )
    return value, tail


def lambda_from_measure(
    target: Fraction, p: Fraction, max_depth: int = DEFAULT_DEPTH
) -> tuple[BinaryExpansion, Fraction]:
    """Greedy digit construction of lambda with mu_p(limit family) = target.

    Scanning positions i = 1, 2, ... with j digits already accepted, the next
    cylinder at position i has measure p^(i-j) * (1-p)^j; it is accepted
    whenever that is <= the remaining target.  Greedy is forced: the total
    measure still reachable from positions > i equals the cylinder measure at
    i exactly, so skipping an affordable digit strands the remainder.  Stops
    at remainder zero or at the digit cap; the exact remainder is returned.
    """
    measure._check_p(p)
    if not 0 < target < 1:
        raise ValueError(f"target measure must lie strictly between 0 and 1, got {target}")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    digits = []
    remaining = Fraction(target)
    cyl = p  # cylinder measure at (position 1, level 1)
    i = 1
    while remaining > 0 and len(digits) < max_depth:
        if cyl <= remaining:
            digits.append(i)
            remaining -= cyl
            cyl *= 1 - p
        else:
            cyl *= p
        i += 1
    return BinaryExpansion(tuple(digits), exact=(remaining == 0)), remaining


# ---------------------------------------------------------------------------
# layer domination (Kruskal-Katona corollary)
# ---------------------------------------------------------------------------

def _layer_count(table: int, n: int, k: int) -> int:
    return (table & popcount_class_masks(n)[k]).bit_count()


def layer_domination_check(
    f: BooleanFunction, b: BinaryExpansion, k0: int, k: int
) -> bool:
    """Layer comparison against the lexicographic family of expansion b.

    Hypotheses (violations raise HypothesisError, distinct from a False
    conclusion): f monotone increasing; n > k0 > k >= j >= 1 and
    n - k0 >= j, where j is the largest digit of b; and the k0-layer of f
    is no larger than the k0-layer of the lexicographic family.  Returns
    whether the k-layer of f is then also no larger.
    """
    n, j = f.n, b.max_digit
    if not (n > k0 > k >= j >= 1):
        raise HypothesisError(f"need n > k0 > k >= max digit >= 1, got n={n}, k0={k0}, k={k}, j={j}")
    if n - k0 < j:
        raise HypothesisError(f"need n - k0 >= max digit, got n={n}, k0={k0}, j={j}")
    if not is_monotone(f):
        raise HypothesisError("layer domination requires a monotone function")
    scaled = b.value * (1 << n)
    lex = lex_family(n, int(scaled))
    if _layer_count(f.table, n, k0) > _layer_count(lex.table, n, k0):
        raise HypothesisError("k0-layer of f already exceeds the lexicographic layer")
    return _layer_count(f.table, n, k) <= _layer_count(lex.table, n, k)
