"""Exhaustive verification sweeps over whole function spaces.

These drive the per-function checkers of `iso`/`measure`/`lex` across every
truth table (or every monotone one) at desk scale.  The inner loops avoid
repeated Fraction reductions by working with integer numerators over the
common denominators b^n and b^(n-1) for p = a/b; the tests pin these
numerators against the exact `measure` routines.  Sweeps over full truth
table spaces can fan out over a process pool; the merge is associative
(counts, minima, maxima), so the worker split never changes a result.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from mpmath import mp

from . import iso, measure
from ._real import DEFAULT_TOL, PREC, ln, to_mpf
from .cube import (
    BooleanFunction,
    enumerate_subcubes,
    low_half_mask,
    monotone_tables,
    popcount_class_masks,
    subcube_indicator,
)
from .lex import KUniformFamily, kk_min_upper_shadow, lex_family, upper_shadow

#: Sweeps smaller than this stay single-process regardless of --jobs.
PARALLEL_THRESHOLD = 1 << 15


def default_jobs() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# integer kernels for fixed (n, p)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiasTables:
    """Integer weights for p = a/b on n coordinates.

    mu(f) = mu_numerator / b^n and I(f) = influence_numerator / b^(n-1);
    p*I/mu reduces to a * I_num / mu_num with no denominators at all.
    """

    n: int
    a: int
    b: int
    point_weights: tuple[int, ...]  # a^w (b-a)^(n-w)
    edge_weights: tuple[int, ...]   # a^s (b-a)^(n-1-s)

    @classmethod
    def build(cls, n: int, p: Fraction) -> "BiasTables":
        a, b = p.numerator, p.denominator
        c = b - a
        return cls(
            n=n,
            a=a,
            b=b,
            point_weights=tuple(a**w * c ** (n - w) for w in range(n + 1)),
            edge_weights=tuple(a**s * c ** (n - 1 - s) for s in range(n)),
        )

    def mu_numerator(self, table: int) -> int:
        masks = popcount_class_masks(self.n)
        return sum(
            (table & masks[w]).bit_count() * wt
            for w, wt in enumerate(self.point_weights)
        )

    def influence_numerator(self, table: int) -> int:
        masks = popcount_class_masks(self.n)
        total = 0
        for bit in range(self.n):
            d = (table ^ (table >> (1 << bit))) & low_half_mask(self.n, bit)
            for s, wt in enumerate(self.edge_weights):
                c = (d & masks[s]).bit_count()
                if c:
                    total += c * wt
        return total

    def epsilon(self, table: int):
        """The excess of the table at p, as an mpf (0 for the empty family)."""
        mu_num = self.mu_numerator(table)
        if mu_num == 0:
            return mp.mpf(0)
        i_num = self.influence_numerator(table)
        with mp.workprec(PREC):
            # p*I/mu = a*I_num/mu_num exactly; log_p(mu) = ln(mu)/ln(p)
            ratio = to_mpf(Fraction(self.a * i_num, mu_num))
            log_mu = ln(Fraction(mu_num, self.b**self.n)) / ln(Fraction(self.a, self.b))
            return ratio - log_mu


def _chunks(total: int, pieces: int) -> list[tuple[int, int]]:
    step = -(-total // pieces)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


# ---------------------------------------------------------------------------
# weak biased inequality sweep
# ---------------------------------------------------------------------------

@dataclass
class WeakSweepResult:
    cases: int = 0
    violations: int = 0
    min_epsilon: float = float("inf")
    max_abs_epsilon_equality: float = 0.0


def _weak_chunk(n: int, p: Fraction, lo: int, hi: int, tol: float) -> tuple[int, int, float]:
    tables = BiasTables.build(n, p)
    violations = 0
    min_eps = float("inf")
    for t in range(lo, hi):
        eps = float(tables.epsilon(t))
        if eps < min_eps:
            min_eps = eps
        if eps < -tol:
            violations += 1
    return hi - lo, violations, min_eps


def _equality_candidates(n: int) -> list[int]:
    # constants plus indicators of monotone increasing subcubes
    out = {0}
    for c in enumerate_subcubes(n):
        if c.is_monotone_increasing():
            out.add(subcube_indicator(c).table)
    return sorted(out)


def weak_sweep(
    n: int,
    p: Fraction,
    scope: str = "all",
    tol: float = DEFAULT_TOL,
    jobs: int = 1,
    tables_iter=None,
) -> WeakSweepResult:
    """Check epsilon >= -tol across a scope of functions.

    scope "all" walks every truth table (guarded to n <= 4), "monotone"
    every monotone function (n <= 5); `tables_iter` overrides the scope with
    an explicit iterable of truth tables.  Also reports the worst |epsilon|
    over the equality candidates (constants and monotone subcubes), which
    measures how sharply the scan pins the equality cases.
    """
    result = WeakSweepResult()
    bias = BiasTables.build(n, p)
    if tables_iter is None:
        if scope == "all":
            if n > 4:
                raise ValueError("scope 'all' is guarded to n <= 4")
            total = 1 << (1 << n)
            if jobs > 1 and total >= PARALLEL_THRESHOLD:
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    parts = [
                        pool.submit(_weak_chunk, n, p, lo, hi, tol)
                        for lo, hi in _chunks(total, jobs * 4)
                    ]
                    for part in parts:
                        cases, violations, min_eps = part.result()
                        result.cases += cases
                        result.violations += violations
                        result.min_epsilon = min(result.min_epsilon, min_eps)
            else:
                cases, violations, min_eps = _weak_chunk(n, p, 0, total, tol)
                result.cases, result.violations, result.min_epsilon = cases, violations, min_eps
        elif scope == "monotone":
            if n > 5:
                raise ValueError("scope 'monotone' is guarded to n <= 5")
            tables_iter = monotone_tables(n)
        else:
            raise ValueError(f"unknown scope {scope!r}")
    if tables_iter is not None:
        for t in tables_iter:
            eps = float(bias.epsilon(t))
            result.cases += 1
            result.min_epsilon = min(result.min_epsilon, eps)
            if eps < -tol:
                result.violations += 1
    for t in _equality_candidates(n):
        result.max_abs_epsilon_equality = max(
            result.max_abs_epsilon_equality, abs(float(bias.epsilon(t)))
        )
    return result


# ---------------------------------------------------------------------------
# full inequality sweep (uniform measure)
# ---------------------------------------------------------------------------

@dataclass
class FullIsoSweepResult:
    cases: int
    violations: int
    oracle_matches: bool  # brute-force minima equal the lexicographic boundaries


def _uniform_boundary(n: int, table: int) -> int:
    total = 0
    for bit in range(n):
        total += ((table ^ (table >> (1 << bit))) & low_half_mask(n, bit)).bit_count()
    return total


def full_iso_sweep(n: int) -> FullIsoSweepResult:
    """Exhaustively compare every family's boundary against the lex family."""
    if n > 4:
        raise ValueError("exhaustive full-inequality sweep is guarded to n <= 4")
    lex_boundary = [_uniform_boundary(n, lex_family(n, m).table) for m in range((1 << n) + 1)]
    violations = 0
    minima = [None] * ((1 << n) + 1)
    total = 1 << (1 << n)
    for t in range(total):
        b = _uniform_boundary(n, t)
        size = t.bit_count()
        if b < lex_boundary[size]:
            violations += 1
        if minima[size] is None or b < minima[size]:
            minima[size] = b
    return FullIsoSweepResult(
        cases=total,
        violations=violations,
        oracle_matches=(minima == lex_boundary),
    )


# ---------------------------------------------------------------------------
# Kruskal-Katona sweep
# ---------------------------------------------------------------------------

@dataclass
class KKSweepResult:
    cases: int
    violations: int


def kk_sweep(n: int, k: int) -> KKSweepResult:
    """|upper shadow| >= lex minimum, over every family of k-sets of [n]."""
    if k >= n:
        raise ValueError("need k < n")
    ground = [sum(1 << (i - 1) for i in c) for c in combinations(range(1, n + 1), k)]
    if len(ground) > 20:
        raise ValueError("exhaustive shadow sweep needs C(n,k) <= 20")
    minima = [kk_min_upper_shadow(n, k, m) for m in range(len(ground) + 1)]
    violations = 0
    for pick in range(1 << len(ground)):
        members = frozenset(g for j, g in enumerate(ground) if (pick >> j) & 1)
        fam = KUniformFamily(n, k, members)
        if len(upper_shadow(fam)) < minima[len(members)]:
            violations += 1
    return KKSweepResult(cases=1 << len(ground), violations=violations)


# ---------------------------------------------------------------------------
# Margulis-Russo sweep
# ---------------------------------------------------------------------------

@dataclass
class RussoSweepResult:
    cases: int
    violations: int


def russo_sweep(n: int) -> RussoSweepResult:
    """Zero residual polynomial for every monotone family, exactly."""
    violations = 0
    tables = monotone_tables(n)
    for t in tables:
        if not measure.margulis_russo_residual(BooleanFunction(n, t)).is_zero():
            violations += 1
    return RussoSweepResult(cases=len(tables), violations=violations)


# ---------------------------------------------------------------------------
# monotone full-inequality sweep
# ---------------------------------------------------------------------------

@dataclass
class MonotoneFullSweepResult:
    cases: int
    violations: int
    inexact: int  # cases where the digit solver hit the depth cap
    max_tail: float = 0.0


def monotone_full_sweep(n: int, p: Fraction, depth: int = 64) -> MonotoneFullSweepResult:
    if n > 5:
        raise ValueError("monotone enumeration is guarded to n <= 5")
    violations = inexact = 0
    max_tail = Fraction(0)
    tables = monotone_tables(n)
    for t in tables:
        res = iso.monotone_full_check(BooleanFunction(n, t), p, depth)
        if not res.ok:
            violations += 1
        if res.residual != 0:
            inexact += 1
            max_tail = max(max_tail, res.tail)
    return MonotoneFullSweepResult(
        cases=len(tables), violations=violations, inexact=inexact, max_tail=float(max_tail)
    )


# ---------------------------------------------------------------------------
# stability sweep
# ---------------------------------------------------------------------------

@dataclass
class StabilitySweepResult:
    cases: int = 0
    eligible: int = 0
    max_ratio: float = 0.0
    argmax_table: Optional[int] = None
    argmax_subcube: Optional[str] = None
    max_delta: float = 0.0


def _mu_numerator_table(n: int, p: Fraction) -> list[int]:
    """mu numerators for every truth table on n coordinates (n <= 4)."""
    weights = BiasTables.build(n, p).point_weights
    w_of_index = [weights[k.bit_count()] for k in range(1 << n)]
    out = [0] * (1 << (1 << n))
    for t in range(1, len(out)):
        low = t & -t
        out[t] = out[t ^ low] + w_of_index[low.bit_length() - 1]
    return out


def _stability_chunk(
    n: int,
    p: Fraction,
    lo: int,
    hi: int,
    eps_max: float,
    tol: float,
    monotone_only: bool = False,
) -> StabilitySweepResult:
    bias = BiasTables.build(n, p)
    mu_table = _mu_numerator_table(n, p)
    cube_tables = [
        subcube_indicator(c).table
        for c in enumerate_subcubes(n)
        if not monotone_only or c.is_monotone_increasing()
    ]
    res = StabilitySweepResult()
    with mp.workprec(PREC):
        ln_inv_p = -ln(p)
        for t in range(lo, hi):
            res.cases += 1
            mu_num = mu_table[t]
            if mu_num == 0:
                continue
            eps_prime = bias.epsilon(t) * ln_inv_p
            # below tol the excess is numerically an equality case (ratio 0)
            if not tol < eps_prime <= eps_max:
                continue
            res.eligible += 1
            best = min(mu_table[t ^ ct] for ct in cube_tables)
            delta = to_mpf(Fraction(best, mu_num))
            ratio = float(delta * (-mp.ln(eps_prime)) / eps_prime)
            if ratio > res.max_ratio:
                res.max_ratio = ratio
                res.argmax_table = t
                res.max_delta = float(delta)
    return res


def stability_sweep(
    n: int,
    p: Fraction,
    eps_max: float,
    tol: float = DEFAULT_TOL,
    jobs: int = 1,
    monotone_only: bool = False,
) -> StabilitySweepResult:
    """Scan delta*ln(1/eps')/eps' over every function with 0 < eps' <= eps_max.

    The maximum is the empirical witness for the constant in the stability
    conclusion; no bound on it is asserted, only reported.  With
    monotone_only the nearest-subcube minimization runs over monotone
    increasing subcubes only.
    """
    if n > 4:
        raise ValueError("stability sweep is guarded to n <= 4")
    total = 1 << (1 << n)
    merged = StabilitySweepResult()
    if jobs > 1 and total >= PARALLEL_THRESHOLD:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = [
                pool.submit(_stability_chunk, n, p, lo, hi, eps_max, tol, monotone_only)
                for lo, hi in _chunks(total, jobs * 4)
            ]
            for part in parts:
                piece = part.result()
                merged.cases += piece.cases
                merged.eligible += piece.eligible
                if piece.max_ratio > merged.max_ratio:
                    merged.max_ratio = piece.max_ratio
                    merged.argmax_table = piece.argmax_table
                    merged.max_delta = piece.max_delta
    else:
        merged = _stability_chunk(n, p, 0, total, eps_max, tol, monotone_only)
    if merged.argmax_table is not None:
        rec = iso.nearest_subcube(
            BooleanFunction(n, merged.argmax_table), p, monotone_only=monotone_only
        )
        merged.argmax_subcube = str(rec.best_subcube)
    return merged
