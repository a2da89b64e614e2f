"""Isoperimetric checkers: deficits, restrictions, stability, sharpness.

The quantities compared here are of two kinds.  Edge counts, measures,
influences and symmetric differences are exact rationals, so the full
inequality (boundary of any family vs. the lexicographic family of the same
size) and the monotone biased version are decided with zero tolerance.  The
weak biased inequality p*I >= mu*log_p(mu) and everything derived from it
(the excess epsilon, the restriction excesses, the stability ratio) involve
logarithms; those are evaluated at high precision and compared against a
single tolerance, with the convention "holds" <=> slack >= -tol.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, inf
from typing import Optional

from mpmath import mp

from . import analysis, lex, measure
from ._real import DEFAULT_TOL, PREC, deficit_parts, epsilon_of, ln, to_mpf
from .cube import (
    BooleanFunction,
    HypothesisError,
    Subcube,
    Sym,
    enumerate_subcubes,
    is_monotone,
    low_half_mask,
    restrict,
    subcube_indicator,
)
from .lex import BinaryExpansion, lambda_from_measure, lex_family, limit_lex_influence, limit_lex_measure


# ---------------------------------------------------------------------------
# the weak biased inequality and its excess
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeficitReport:
    """Both sides of p*I >= mu*log_p(mu) plus the normalized excess.

    epsilon satisfies p*I = mu*(log_p(mu) + epsilon); epsilon_prime is
    epsilon*ln(1/p).  `advisory` marks the one regime (p > 1/2, f not
    monotone) where the inequality is not claimed and epsilon may be negative.
    """

    mu: Fraction
    total_influence: Fraction
    lhs: float
    rhs: float
    epsilon: float
    epsilon_prime: float
    advisory: bool = False


def weak_biased_check(f: BooleanFunction, p: Fraction) -> DeficitReport:
    """Evaluate the weak biased edge-isoperimetric comparison for f at p."""
    m = measure.mu(f, p)
    infl = measure.total_influence(f, p)
    lhs, rhs, eps, eps_prime = deficit_parts(m, infl, p)
    advisory = p > Fraction(1, 2) and not is_monotone(f)
    return DeficitReport(
        mu=m,
        total_influence=infl,
        lhs=float(lhs),
        rhs=float(rhs),
        epsilon=float(eps),
        epsilon_prime=float(eps_prime),
        advisory=advisory,
    )


# ---------------------------------------------------------------------------
# restriction bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RestrictionStats:
    """Exact restriction data at one coordinate plus the excess identity.

    The split identities are exact in rationals:
        p*mu_plus + (1-p)*mu_minus = mu
        I = I_i + p*inf_plus + (1-p)*inf_minus
    and the excess of f decomposes through
        eps_i' = mu*eps - p*mu_plus*eps_plus - (1-p)*mu_minus*eps_minus,
    which equals F(mu_plus, mu_minus) - G(...) + p*(I_i - (mu_plus - mu_minus))
    when mu_minus <= mu_plus, and the H-G variant with |difference| reversed
    otherwise.  identity_residual reports how far the evaluated sides are
    apart (rounding only).
    """

    i: int
    mu_minus: Fraction
    mu_plus: Fraction
    inf_i: Fraction
    inf_minus: Fraction
    inf_plus: Fraction
    eps_minus: float
    eps_plus: float
    eps_i_prime: float
    identity_residual: float
    branch: str  # "FG" when mu_minus <= mu_plus, else "HG"


def restriction_stats(f: BooleanFunction, i: int, p: Fraction) -> RestrictionStats:
    """All restriction quantities of f at coordinate i, identity-checked."""
    if f.n < 2:
        raise ValueError("restriction stats need n >= 2")
    f0 = restrict(f, i, 0)
    f1 = restrict(f, i, 1)
    mu_minus = measure.mu(f0, p)
    mu_plus = measure.mu(f1, p)
    inf_minus = measure.total_influence(f0, p)
    inf_plus = measure.total_influence(f1, p)
    inf_i = measure.influence(f, i, p)
    m = measure.mu(f, p)
    infl = measure.total_influence(f, p)
    with mp.workprec(PREC):
        eps = epsilon_of(m, infl, p)
        eps_minus = epsilon_of(mu_minus, inf_minus, p)
        eps_plus = epsilon_of(mu_plus, inf_plus, p)
        eps_i_prime = (
            to_mpf(m) * eps
            - to_mpf(p * mu_plus) * eps_plus
            - to_mpf((1 - p) * mu_minus) * eps_minus
        )
        fval, gval, hval = analysis.eval_lemma_functions(mu_plus, mu_minus, p)
        if mu_minus <= mu_plus:
            branch = "FG"
            other = fval - gval + to_mpf(p) * to_mpf(inf_i - (mu_plus - mu_minus))
        else:
            branch = "HG"
            other = hval - gval + to_mpf(p) * to_mpf(inf_i - (mu_minus - mu_plus))
        residual = abs(eps_i_prime - other)
    return RestrictionStats(
        i=i,
        mu_minus=mu_minus,
        mu_plus=mu_plus,
        inf_i=inf_i,
        inf_minus=inf_minus,
        inf_plus=inf_plus,
        eps_minus=float(eps_minus),
        eps_plus=float(eps_plus),
        eps_i_prime=float(eps_i_prime),
        identity_residual=float(residual),
        branch=branch,
    )


# ---------------------------------------------------------------------------
# per-coordinate dichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateCase:
    """Dichotomy classification of one coordinate at a given constant c2."""

    i: int
    case: str  # "case1" | "case2" | "neither"
    min_c2: float  # smallest c2 at which one of the cases holds
    influence: Fraction
    mu_minus: Fraction
    mu_plus: Fraction
    eps_i_prime: float


def _needed(numerator, denominator) -> float:
    """Smallest c with numerator <= c * denominator (nonneg. quantities)."""
    if numerator <= 0:
        return 0.0
    if denominator <= 0:
        return inf
    return float(numerator / denominator)


def coordinate_dichotomy(
    f: BooleanFunction, p: Fraction, c2: float, tol: float = DEFAULT_TOL
) -> tuple[str, list[CoordinateCase]]:
    """Classify every coordinate as low-influence or near-fixed.

    A coordinate of a low-excess function should behave like a coordinate of
    a subcube: either its influence is controlled by its excess share eps_i'
    while both restriction measures stay near mu (case 1), or one restriction
    measure is controlled by eps_i' while the coordinate carries almost all
    of mu as influence (case 2).  The regime picks the claimed form: monotone
    f compares p*I_i against c2*eps_i'*ln(1/p) and watches mu_minus (valid
    for any p bounded away from 1); a general f uses the same form for
    p <= e^-2 and the unscaled I_i-vs-c2*eps_i' form with min(mu_minus,
    mu_plus) for e^-2 < p <= 1/2; for p > 1/2 on non-monotone input nothing
    is claimed and a ValueError is raised.  Each classification also carries
    the minimal c2 that would have sufficed (inf when no constant can work),
    so sweeps can report the empirical universal constant.
    """
    if c2 <= 0:
        raise ValueError("c2 must be positive")
    if is_monotone(f):
        regime = "monotone"
    elif float(p) <= exp(-2):
        regime = "small_p"
    elif p <= Fraction(1, 2):
        regime = "mid_p"
    else:
        raise ValueError("no dichotomy is claimed for p > 1/2 on non-monotone functions")
    m = measure.mu(f, p)
    out = []
    with mp.workprec(PREC):
        eps = max(epsilon_of(m, measure.total_influence(f, p), p), mp.mpf(0))
        ln_inv_p = -ln(p)
        mm = to_mpf(m)
        for i in range(1, f.n + 1):
            stats = restriction_stats(f, i, p)
            epi = max(to_mpf(stats.eps_i_prime), mp.mpf(0))
            if regime == "mid_p":
                infl_term = to_mpf(stats.inf_i)
                edge_term = to_mpf(min(stats.mu_minus, stats.mu_plus))
                budget = epi
                shrink = eps * mm
            else:
                infl_term = to_mpf(p * stats.inf_i)
                edge_term = to_mpf(stats.mu_minus)
                budget = epi * ln_inv_p
                shrink = eps * ln_inv_p * mm
            case1_need = max(
                _needed(infl_term - tol, budget),       # influence <= c2 * budget
                _needed(mm - edge_term - tol, shrink),  # restrictions keep the measure
            )
            case2_need = max(
                _needed(edge_term - tol, budget),       # one restriction is tiny
                _needed(mm - infl_term - tol, shrink),  # influence carries the measure
            )
            if case1_need <= c2:
                case = "case1"
            elif case2_need <= c2:
                case = "case2"
            else:
                case = "neither"
            out.append(
                CoordinateCase(
                    i=i,
                    case=case,
                    min_c2=min(case1_need, case2_need),
                    influence=stats.inf_i,
                    mu_minus=stats.mu_minus,
                    mu_plus=stats.mu_plus,
                    eps_i_prime=stats.eps_i_prime,
                )
            )
    return regime, out


# ---------------------------------------------------------------------------
# nearest subcube and the stability ratio
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilityRecord:
    """Best subcube approximation of f and the empirical stability constant.

    delta = mu_p(f delta 1_S) / mu_p(f) at the best S (exact rational);
    ratio = delta * ln(1/eps') / eps' when 0 < eps' < 1, 0 for exact
    subcubes/constants, and None when eps' >= 1 (the bound is vacuous).
    """

    best_subcube: Subcube
    delta: Fraction
    epsilon_prime: float
    ratio: Optional[float]
    tie_count: int = 1


def _sym_diff_measure(f: BooleanFunction, c: Subcube, p: Fraction) -> Fraction:
    ind = subcube_indicator(c)
    return measure.mu(BooleanFunction(f.n, f.table ^ ind.table), p)


def nearest_subcube(
    f: BooleanFunction, p: Fraction, monotone_only: bool = False
) -> StabilityRecord:
    """Exhaustively minimize mu_p(f delta 1_S) over subcubes S.

    Scans all 3^n subcubes (or the 2^n monotone increasing ones under the
    flag).  Ties are broken toward fewer fixed coordinates, then the
    lexicographically smallest pattern under ZERO < ONE < FREE, making the
    reported subcube deterministic.  Requires mu_p(f) > 0.
    """
    m = measure.mu(f, p)
    if m == 0:
        raise ValueError("nearest_subcube requires a function of positive measure")
    best = None
    best_key = None
    min_sym = None
    ties = 0
    for c in enumerate_subcubes(f.n):
        if monotone_only and not c.is_monotone_increasing():
            continue
        sym = _sym_diff_measure(f, c, p)
        if min_sym is None or sym < min_sym:
            min_sym, ties = sym, 1
        elif sym == min_sym:
            ties += 1
        key = (sym, c.fixed_count, tuple(int(s) for s in c.pattern))
        if best_key is None or key < best_key:
            best, best_key = c, key
    delta = min_sym / m
    eps_prime = to_mpf(weak_biased_check(f, p).epsilon_prime)
    ratio = _stability_ratio_value(delta, eps_prime)
    return StabilityRecord(
        best_subcube=best,
        delta=delta,
        epsilon_prime=float(eps_prime),
        ratio=ratio,
        tie_count=ties,
    )


def _stability_ratio_value(delta: Fraction, eps_prime) -> Optional[float]:
    with mp.workprec(PREC):
        ep = to_mpf(eps_prime)
        if ep < mp.mpf(1e-15):
            # equality case: the conclusion is exact, the ratio is defined as 0
            return 0.0
        if ep >= 1:
            return None
        return float(to_mpf(delta) * (-mp.ln(ep)) / ep)


def stability_ratio(f: BooleanFunction, p: Fraction) -> StabilityRecord:
    """Nearest subcube together with the witness ratio delta*ln(1/eps')/eps'."""
    return nearest_subcube(f, p, monotone_only=False)


# ---------------------------------------------------------------------------
# the full (lexicographic) inequality, uniform measure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FullIsoResult:
    boundary: int
    lex_boundary: int
    ok: bool


def full_iso_check(f: BooleanFunction) -> FullIsoResult:
    """Compare |edge boundary of f| against the lexicographic family of equal size."""
    b = measure.boundary_size(f)
    lb = measure.boundary_size(lex_family(f.n, f.count))
    return FullIsoResult(boundary=b, lex_boundary=lb, ok=b >= lb)


_BRUTE_FORCE_MAX_N = 4


def _min_boundary_by_size(n: int) -> list[int]:
    best = [None] * ((1 << n) + 1)
    for t in range(1 << (1 << n)):
        c = measure.boundary_size(BooleanFunction(n, t)) if t else 0
        size = t.bit_count()
        if best[size] is None or c < best[size]:
            best[size] = c
    return best


_brute_cache: dict[int, list[int]] = {}


def brute_force_min_boundary(n: int, m: int) -> int:
    """Exact minimum of |edge boundary| over all families of m points.

    Pure enumeration of all 2^(2^n) truth tables, independent of the
    lexicographic construction; guarded to n <= 4.
    """
    if n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force enumeration is guarded to n <= {_BRUTE_FORCE_MAX_N}")
    if not 0 <= m <= 1 << n:
        raise ValueError(f"family size {m} out of range [0, 2^{n}]")
    if n not in _brute_cache:
        _brute_cache[n] = _min_boundary_by_size(n)
    return _brute_cache[n][m]


# ---------------------------------------------------------------------------
# monotone full inequality (biased measure)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneFullResult:
    """I^p(f) against the limit lexicographic family of equal measure."""

    lhs: Fraction  # total influence of f
    rhs: Fraction  # influence of the lexicographic family at the solved digits
    tail: Fraction  # bound on the influence not captured by the truncation
    ok: bool
    expansion: BinaryExpansion
    residual: Fraction  # measure left unmatched by the truncated expansion


def monotone_full_check(
    f: BooleanFunction, p: Fraction, depth: int = lex.DEFAULT_DEPTH
) -> MonotoneFullResult:
    """Check I^p(f) >= I^p(lex family of the same measure) for monotone f.

    The digit solver matches mu_p(f) exactly when it terminates (residual 0,
    tail 0: the comparison is exact rational); otherwise the comparison
    allows the rigorous tail bound of the truncated influence.
    """
    if not is_monotone(f):
        raise ValueError("monotone_full_check requires a monotone function")
    m = measure.mu(f, p)
    if m == 0 or m == 1:
        # constants: no expansion matches measure 0 or 1, and influence 0 is optimal
        zero = Fraction(0)
        return MonotoneFullResult(
            measure.total_influence(f, p), zero, zero, True, BinaryExpansion((1,)), zero
        )
    expansion, residual = lambda_from_measure(m, p, depth)
    value, tail = limit_lex_influence(expansion, p)
    lhs = measure.total_influence(f, p)
    return MonotoneFullResult(
        lhs=lhs,
        rhs=value,
        tail=tail,
        ok=lhs >= value - tail,
        expansion=expansion,
        residual=residual,
    )


def lex_measure_domination_check(
    f: BooleanFunction, b: BinaryExpansion, p: Fraction, q: Fraction
) -> bool:
    """Monotone measure domination transfers downward in the bias.

    Hypotheses (HypothesisError when violated): f monotone increasing and
    mu_p(f) <= mu_p(L) for the family L spanned by the digits of b.  The
    parameters must satisfy 0 < q < p < 1 (ValueError otherwise).  Returns
    whether mu_q(f) <= mu_q(L).
    """
    measure._check_p(p)
    measure._check_p(q)
    if not q < p:
        raise ValueError(f"need q < p, got q={q}, p={p}")
    if not is_monotone(f):
        raise HypothesisError("domination check requires a monotone function")
    value_p, _ = limit_lex_measure(b, p)
    if measure.mu(f, p) > value_p:
        raise HypothesisError("mu_p(f) already exceeds the lexicographic measure at p")
    value_q, _ = limit_lex_measure(b, q)
    return measure.mu(f, q) <= value_q


# ---------------------------------------------------------------------------
# monotonization
# ---------------------------------------------------------------------------

def monotonize_step(f: BooleanFunction, i: int) -> BooleanFunction:
    """Shift every 1-point with x_i = 0 up to x xor e_i when that slot is free."""
    if not 1 <= i <= f.n:
        raise ValueError(f"coordinate {i} out of range [1, {f.n}]")
    bit = i - 1
    w = 1 << bit
    movers = f.table & ~(f.table >> w) & low_half_mask(f.n, bit)
    return BooleanFunction(f.n, (f.table ^ movers) | (movers << w))


def monotonize(f: BooleanFunction) -> BooleanFunction:
    """Apply the up-shifts for i = n down to 1, repeating until stable.

    One pass already produces a monotone family; the fixed-point loop is a
    cheap safety net (it terminates because each productive step strictly
    increases the total Hamming weight of the 1-set).
    """
    g = f
    while True:
        prev = g
        for i in range(g.n, 0, -1):
            g = monotonize_step(g, i)
        if g == prev:
            return g


# ---------------------------------------------------------------------------
# sharpness families
# ---------------------------------------------------------------------------

def _conjunction_table(n: int, fixed: dict[int, int]) -> int:
    pattern = tuple(
        Sym.FREE if i not in fixed else (Sym.ONE if fixed[i] else Sym.ZERO)
        for i in range(1, n + 1)
    )
    return subcube_indicator(Subcube(n, pattern)).table


def _check_family_params(n: int, t: int, s: int) -> None:
    if s < 2 or t < 1:
        raise ValueError("need s >= 2 and t >= 1")
    if n < t + s:
        raise ValueError(f"need n >= t + s = {t + s}, got {n}")


def family_A(n: int, t: int, s: int) -> BooleanFunction:
    """Non-monotone family of measure p^t witnessing the stability rate.

    Start from the subcube {x_1 = ... = x_t = 1}, remove its slice with
    x_(t+2), ..., x_(t+s) forced to 1 and x_(t+1) to 0, and add the
    equal-measure slice obtained by flipping the roles of x_t and x_(t+1).
    The measure stays p^t while every subcube is left at relative symmetric
    difference at least 2(1-p)p^(s-1).
    """
    _check_family_params(n, t, s)
    block = _conjunction_table(n, {i: 1 for i in range(1, t + 1)})
    added = _conjunction_table(
        n, {**{i: 1 for i in range(1, t + s + 1) if i != t}, t: 0}
    )
    removed = _conjunction_table(
        n, {**{i: 1 for i in range(1, t + s + 1) if i != t + 1}, t + 1: 0}
    )
    return BooleanFunction(n, (block | added) & ~removed)


def family_B(n: int, t: int, s: int) -> BooleanFunction:
    """Monotone variant of family_A: the block plus the added slice only.

    Measure p^t (1 + (1-p) p^(s-1)); stays monotone increasing and witnesses
    the same stability rate in the monotone regime.
    """
    _check_family_params(n, t, s)
    block = _conjunction_table(n, {i: 1 for i in range(1, t + 1)})
    added = _conjunction_table(
        n, {**{i: 1 for i in range(1, t + s + 1) if i != t}, t: 0}
    )
    return BooleanFunction(n, block | added)
