"""Grid scans of the real-valued functions behind the inductive estimates.

The two-point entropy-style functions
    F(x,y) = p*x*log_p(x) + (1-p)*y*log_p(y) + p*x - p*y
    G(x,y) = (p*x + (1-p)*y) * log_p(p*x + (1-p)*y)
    H(x,y) = p*x*log_p(x) + (1-p)*y*log_p(y) + p*y - p*x
satisfy F >= G on x >= y >= 0 (all p), H >= G on y >= x >= 0 when p <= 1/2,
and sharper lower bounds on F-G and H-G involving log ratios, with
K(p) = p - (1-p)*log_p(1-p) and alpha(p) = K(p)*ln(1/p) controlling the
constants.  This module evaluates them at high precision and verifies the
inequalities and the stated partial derivatives at configurable resolution;
it checks, it does not prove.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp

from mpmath import mp

from ._real import DEFAULT_TOL, PREC, Real, ln, to_mpf, xlogp


@dataclass(frozen=True)
class LemmaPoint:
    """A grid point (x, y) with bias p, all as floats for reporting."""

    x: float
    y: float
    p: float


@dataclass(frozen=True)
class Violation:
    """A grid point where a scanned inequality had slack below -tol."""

    branch: str
    point: LemmaPoint
    slack: float
    advisory: bool = False


def _one_minus(p: Real):
    return 1 - p if isinstance(p, (Fraction, int)) else 1 - to_mpf(p)


def _fgh(x: Real, y: Real, p: Real):
    # assumes an enclosing workprec block
    pm = to_mpf(p)
    if isinstance(x, Fraction) and isinstance(y, Fraction) and isinstance(p, Fraction):
        mix = p * x + (1 - p) * y  # exact, so its log is cacheable
    else:
        mix = pm * to_mpf(x) + (1 - pm) * to_mpf(y)
    base = pm * xlogp(x, p) + (1 - pm) * xlogp(y, p)
    d = pm * (to_mpf(x) - to_mpf(y))
    return base + d, xlogp(mix, p), base - d


def eval_lemma_functions(x: Real, y: Real, p: Real):
    """(F, G, H) at (x, y), using the 0*log(0) = 0 convention on the axes."""
    with mp.workprec(PREC):
        f, g, h = _fgh(x, y, p)
        return f, g, h


def eval_K(p: Real):
    """K(p) = p - (1-p)*log_p(1-p)."""
    with mp.workprec(PREC):
        pm = to_mpf(p)
        return pm - (1 - pm) * ln(_one_minus(p)) / ln(p)


def eval_alpha(p: Real):
    """alpha(p) = K(p)*ln(1/p) = -p*ln(p) + (1-p)*ln(1-p)."""
    with mp.workprec(PREC):
        pm = to_mpf(p)
        return -pm * ln(p) + (1 - pm) * ln(_one_minus(p))


def alpha_third_derivative(x: Real):
    """alpha'''(x) = 1/x^2 - 1/(1-x)^2, positive on (0, 1/2)."""
    with mp.workprec(PREC):
        xm = to_mpf(x)
        return 1 / xm**2 - 1 / (1 - xm) ** 2


def _grid(grid_size: int) -> list[Fraction]:
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    return [Fraction(i, grid_size - 1) for i in range(grid_size)]


def scan_lemma21(p: Fraction, grid_size: int, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Scan F >= G on x >= y and H >= G on y >= x over a uniform grid.

    The H >= G branch is only claimed for p <= 1/2; for larger p it is still
    scanned but its violations come back flagged advisory.
    """
    gridvals = _grid(grid_size)
    h_advisory = p > Fraction(1, 2)
    out = []
    with mp.workprec(PREC):
        for x in gridvals:
            for y in gridvals:
                f, g, h = _fgh(x, y, p)
                if x >= y:
                    slack = f - g
                    if slack < -tol:
                        out.append(
                            Violation("F>=G", LemmaPoint(float(x), float(y), float(p)), float(slack))
                        )
                if y >= x:
                    slack = h - g
                    if slack < -tol:
                        out.append(
                            Violation(
                                "H>=G",
                                LemmaPoint(float(x), float(y), float(p)),
                                float(slack),
                                advisory=h_advisory,
                            )
                        )
    return out


def scan_basic_functions(p: Fraction, grid_size: int, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Scan the sharper lower bounds on F-G and H-G on their admissible grids.

    Branch 1 (all p, x >= y):    F-G >= p*(x-y)*log_p(p*x / (p*x+(1-p)*y))
    Branch 2 (p <= 1/2, y >= x): H-G >= (1-p)*(y-x)*log_p((1-p)*y / (p*x+(1-p)*y))
    Branch 3 (p <= e^-2, y >= x): H-G >= p*(y-x)/2
    Branches whose p-condition fails are skipped (nothing is claimed there).
    """
    gridvals = _grid(grid_size)
    do_branch2 = p <= Fraction(1, 2)
    do_branch3 = float(p) <= exp(-2)
    out = []
    with mp.workprec(PREC):
        pm = to_mpf(p)
        for x in gridvals:
            for y in gridvals:
                f, g, h = _fgh(x, y, p)
                mix = p * x + (1 - p) * y
                if x >= y:
                    if x == y or mix == 0:
                        rhs = mp.mpf(0)
                    else:
                        rhs = pm * to_mpf(x - y) * (ln(p * x) - ln(mix)) / ln(p)
                    slack = (f - g) - rhs
                    if slack < -tol:
                        out.append(
                            Violation("F-G lower", LemmaPoint(float(x), float(y), float(p)), float(slack))
                        )
                if y >= x:
                    if do_branch2:
                        if y == x or mix == 0:
                            rhs = mp.mpf(0)
                        else:
                            rhs = (1 - pm) * to_mpf(y - x) * (ln((1 - p) * y) - ln(mix)) / ln(p)
                        slack = (h - g) - rhs
                        if slack < -tol:
                            out.append(
                                Violation("H-G lower", LemmaPoint(float(x), float(y), float(p)), float(slack))
                            )
                    if do_branch3:
                        slack = (h - g) - pm * to_mpf(y - x) / 2
                        if slack < -tol:
                            out.append(
                                Violation("H-G gap", LemmaPoint(float(x), float(y), float(p)), float(slack))
                            )
    return out


# ---------------------------------------------------------------------------
# derivative checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartialsReport:
    """Finite-difference audit of the closed-form partial derivatives."""

    max_error: float            # max |closed form - central difference|
    min_fx_minus_gx: float      # min of dF/dx - dG/dx over the grid
    min_alpha_third: float      # min of alpha''' over the (0, 1/2) grid
    points_checked: int


def _partials_closed(x, y, p):
    # assumes an enclosing workprec block; x, y interior (> 0)
    lp = ln(p)
    pm = to_mpf(p)
    mix = p * x + (1 - p) * y
    fx = pm * ln(x) / lp + pm / lp + pm
    gx = pm * ln(mix) / lp + pm / lp
    hy = (1 - pm) * ln(y) / lp + pm + (1 - pm) / lp
    gy = (1 - pm) * ln(mix) / lp + (1 - pm) / lp
    return fx, gx, hy, gy


def check_partials(p: Fraction, grid_size: int) -> PartialsReport:
    """Compare the closed-form partials of F, G, H against central differences.

    Uses step 1e-6 on an interior grid (the closed forms blow up on the
    axes); also audits dF/dx >= dG/dx and the positivity of alpha''' on
    (0, 1/2).  The contract used by the acceptance suite is max_error <= 1e-5.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    with mp.workprec(PREC):
        hstep = mp.mpf("1e-6")
        max_err = mp.mpf(0)
        min_gap = mp.inf
        checked = 0
        interior = [Fraction(i + 1, grid_size + 1) for i in range(grid_size)]
        for x in interior:
            for y in interior:
                fx, gx, hy, gy = _partials_closed(x, y, p)
                xm, ym = to_mpf(x), to_mpf(y)
                f_hi, g_hi, _ = _fgh(xm + hstep, ym, p)
                f_lo, g_lo, _ = _fgh(xm - hstep, ym, p)
                _, g_hi2, h_hi = _fgh(xm, ym + hstep, p)
                _, g_lo2, h_lo = _fgh(xm, ym - hstep, p)
                num = [
                    (f_hi - f_lo) / (2 * hstep),
                    (g_hi - g_lo) / (2 * hstep),
                    (h_hi - h_lo) / (2 * hstep),
                    (g_hi2 - g_lo2) / (2 * hstep),
                ]
                for closed, fd in zip((fx, gx, hy, gy), num):
                    err = abs(closed - fd)
                    if err > max_err:
                        max_err = err
                gap = fx - gx
                if gap < min_gap:
                    min_gap = gap
                checked += 1
        alpha_grid = [Fraction(i + 1, 2 * (grid_size + 1)) for i in range(grid_size)]
        min_a3 = min(alpha_third_derivative(x) for x in alpha_grid)
    return PartialsReport(float(max_err), float(min_gap), float(min_a3), checked)


def scan_K_lower_bound(points: int = 10_000) -> tuple[float, int]:
    """Check K(p) >= p/2 on a grid of the interval (0, e^-2].

    Returns (minimal slack K(p) - p/2 over the grid, points checked).
    """
    with mp.workprec(PREC):
        top = mp.e ** -2
        worst = mp.inf
        for i in range(1, points + 1):
            pv = top * i / points
            slack = eval_K(pv) - pv / 2
            if slack < worst:
                worst = slack
    return float(worst), points
