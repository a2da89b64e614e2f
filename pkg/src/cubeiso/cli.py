"""Command-line driver: verification campaigns with JSON reports.

Every subcommand prints a single JSON report object to stdout and a one-line
human summary to stderr, and exits 0 iff the check passed (advisory scans
always pass; usage and guard errors exit 2).  Reports are deterministic:
identical inputs give byte-identical JSON except for runtime_ms.

    cube-iso verify-weak    --n 4 --p 1/3 --scope all
    cube-iso full-iso       --n 3
    cube-iso kk             --n 5 --k 2
    cube-iso monotone-full  --n 4 --p 1/2 --depth 64
    cube-iso stability-scan --n 4 --p 1/4 --eps-max 0.2
    cube-iso sharpness      --t 2 --s 3 --p 1/4
    cube-iso lemma-scan     --p 1/3 --grid 200
    cube-iso russo          --n 4
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import exp

from mpmath import mp

from . import analysis, iso, lex, measure, sweeps
from ._real import DEFAULT_TOL, PREC, ln, to_mpf
from .cube import load_function


@dataclass
class Report:
    check_name: str
    parameters: dict = field(default_factory=dict)
    passed: bool = False
    counters: dict = field(default_factory=dict)
    extrema: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def parse_bias(text: str) -> Fraction:
    """Parse p given as "num/den" or as an exact finite decimal."""
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse bias {text!r} as an exact rational") from None
    if not 0 < p < 1:
        raise ValueError(f"bias must lie strictly between 0 and 1, got {text}")
    return p


def _fmt(value) -> str:
    """Serialize an exact rational as num/den."""
    fr = Fraction(value)
    return f"{fr.numerator}/{fr.denominator}"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify_weak(
    n: int | None,
    p: Fraction,
    scope: str = "all",
    input_path: str | None = None,
    tol: float = DEFAULT_TOL,
    jobs: int = 1,
) -> Report:
    report = Report(
        "verify_weak",
        parameters={"n": n, "p": _fmt(p), "scope": scope, "tol": tol},
    )
    if scope != "file" and n is None:
        raise ValueError(f"scope {scope!r} needs --n")
    if scope == "file":
        if input_path is None:
            raise ValueError("scope 'file' needs --input")
        f = load_function(input_path)
        report.parameters["n"] = f.n
        report.parameters["input"] = input_path
        dr = iso.weak_biased_check(f, p)
        violated = (not dr.advisory) and dr.epsilon < -tol
        report.counters = {
            "cases": 1,
            "violations": 1 if violated else 0,
            "advisory": 1 if dr.advisory else 0,
        }
        report.extrema = {"min_epsilon": dr.epsilon, "max_abs_epsilon_equality": 0.0}
        report.passed = not violated
        return report
    res = sweeps.weak_sweep(n, p, scope=scope, tol=tol, jobs=jobs)
    report.counters = {"cases": res.cases, "violations": res.violations}
    report.extrema = {
        "min_epsilon": res.min_epsilon,
        "max_abs_epsilon_equality": res.max_abs_epsilon_equality,
    }
    report.passed = res.violations == 0
    return report


def cmd_full_iso(n: int) -> Report:
    report = Report("full_iso", parameters={"n": n})
    res = sweeps.full_iso_sweep(n)
    report.counters = {
        "cases": res.cases,
        "violations": res.violations,
        "oracle_matches": int(res.oracle_matches),
    }
    report.passed = res.violations == 0 and res.oracle_matches
    return report


def cmd_kk(n: int, k: int) -> Report:
    report = Report("kk", parameters={"n": n, "k": k})
    res = sweeps.kk_sweep(n, k)
    report.counters = {"cases": res.cases, "violations": res.violations}
    report.passed = res.violations == 0
    return report


def cmd_monotone_full(n: int, p: Fraction, depth: int = lex.DEFAULT_DEPTH) -> Report:
    report = Report("monotone_full", parameters={"n": n, "p": _fmt(p), "depth": depth})
    res = sweeps.monotone_full_sweep(n, p, depth)
    report.counters = {
        "cases": res.cases,
        "violations": res.violations,
        "inexact": res.inexact,
    }
    report.extrema = {"max_tail": res.max_tail}
    report.passed = res.violations == 0
    return report


def cmd_stability_scan(
    n: int,
    p: Fraction,
    eps_max: float,
    tol: float = DEFAULT_TOL,
    jobs: int = 1,
    monotone_only: bool = False,
) -> Report:
    report = Report(
        "stability_scan",
        parameters={
            "n": n,
            "p": _fmt(p),
            "eps_max": eps_max,
            "tol": tol,
            "monotone_only": monotone_only,
        },
    )
    res = sweeps.stability_sweep(
        n, p, eps_max, tol=tol, jobs=jobs, monotone_only=monotone_only
    )
    report.counters = {"cases": res.cases, "eligible": res.eligible}
    report.extrema = {
        "max_ratio": res.max_ratio,
        "max_delta": res.max_delta,
        "argmax_table": res.argmax_table,
        "argmax_subcube": res.argmax_subcube,
    }
    report.passed = True  # advisory: the constant is measured, never asserted
    return report


def cmd_sharpness(t: int, s: int, p: Fraction) -> Report:
    """Exact sharpness table for the two-block family at (t, s, p).

    Verifies the closed forms mu = p^t, I = p^(t-1)(t + 2(s-1)(1-p)p^(s-1)),
    the excess eps = 2(s-1)(1-p)p^(s-1) (exact, since log_p(p^t) = t), the
    nearest-subcube distance delta = eps/(s-1), and the lower-bound line
    delta >= eps'/(2*ln(2/eps')).
    """
    n = t + s
    report = Report("sharpness", parameters={"t": t, "s": s, "p": _fmt(p), "n": n})
    f = iso.family_A(n, t, s)
    m = measure.mu(f, p)
    infl = measure.total_influence(f, p)
    mu_ok = m == p**t
    infl_ok = infl == p ** (t - 1) * (t + 2 * (s - 1) * (1 - p) * p ** (s - 1))
    eps = p * infl / m - t  # log_p(mu) = t exactly when mu = p^t
    eps_ok = eps == 2 * (s - 1) * (1 - p) * p ** (s - 1)
    rec = iso.nearest_subcube(f, p)
    delta_ok = rec.delta == eps / (s - 1)
    with mp.workprec(PREC):
        eps_prime = to_mpf(eps) * (-ln(p))
        ratio = to_mpf(rec.delta) * (-mp.ln(eps_prime)) / eps_prime
        lower = eps_prime / (2 * mp.ln(2 / eps_prime))
        bound_ok = to_mpf(rec.delta) >= lower - mp.mpf(DEFAULT_TOL)
    report.counters = {
        "mu_exact": int(mu_ok),
        "influence_exact": int(infl_ok),
        "epsilon_exact": int(eps_ok),
        "delta_exact": int(delta_ok),
        "lower_bound_holds": int(bound_ok),
    }
    report.extrema = {
        "mu": _fmt(m),
        "total_influence": _fmt(infl),
        "epsilon": _fmt(eps),
        "delta": _fmt(rec.delta),
        "epsilon_prime": float(eps_prime),
        "ratio": float(ratio),
        "delta_lower_bound": float(lower),
        "best_subcube": str(rec.best_subcube),
    }
    report.passed = mu_ok and infl_ok and eps_ok and delta_ok and bool(bound_ok)
    return report


def cmd_lemma_scan(p: Fraction, grid: int, tol: float = DEFAULT_TOL) -> Report:
    report = Report("lemma_scan", parameters={"p": _fmt(p), "grid": grid, "tol": tol})
    v21 = analysis.scan_lemma21(p, grid, tol)
    v31 = analysis.scan_basic_functions(p, grid, tol)
    contract = [v for v in v21 + v31 if not v.advisory]
    advisory = [v for v in v21 + v31 if v.advisory]
    partials = analysis.check_partials(p, max(grid // 4, 10))
    k_slack, k_points = analysis.scan_K_lower_bound()
    # K(p) >= 0 is claimed on (0, 1/2] only
    k_ok = p > Fraction(1, 2) or analysis.eval_K(p) >= -tol
    report.counters = {
        "grid_points": grid * grid,
        "violations": len(contract),
        "advisory_violations": len(advisory),
        "partials_points": partials.points_checked,
        "k_grid_points": k_points,
    }
    report.extrema = {
        "max_partial_error": partials.max_error,
        "min_fx_minus_gx": partials.min_fx_minus_gx,
        "min_alpha_third": partials.min_alpha_third,
        "min_k_slack": k_slack,
    }
    report.passed = (
        not contract
        and partials.max_error <= 1e-5
        and partials.min_fx_minus_gx >= -tol
        and partials.min_alpha_third > 0
        and k_slack >= -tol
        and k_ok
    )
    return report


def cmd_russo(n: int) -> Report:
    report = Report("russo", parameters={"n": n})
    res = sweeps.russo_sweep(n)
    report.counters = {"cases": res.cases, "violations": res.violations}
    report.passed = res.violations == 0
    return report


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cube-iso",
        description="Exact verification of biased edge-isoperimetric inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **flags) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name)
        if "n" in flags:
            cmd.add_argument("--n", type=int, required=flags["n"])
        if "p" in flags:
            cmd.add_argument("--p", type=parse_bias, required=flags["p"])
        return cmd

    c = add("verify-weak", n=False, p=True)
    c.add_argument("--scope", choices=("all", "monotone", "file"), default="all")
    c.add_argument("--input", default=None)
    add("full-iso", n=True)
    c = add("kk", n=True)
    c.add_argument("--k", type=int, required=True)
    c = add("monotone-full", n=True, p=True)
    c.add_argument("--depth", type=int, default=lex.DEFAULT_DEPTH)
    c = add("stability-scan", n=True, p=True)
    c.add_argument("--eps-max", type=float, default=0.2)
    c = add("sharpness", p=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c = add("lemma-scan", p=True)
    c.add_argument("--grid", type=int, default=200)
    add("russo", n=True)

    for cmd in sub.choices.values():
        cmd.add_argument("--tol", type=float, default=DEFAULT_TOL)
        cmd.add_argument("--jobs", type=int, default=None)
        cmd.add_argument("--monotone-only", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    jobs = args.jobs if args.jobs is not None else sweeps.default_jobs()
    start = time.monotonic()
    try:
        if args.command == "verify-weak":
            report = cmd_verify_weak(
                args.n, args.p, args.scope, args.input, tol=args.tol, jobs=jobs
            )
        elif args.command == "full-iso":
            report = cmd_full_iso(args.n)
        elif args.command == "kk":
            report = cmd_kk(args.n, args.k)
        elif args.command == "monotone-full":
            report = cmd_monotone_full(args.n, args.p, args.depth)
        elif args.command == "stability-scan":
            report = cmd_stability_scan(
                args.n,
                args.p,
                args.eps_max,
                tol=args.tol,
                jobs=jobs,
                monotone_only=args.monotone_only,
            )
        elif args.command == "sharpness":
            report = cmd_sharpness(args.t, args.s, args.p)
        elif args.command == "lemma-scan":
            report = cmd_lemma_scan(args.p, args.grid, tol=args.tol)
        elif args.command == "russo":
            report = cmd_russo(args.n)
        else:  # pragma: no cover - argparse enforces the choices
            raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.runtime_ms = int((time.monotonic() - start) * 1000)
    print(report.to_json())
    cases = report.counters.get("cases")
    spread = f"{cases} cases, " if cases is not None else ""
    print(
        f"{report.check_name}: {'PASS' if report.passed else 'FAIL'} "
        f"({spread}{report.runtime_ms} ms)",
        file=sys.stderr,
    )
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
