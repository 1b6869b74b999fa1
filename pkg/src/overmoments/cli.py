"""Batch command-line front end.

Subcommands: series (exact coefficients), ospt (positivity table),
converge (main-term ratio tables), verify (pass/fail check suites).
Outputs are deterministic: identical arguments produce byte-identical
files.  Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource
guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import mpmath as mp

from . import asympt, circle, combinat, genfunc, moments
from .errors import OversizeRequest
from .series import overpartition_gf

PREC_MIN, PREC_MAX = 64, 4096


def _parse_range(text: str) -> list[int]:
    """'A:B' inclusive, or a single integer."""
    if ":" in text:
        a, b = text.split(":", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _parse_grid(text: str) -> list[int]:
    vals = [int(v) for v in text.split(",") if v]
    if not vals:
        raise argparse.ArgumentTypeError("empty grid")
    return vals


def _check_prec(value: str) -> int:
    prec = int(value)
    if not PREC_MIN <= prec <= PREC_MAX:
        raise argparse.ArgumentTypeError(
            f"precision {prec} outside [{PREC_MIN}, {PREC_MAX}]"
        )
    return prec


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def cmd_series(args) -> int:
    if args.kind == "crank":
        ser = genfunc.crank_binomial_series(args.r, args.trunc, shift=args.shift)
    else:
        ser = genfunc.rank_binomial_series(args.r, args.trunc, shift=args.shift)
    manifest = genfunc.series_manifest(args.kind, args.r, args.trunc, ser)
    fp, close = _open_out(args.out)
    try:
        if args.format == "csv":
            fp.write("n,coefficient\n")
            for n, c in enumerate(ser.coeffs):
                fp.write(f"{n},{c}\n")
        else:
            json.dump(
                {**manifest, "shift": args.shift, "coefficients": [str(c) for c in ser.coeffs]},
                fp,
                sort_keys=True,
            )
            fp.write("\n")
    finally:
        if close:
            fp.close()
    return 0


# ---------------------------------------------------------------------------
# ospt
# ---------------------------------------------------------------------------


def cmd_ospt(args) -> int:
    nmax = max(args.N)
    pref = overpartition_gf(nmax)
    rows = []
    for r in args.r:
        vals = moments.ospt_values(r, nmax, prefactor=pref)
        for N in args.N:
            v = vals[N]
            if N == 0:
                verdict = "not-applicable"
            elif v > 0:
                verdict = "positive"
            elif v == 0:
                verdict = "zero"
            else:
                verdict = "negative"
            rows.append((r, N, v, verdict))
    fp, close = _open_out(args.out)
    try:
        if args.format == "csv":
            fp.write("r,N,ospt,verdict\n")
            for r, N, v, verdict in rows:
                fp.write(f"{r},{N},{v},{verdict}\n")
        else:
            json.dump(
                [
                    {"r": r, "N": N, "ospt": str(v), "verdict": verdict}
                    for r, N, v, verdict in rows
                ],
                fp,
                sort_keys=True,
            )
            fp.write("\n")
    finally:
        if close:
            fp.close()
    return 0


# ---------------------------------------------------------------------------
# converge
# ---------------------------------------------------------------------------


_FLAVOR_MAP = {
    "moment": "moment_main",
    "difference": "difference_main",
    "symmetrized": "symmetrized_bessel",
}


def _converge_row(job) -> dict:
    flavor, kind, r, N, prec, exact = job
    log_exact = asympt.log_integer(exact, prec)
    log_main = asympt.main_term(kind, _FLAVOR_MAP[flavor], r, N, prec)
    with mp.workprec(prec):
        ratio = mp.e ** (log_exact - log_main)
        return {
            "N": N,
            "log_exact": mp.nstr(log_exact, 30),
            "log_main": mp.nstr(log_main, 30),
            "ratio": float(ratio),
            "residual": float(abs(ratio - 1)),
        }


def _convergence_rows(
    flavor: str, kind: str, r: int, grid: list[int], prec: int, workers: int = 1
):
    nmax = max(grid)
    pref = overpartition_gf(nmax)
    if flavor == "moment":
        exact_vals = moments.positive_moment_values(kind, r, nmax, prefactor=pref)
    elif flavor == "difference":
        exact_vals = moments.ospt_values(r, nmax, prefactor=pref)
    else:
        exact_vals = moments.symmetrized_moment_values(kind, r, nmax, prefactor=pref)
    jobs = []
    for N in grid:
        exact = exact_vals[N]
        if exact <= 0:
            raise ValueError(f"exact value at N={N} is not positive")
        jobs.append((flavor, kind, r, N, prec, exact))
    if workers > 1:
        # grid points are independent; map preserves job order, so output
        # stays deterministic regardless of completion order
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_converge_row, jobs))
    return [_converge_row(job) for job in jobs]


def _monotone_verdict(rows) -> str | None:
    if len(rows) < 2:
        return None
    res = [row["residual"] for row in rows]
    return "decreasing" if all(b < a for a, b in zip(res, res[1:])) else "not-decreasing"


def cmd_converge(args) -> int:
    rows = _convergence_rows(
        args.flavor, args.kind, args.r, args.grid, args.prec, args.workers
    )
    verdict = _monotone_verdict(rows)
    fp, close = _open_out(args.out)
    try:
        if args.format == "csv":
            fp.write("N,log_exact,log_main,ratio,residual\n")
            for row in rows:
                fp.write(
                    f"{row['N']},{row['log_exact']},{row['log_main']},"
                    f"{row['ratio']!r},{row['residual']!r}\n"
                )
            fp.write(f"# prec_bits={args.prec}\n")
            if verdict is not None:
                fp.write(f"# verdict={verdict}\n")
        else:
            json.dump(
                {
                    "flavor": args.flavor,
                    "kind": args.kind,
                    "r": args.r,
                    "prec_bits": args.prec,
                    "rows": rows,
                    "verdict": verdict,
                },
                fp,
                sort_keys=True,
            )
            fp.write("\n")
    finally:
        if close:
            fp.close()
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _check(name: str, passed: bool, detail: str = "") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _suite_oracle(budget: int, workers: int) -> list[dict]:
    nmax = 25
    checks = []
    tables = {}
    for kind in ("rank", "crank"):
        table = combinat.build_table(kind, nmax, budget=budget)
        tables[kind] = table
        pbar = overpartition_gf(nmax)
        sums_ok = all(table.column_sum(n) == pbar[n] for n in range(nmax + 1))
        checks.append(_check(f"{kind}-column-sums", sums_ok))
        checks.append(_check(f"{kind}-symmetry", table.is_symmetric()))
    for kind in ("rank", "crank"):
        build = (
            genfunc.rank_binomial_series
            if kind == "rank"
            else genfunc.crank_binomial_series
        )
        ok = True
        for r in range(1, 7):
            ser = build(r, nmax)
            for n in range(nmax + 1):
                if ser[n] != moments.symmetrized_positive_moment(tables[kind], r, n):
                    ok = False
        checks.append(_check(f"{kind}-series-vs-enumeration", ok))
    for kind in ("rank", "crank"):
        zl = (
            genfunc.rank_two_variable(nmax)
            if kind == "rank"
            else genfunc.crank_two_variable(nmax)
        )
        ok = all(zl.column(n) == tables[kind].column(n) for n in range(nmax + 1))
        checks.append(_check(f"{kind}-two-variable-vs-enumeration", ok))
    return checks


def _binom_sum(table, r: int, shift: int, n: int) -> int:
    from math import comb

    return sum(
        comb(m + shift, r) * v for m, v in table.column(n).items() if m >= 1
    )


def _suite_proposition(budget: int, workers: int) -> list[dict]:
    nmax = 16
    checks = []
    tables = {
        kind: combinat.build_table(kind, nmax, budget=budget)
        for kind in ("rank", "crank")
    }
    ok = True
    for r in range(0, 7):
        for shift in range(-1, max(r, 1)):
            if r == 0 and shift != -1:
                continue
            cs = genfunc.crank_binomial_series(r, nmax, shift=shift)
            rs = genfunc.rank_binomial_series(r, nmax, shift=shift)
            for n in range(nmax + 1):
                if cs[n] != _binom_sum(tables["crank"], r, shift, n):
                    ok = False
                if rs[n] != _binom_sum(tables["rank"], r, shift, n):
                    ok = False
    checks.append(_check("generalized-shift-identity", ok))
    sr3 = genfunc.rank_symmetrized_series(3, 7)
    checks.append(
        _check(
            "sample-expansion-rank-r3",
            list(sr3.coeffs[3:8]) == [2, 8, 24, 60, 134],
            "coefficients q^3..q^7",
        )
    )
    sc4 = genfunc.crank_binomial_series(4, 7, shift=2)
    checks.append(
        _check(
            "sample-expansion-crank-r4-shift2",
            list(sc4.coeffs[2:8]) == [1, 6, 22, 63, 159, 358],
            "coefficients q^2..q^7",
        )
    )
    pbar = overpartition_gf(30)
    checks.append(
        _check(
            "crank-two-variable-z1",
            genfunc.crank_two_variable(30).eval_z1() == pbar,
        )
    )
    checks.append(
        _check(
            "rank-two-variable-z1",
            genfunc.rank_two_variable(30).eval_z1() == pbar,
        )
    )
    return checks


def _suite_residual(budget: int, workers: int) -> list[dict]:
    checks = []
    for kind in ("crank", "rank"):
        for r in range(3, 7):
            fit = asympt.fit_subleading(kind, r)
            res = [
                float(asympt.expansion_residual(kind, r, N, prec=192))
                for N in (100, 1000, 10000)
            ]
            checks.append(
                _check(
                    f"{kind}-r{r}-residual-bounded",
                    max(res) < 1.0,
                    f"selected {fit.selected_tag}, residuals {res}",
                )
            )
    with mp.workprec(256):
        ok = True
        for r in range(1, 9):
            cs = asympt.resolve_constants(r, 256)
            lhs = mp.factorial(r) * cs.c_tilde
            rhs = cs.gamma * mp.pi * mp.sqrt(2)
            if abs(lhs - rhs) > mp.mpf(10) ** (-60):
                ok = False
        checks.append(_check("bessel-vs-moment-constant-identity", ok))
    q20 = float(asympt.eta_quotient_check(mp.mpc(0, 0.05)))
    q40 = float(asympt.eta_quotient_check(mp.mpc(0, 0.025)))
    checks.append(
        _check(
            "automorphic-prefactor-closed-form",
            q20 < 1e-10 and q40 < q20 / 100,
            f"at i/20: {q20:.3e}, at i/40: {q40:.3e}",
        )
    )
    return checks


def _wright_job(job) -> tuple:
    kind, r, N = job
    series = (
        genfunc.crank_binomial_series(r, N)
        if kind == "crank"
        else genfunc.rank_binomial_series(r, N)
    )
    exact = series[N]
    approx = circle.cauchy_coefficient(kind, r, N, tol=1e-8)
    rel = float(abs(approx - exact) / exact) if exact else float(abs(approx))
    return (kind, r, N, rel)


def _suite_wright(budget: int, workers: int) -> list[dict]:
    jobs = sorted(
        (kind, r, N)
        for kind in ("crank", "rank")
        for r in (1, 2, 3, 4)
        for N in (7, 25, 60)
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_wright_job, jobs))
    else:
        results = [_wright_job(j) for j in jobs]
    checks = []
    worst = 0.0
    ok = True
    for kind, r, N, rel in results:
        worst = max(worst, rel)
        if rel > 1e-8:
            ok = False
    checks.append(
        _check(
            "cauchy-matches-exact",
            ok,
            f"{len(results)} coefficients, worst relative error {worst:.3e}",
        )
    )
    fractions = [
        float(circle.major_arc_coefficient("crank", 3, N, tol=1e-8))
        / genfunc.crank_binomial_series(3, N)[N]
        for N in (25, 49, 100)
    ]
    dist = [abs(f - 1) for f in fractions]
    checks.append(
        _check(
            "major-arc-fraction-approaches-1",
            all(b < a for a, b in zip(dist, dist[1:])),
            f"fractions {fractions}",
        )
    )
    path = [float(circle.bessel_pathway_check(3, N)) for N in (25, 100)]
    checks.append(
        _check("bessel-pathway-bounded", max(path) < 1.0, f"ratios {path}")
    )
    return checks


_SUITES = {
    "oracle": _suite_oracle,
    "proposition": _suite_proposition,
    "residual": _suite_residual,
    "wright": _suite_wright,
}


def cmd_verify(args) -> int:
    checks = _SUITES[args.suite](args.budget, args.workers)
    passed = all(c["passed"] for c in checks)
    report = {"suite": args.suite, "passed": passed, "checks": checks}
    fp, close = _open_out(args.out)
    try:
        json.dump(report, fp, sort_keys=True, indent=2)
        fp.write("\n")
    finally:
        if close:
            fp.close()
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overmoments",
        description="Exact and asymptotic overpartition crank/rank moments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="write exact series coefficients")
    p.add_argument("--kind", choices=("crank", "rank"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--shift", type=int, default=None,
                   help="binomial shift (default floor((r-1)/2))")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("ospt", help="exact ospt values with positivity verdicts")
    p.add_argument("--r", type=_parse_range, required=True, metavar="A:B")
    p.add_argument("--N", type=_parse_range, required=True, metavar="A:B")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_ospt)

    p = sub.add_parser("converge", help="main-term ratio table over an N grid")
    p.add_argument("--flavor", choices=("moment", "difference", "symmetrized"),
                   required=True)
    p.add_argument("--kind", choices=("crank", "rank"), default="crank")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--grid", type=_parse_grid, required=True, metavar="N1,N2,...")
    p.add_argument("--prec", type=_check_prec, default=256)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", help="run a named check suite")
    p.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OversizeRequest as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
