"""Command-line front end for expansions, family checks, and prime scans.

Exit codes: 0 on success, 1 on runtime failures (budget, domain, failed
verification), 2 on usage errors (argparse).  Scan output is canonical and
byte-identical across runs and worker counts.
"""

from __future__ import annotations

import argparse
import random
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from . import experiments, families, output
from .continuants import cassini_even, cassini_odd, continuant_q
from .errors import CFPrimeError
from .primes import is_prime
from .surd import DEFAULT_PERIOD_BUDGET, expand_full, expand_prefix

_FAMILY_CHOICES = ("main", "period8", "period9", "case2", "case3", "case4", "case5", "case6")


@dataclass(frozen=True)
class RunConfig:
    """Normalized knobs shared by the scan subcommands."""

    command: str
    prime_count: int
    kmax: int
    period_budget: int
    grid: int
    prefix_len: int
    workers: int
    output_format: str
    output_path: Path | None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            prime_count=getattr(args, "primes", 100_000),
            kmax=getattr(args, "kmax", 10),
            period_budget=getattr(args, "budget", DEFAULT_PERIOD_BUDGET),
            grid=getattr(args, "grid", 200),
            prefix_len=getattr(args, "prefix_len", experiments.DEFAULT_PREFIX_LEN),
            workers=getattr(args, "workers", 1),
            output_format=getattr(args, "fmt", "csv"),
            output_path=getattr(args, "out", None),
        )


@contextmanager
def _open_out(path: Path | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh


def _add_output_flags(sp: argparse.ArgumentParser, formats=("csv", "json", "svg")) -> None:
    sp.add_argument("--format", dest="fmt", choices=formats, default=formats[0])
    sp.add_argument("--out", type=Path, default=None, help="output path (default stdout)")


def _add_scan_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--primes", type=int, default=100_000, metavar="N",
                    help="scan the first N primes (default 100000)")
    sp.add_argument("--workers", type=int, default=1, metavar="W")
    sp.add_argument("--budget", type=int, default=DEFAULT_PERIOD_BUDGET, metavar="B",
                    help="period digit budget (default 1000000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfprime",
        description="Continued fractions of square roots: expansions, families, prime scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expand", help="full period of sqrt(D)")
    sp.add_argument("D", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_PERIOD_BUDGET)
    _add_output_flags(sp, formats=("text", "json"))

    sp = sub.add_parser("prefix", help="first K period digits of sqrt(D)")
    sp.add_argument("D", type=int)
    sp.add_argument("K", type=int)
    _add_output_flags(sp, formats=("text", "json"))

    sp = sub.add_parser("scan-ak", help="primes with exactly k leading ones")
    sp.add_argument("--kmax", type=int, default=10)
    _add_scan_flags(sp)
    _add_output_flags(sp)

    sp = sub.add_parser("scan-l0", help="primes with no digit 1 in the period")
    sp.add_argument("--prefix-len", type=int, default=experiments.DEFAULT_PREFIX_LEN,
                    help="phase-1 filter length (default 20)")
    _add_scan_flags(sp)
    _add_output_flags(sp)

    sp = sub.add_parser("scan-l1", help="histogram primes by number of 1s in the period")
    sp.add_argument("--grid", type=int, default=100,
                    help="number of ratio subintervals of [0,1) (default 100)")
    _add_scan_flags(sp)
    _add_output_flags(sp)

    sp = sub.add_parser("scan-periods", help="period lengths, histogram, exceedance probe")
    sp.add_argument("--series", choices=("T", "ratio"), default="T",
                    help="series plotted in svg mode")
    _add_scan_flags(sp)
    _add_output_flags(sp)

    sp = sub.add_parser("density", help="exact density predictions")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern", type=str, help="comma-separated digits, e.g. 1,1,1")
    group.add_argument("--ak", type=int, help="density of the exactly-k-leading-ones set")

    sp = sub.add_parser("digit-freq", help="digit distribution at a period position")
    sp.add_argument("--position", type=int, required=True)
    sp.add_argument("--max-digit", type=int, default=10)
    _add_scan_flags(sp)
    _add_output_flags(sp)

    sp = sub.add_parser("family", help="parametric family verification and census")
    sp.add_argument("mode", choices=("verify", "search", "census"))
    sp.add_argument("--family", choices=_FAMILY_CHOICES, default="main")
    sp.add_argument("--grid", type=int, default=200, metavar="G",
                    help="primary parameter bound (default 200)")
    sp.add_argument("--ubound", type=int, default=20,
                    help="secondary bound for period9 (default 20)")
    _add_output_flags(sp, formats=("text", "json"))

    sp = sub.add_parser("cassini-selftest", help="exhaustive + random identity checks")
    sp.add_argument("--nmax", type=int, default=4)
    sp.add_argument("--entry-max", type=int, default=5)
    sp.add_argument("--random", type=int, default=1000, dest="random_count")
    sp.add_argument("--seed", type=int, default=0)

    return parser


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_expand(args: argparse.Namespace) -> int:
    exp = expand_full(args.D, args.budget)
    with _open_out(args.out) as fh:
        if args.fmt == "json":
            output.write_json(fh, {"D": exp.D, "a0": exp.a0,
                                   "period": list(exp.period), "T": exp.T})
        else:
            digits = ",".join(str(d) for d in exp.period)
            fh.write(f"sqrt({exp.D}) = [{exp.a0}; ({digits})], T={exp.T}\n")
    return 0


def _cmd_prefix(args: argparse.Namespace) -> int:
    pe = expand_prefix(args.D, args.K)
    with _open_out(args.out) as fh:
        if args.fmt == "json":
            output.write_json(fh, {"D": pe.D, "a0": pe.a0,
                                   "digits": list(pe.digits), "complete": pe.complete})
        else:
            digits = ",".join(str(d) for d in pe.digits)
            tail = "" if pe.complete else "..."
            flag = "true" if pe.complete else "false"
            fh.write(f"sqrt({pe.D}) = [{pe.a0}; ({digits}){tail}], complete={flag}\n")
    return 0


def _cmd_scan_ak(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    report = experiments.scan_Ak(cfg.kmax, cfg.prime_count, workers=cfg.workers,
                                 period_budget=cfg.period_budget)
    rows = [(r.k, r.smallest_prime, r.period_of_smallest, r.count) for r in report.rows]
    with _open_out(cfg.output_path) as fh:
        if cfg.output_format == "csv":
            output.write_csv(fh, output.AK_HEADER, rows)
        elif cfg.output_format == "json":
            output.write_json(fh, output.rows_to_objects(output.AK_HEADER, rows))
        else:
            output.write_svg_bars(fh, [r.k for r in report.rows],
                                  [r.count for r in report.rows],
                                  title=f"|A_k| over the first {cfg.prime_count} primes")
    return 0


def _cmd_scan_l0(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    report = experiments.scan_L0(cfg.prime_count, period_budget=cfg.period_budget,
                                 prefix_len=cfg.prefix_len, workers=cfg.workers)
    rows = [(r.i, r.count, r.smallest) for r in report.rows]
    with _open_out(cfg.output_path) as fh:
        if cfg.output_format == "csv":
            output.write_csv(fh, output.L0_HEADER, rows)
        elif cfg.output_format == "json":
            output.write_json(fh, output.rows_to_objects(output.L0_HEADER, rows))
        else:
            output.write_svg_bars(fh, [r.i for r in report.rows],
                                  [r.count for r in report.rows],
                                  title=f"L0 members by period length, first {cfg.prime_count} primes")
    return 0


def _cmd_scan_l1(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    report = experiments.scan_L1(cfg.prime_count, period_budget=cfg.period_budget,
                                 grid=args.grid, workers=cfg.workers)
    ordered = sorted(report.counts)
    rows = [(i, report.counts[i], report.smallest[i]) for i in ordered]
    with _open_out(cfg.output_path) as fh:
        if cfg.output_format == "csv":
            output.write_csv(fh, output.L0_HEADER, rows)
        elif cfg.output_format == "json":
            uncovered = [int(j) for j in range(report.grid) if not report.covered[j]]
            output.write_json(fh, {
                "rows": output.rows_to_objects(output.L0_HEADER, rows),
                "grid": report.grid,
                "covered_fraction": report.coverage_fraction(),
                "uncovered_buckets": uncovered,
            })
        else:
            output.write_svg_bars(fh, [r[0] for r in rows], [r[1] for r in rows],
                                  title=f"|L_i| over the first {cfg.prime_count} primes")
    return 0


def _cmd_scan_periods(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    report = experiments.scan_periods(cfg.prime_count, period_budget=cfg.period_budget,
                                      workers=cfg.workers)
    with _open_out(cfg.output_path) as fh:
        if cfg.output_format == "csv":
            rows = ((r.m, r.p, r.T, r.ratio) for r in report.rows())
            output.write_csv(fh, output.PERIOD_HEADER, rows)
        elif cfg.output_format == "json":
            rows = [(r.m, r.p, r.T, r.ratio) for r in report.rows()]
            output.write_json(fh, {
                "rows": output.rows_to_objects(output.PERIOD_HEADER, rows),
                "w_histogram": report.w_hist,
                "exceedances": report.exceedances,
            })
        else:
            if args.series == "T":
                xs = list(range(1, len(report.ts) + 1))
                ys = [int(t) for t in report.ts]
                title = "T_{p_m}"
            else:
                stats = [r for r in report.rows() if r.ratio is not None]
                xs = [r.m for r in stats]
                ys = [r.ratio for r in stats]
                title = "T_{p_m} / (sqrt(m) ln m)"
            output.write_svg_scatter(fh, xs, ys, title=title)
    return 0


def _cmd_density(args: argparse.Namespace) -> int:
    if args.ak is not None:
        d = experiments.density_Ak(args.ak)
        print(f"A_{args.ak} density: {output.format_rational(d)}")
    else:
        pattern = tuple(int(x) for x in args.pattern.split(","))
        d = experiments.density_predict(pattern)
        qk = continuant_q(pattern)
        qk1 = continuant_q(pattern[:-1])
        print(f"1/(({qk}+{qk1})*{qk}) = {output.format_rational(d)}")
    return 0


def _cmd_digit_freq(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    rows_data = experiments.digit_frequency(args.position, cfg.prime_count,
                                            args.max_digit, workers=cfg.workers)
    rows = [(r.position, r.digit, r.empirical, r.gauss_kuzmin) for r in rows_data]
    with _open_out(cfg.output_path) as fh:
        if cfg.output_format == "csv":
            output.write_csv(fh, output.FREQ_HEADER, rows)
        elif cfg.output_format == "json":
            output.write_json(fh, output.rows_to_objects(output.FREQ_HEADER, rows))
        else:
            output.write_svg_bars(fh, [r.digit for r in rows_data],
                                  [float(r.empirical) for r in rows_data],
                                  title=f"digit distribution at position {args.position}")
    return 0


def _family_points(args: argparse.Namespace):
    g = args.grid
    if args.family == "main":
        return families.main_grid(g, g)
    if args.family == "period8":
        return families.period8_grid(g, g)
    if args.family == "period9":
        return families.period9_grid(g, args.ubound)
    case = int(args.family[len("case"):])
    return families.lemma21_grid(case, g)


def _cmd_family(args: argparse.Namespace) -> int:
    if args.mode == "verify":
        if args.family == "main":
            violations = families.verify_main_grid(args.grid, args.grid)
        elif args.family == "period9":
            violations = families.verify_period9_grid(args.grid, args.ubound)
        else:
            violations = []
            for pt in _family_points(args):
                if expand_full(pt.D).period != families.advertised_period(pt):
                    violations.append(f"{pt.family_id} {pt.params}: period mismatch")
        for v in violations:
            print(v, file=sys.stderr)
        print(f"family {args.family}: {'OK' if not violations else f'{len(violations)} violations'}")
        return 0 if not violations else 1
    if args.mode == "search":
        with _open_out(args.out) as fh:
            for pt in _family_points(args):
                if pt.D < 1 << 64 and is_prime(pt.D):
                    params = " ".join(f"{k}={v}" for k, v in pt.params.items())
                    fh.write(f"{pt.family_id} {params} D={pt.D}\n")
        return 0
    census = experiments.family_prime_census(_family_points(args))
    with _open_out(args.out) as fh:
        if args.fmt == "json":
            output.write_json(fh, {
                "family": census.family_id,
                "total": census.total,
                "primes": census.prime_count,
                "untested": census.untested,
                "max_D": census.max_D,
                "reference": census.reference,
                "smallest_primes": census.primes[:10],
                "violations": census.violations,
            })
        else:
            fh.write(f"family {census.family_id}: {census.prime_count} primes "
                     f"among {census.total} points (untested: {census.untested})\n")
            fh.write(f"reference N/ln^1.5 N at N={census.max_D}: "
                     f"{output.format_float(census.reference)}\n")
            if census.primes:
                shown = ", ".join(str(p) for p in census.primes[:10])
                fh.write(f"smallest prime instances: {shown}\n")
            for v in census.violations:
                fh.write(f"violation: {v}\n")
    return 0 if not census.violations else 1


def _iter_tuples(n: int, entry_max: int):
    if n == 0:
        yield ()
        return
    for rest in _iter_tuples(n - 1, entry_max):
        for x in range(1, entry_max + 1):
            yield rest + (x,)


def _cmd_cassini(args: argparse.Namespace) -> int:
    bad = 0
    total = 0
    for n in range(1, args.nmax + 1):
        for xs in _iter_tuples(n, args.entry_max):
            total += 1
            if cassini_even(xs) != 1 or cassini_odd(xs) != -1:
                bad += 1
                print(f"violation at {xs}", file=sys.stderr)
    rng = random.Random(args.seed)
    for _ in range(args.random_count):
        n = rng.randint(1, 8)
        xs = tuple(rng.randint(1, 50) for _ in range(n))
        total += 1
        if cassini_even(xs) != 1 or cassini_odd(xs) != -1:
            bad += 1
            print(f"violation at {xs}", file=sys.stderr)
    print(f"cassini self-test: {total} tuples, {bad} violations")
    return 0 if bad == 0 else 1


_HANDLERS = {
    "expand": _cmd_expand,
    "prefix": _cmd_prefix,
    "scan-ak": _cmd_scan_ak,
    "scan-l0": _cmd_scan_l0,
    "scan-l1": _cmd_scan_l1,
    "scan-periods": _cmd_scan_periods,
    "density": _cmd_density,
    "digit-freq": _cmd_digit_freq,
    "family": _cmd_family,
    "cassini-selftest": _cmd_cassini,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except CFPrimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
