"""Prime-range scans: digit patterns, period statistics, and density checks.

Scans run over chunked prime arrays through the int64 kernels.  Chunks are
independent work items; partial results are merged in index order with exact
integer reducers (counts, first-occurrence minima), so the outcome does not
depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .continuants import continuant_q, fibonacci
from .errors import BudgetExceededError
from .families import MAIN_D, FamilyPoint, advertised_period
from .primes import is_prime, prime_chunks
from .surd import DEFAULT_PERIOD_BUDGET, expand_full, expand_prefix, isqrt, period_length

__all__ = [
    "DEFAULT_PREFIX_LEN",
    "AkRow",
    "AkReport",
    "L0Row",
    "L0Report",
    "L1Report",
    "PeriodStats",
    "PeriodReport",
    "FreqRow",
    "AuditReport",
    "CensusReport",
    "scan_Ak",
    "scan_L0",
    "scan_L1",
    "scan_periods",
    "scan_patterns",
    "digit_frequency",
    "gauss_kuzmin",
    "density_predict",
    "density_Ak",
    "expansion_audit",
    "family_prime_census",
]

DEFAULT_PREFIX_LEN = 20
DEFAULT_CHUNK_PRIMES = 250_000


# ---------------------------------------------------------------------------
# chunked-scan plumbing

def _chunk_jobs(prime_count: int, chunk_primes: int) -> list[tuple[int, np.ndarray]]:
    jobs: list[tuple[int, np.ndarray]] = []
    for first, arr in prime_chunks(prime_count):
        for off in range(0, len(arr), chunk_primes):
            jobs.append((first + off, arr[off:off + chunk_primes]))
    if jobs:
        kernels.check_kernel_range(jobs[-1][1])
    return jobs


def _map_ordered(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# ---------------------------------------------------------------------------
# A_k: primes whose period starts with exactly k ones

@dataclass(frozen=True)
class AkRow:
    k: int
    smallest_prime: int | None
    period_of_smallest: int | None
    count: int


@dataclass(frozen=True, eq=False)
class AkReport:
    rows: list[AkRow]
    prime_count: int
    no_leading_one: int  # primes whose first period digit is not 1
    deeper: int          # primes with more than kmax leading ones

    def counts_total(self) -> int:
        return sum(r.count for r in self.rows) + self.no_leading_one + self.deeper


def _ak_job(args: tuple[int, np.ndarray, int]):
    _, ds, kmax = args
    counts = kernels.leading_ones(ds, kmax + 1)
    hist = np.bincount(counts, minlength=kmax + 2)
    smallest: dict[int, int] = {}
    for k in range(1, kmax + 1):
        idx = np.flatnonzero(counts == k)
        if idx.size:
            smallest[k] = int(ds[idx[0]])
    return hist[:kmax + 2], smallest


def scan_Ak(
    kmax: int,
    prime_count: int,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
) -> AkReport:
    """Count and locate primes with exactly k leading ones, k = 1..kmax.

    Each prime is classified with an early exit at its first non-1 digit;
    the terminal digit 2*a0 >= 2 guarantees the leading-ones count is always
    decided inside the first period.
    """
    if not 1 <= kmax <= 64:
        raise ValueError("kmax must be in 1..64")
    jobs = [(first, arr, kmax) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_ak_job, jobs, workers)
    hist = np.zeros(kmax + 2, dtype=np.int64)
    smallest: dict[int, int] = {}
    for part_hist, part_smallest in parts:
        hist += part_hist
        for k, p in part_smallest.items():
            smallest.setdefault(k, p)  # chunks ascend, so the first hit is smallest
    rows = []
    for k in range(1, kmax + 1):
        sp = smallest.get(k)
        t = period_length(sp, period_budget) if sp is not None else None
        rows.append(AkRow(k, sp, t, int(hist[k])))
    return AkReport(rows, prime_count, int(hist[0]), int(hist[kmax + 1]))


# ---------------------------------------------------------------------------
# L_0: primes with no digit 1 anywhere in the period

@dataclass(frozen=True)
class L0Row:
    i: int
    count: int
    smallest: int | None


@dataclass(frozen=True, eq=False)
class L0Report:
    rows: list[L0Row]
    prime_count: int
    members: np.ndarray          # member primes in increasing order
    member_periods: np.ndarray


def _l0_job(args: tuple[int, np.ndarray, int]):
    _, ds, plen = args
    clean, ts = kernels.prefix_no_ones(ds, plen)
    idx = np.flatnonzero(clean)
    return ds[idx], ts[idx]


def scan_L0(
    prime_count: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
    prefix_len: int = DEFAULT_PREFIX_LEN,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
) -> L0Report:
    """Two-phase scan for primes without the digit 1 in their period.

    Phase 1 drops every prime showing a 1 among its first prefix_len period
    digits (early exit at the first 1).  Phase 2 fully expands the survivors
    whose period stayed open and keeps those with no 1 anywhere.
    """
    jobs = [(first, arr, prefix_len) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_l0_job, jobs, workers)
    if parts:
        survivors = np.concatenate([p[0] for p in parts])
        ts = np.concatenate([p[1] for p in parts])
    else:
        survivors = np.empty(0, dtype=np.int64)
        ts = np.empty(0, dtype=np.int64)
    open_idx = np.flatnonzero(ts == -1)
    if open_idx.size:
        full_t, full_ones = kernels.period_stats(survivors[open_idx], period_budget)
        if (full_t == -1).any():
            bad = int(survivors[open_idx][full_t == -1][0])
            raise BudgetExceededError(
                f"period of sqrt({bad}) exceeds budget of {period_budget} digits"
            )
        ts = ts.copy()
        ts[open_idx] = np.where(full_ones == 0, full_t, -1)
    mask = ts != -1
    members = survivors[mask]
    periods = ts[mask]
    rows = []
    for i in np.unique(periods).tolist():
        sel = periods == i
        first_hit = int(members[sel][0])  # members ascend with the scan
        rows.append(L0Row(int(i), int(sel.sum()), first_hit))
    return L0Report(rows, prime_count, members, periods)


# ---------------------------------------------------------------------------
# L_1 histogram: number of ones in the full period

@dataclass(frozen=True, eq=False)
class L1Report:
    counts: dict[int, int]    # i -> number of scanned primes with exactly i ones
    smallest: dict[int, int]
    ones: np.ndarray          # per-prime 1-counts in index order
    periods: np.ndarray       # per-prime period lengths
    grid: int
    covered: np.ndarray       # bool per subinterval [j/grid, (j+1)/grid)

    def coverage_fraction(self) -> float:
        return float(self.covered.sum()) / self.grid


def _l1_job(args: tuple[int, np.ndarray, int]):
    _, ds, budget = args
    return kernels.period_stats(ds, budget)


def scan_L1(
    prime_count: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
    grid: int = 100,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
) -> L1Report:
    """Histogram primes by the number of 1s in the full period.

    Also buckets the ratios L1/T into `grid` equal subintervals of [0, 1)
    (exact integer bucketing) to report which subintervals contain samples.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    jobs = [(first, arr, period_budget) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_l1_job, jobs, workers)
    periods = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    ones = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int64)
    if (periods == -1).any():
        bad_pos = int(np.flatnonzero(periods == -1)[0])
        raise BudgetExceededError(
            f"period budget {period_budget} exceeded at prime index {bad_pos + 1}"
        )
    primes = np.concatenate([arr for _, arr, _ in jobs]) if jobs else np.empty(0, np.int64)
    values, first_idx, value_counts = np.unique(ones, return_index=True, return_counts=True)
    counts = {int(v): int(c) for v, c in zip(values, value_counts)}
    smallest = {int(v): int(primes[i]) for v, i in zip(values, first_idx)}
    buckets = (ones * grid) // periods  # L1 < T always, so buckets stay < grid
    covered = np.bincount(buckets, minlength=grid)[:grid] > 0
    return L1Report(counts, smallest, ones, periods, grid, covered)


# ---------------------------------------------------------------------------
# period statistics and the exceedance probe

@dataclass(frozen=True)
class PeriodStats:
    m: int
    p: int
    T: int
    ratio: float | None  # T / (sqrt(m) * ln m); undefined at m = 1


@dataclass(frozen=True, eq=False)
class PeriodReport:
    ps: np.ndarray
    ts: np.ndarray
    w_hist: dict[int, int]     # period length -> count
    exceedances: list[int]

    def rows(self) -> Iterator[PeriodStats]:
        for m in range(1, len(self.ps) + 1):
            ratio = None
            if m >= 2:
                ratio = float(self.ts[m - 1]) / (math.sqrt(m) * math.log(m))
            yield PeriodStats(m, int(self.ps[m - 1]), int(self.ts[m - 1]), ratio)


def _periods_job(args: tuple[int, np.ndarray, int]):
    _, ds, budget = args
    ts, _ = kernels.period_stats(ds, budget)
    return ts


def scan_periods(
    prime_count: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
) -> PeriodReport:
    """Period length T_{p_m} for m = 1..prime_count, with histogram and probe.

    The exceedance list holds every m >= 2 whose period interior (T - 1
    digits, the palindromic block before the closing 2*a0) is longer than
    sqrt(m) * ln(m).  This is the comparison that reproduces the published
    exceedance set {2, 4}; comparing T itself against the same bound flags
    six additional small indices.  The per-row ratio report stays T / bound.
    """
    jobs = [(first, arr, period_budget) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_periods_job, jobs, workers)
    ts = np.concatenate(parts) if parts else np.empty(0, np.int64)
    if (ts == -1).any():
        bad_pos = int(np.flatnonzero(ts == -1)[0])
        raise BudgetExceededError(
            f"period budget {period_budget} exceeded at prime index {bad_pos + 1}"
        )
    ps = np.concatenate([arr for _, arr, _ in jobs]) if jobs else np.empty(0, np.int64)
    values, value_counts = np.unique(ts, return_counts=True)
    w_hist = {int(v): int(c) for v, c in zip(values, value_counts)}
    ms = np.arange(1, len(ts) + 1)
    exceed = []
    if len(ts) >= 2:
        bound = np.sqrt(ms[1:]) * np.log(ms[1:])
        exceed = ms[1:][(ts[1:] - 1) > bound].tolist()
    return PeriodReport(ps, ts, w_hist, [int(m) for m in exceed])


# ---------------------------------------------------------------------------
# prefix-pattern and digit-frequency scans

def _pattern_job(args: tuple[int, np.ndarray, tuple[tuple[int, ...], ...]]):
    _, ds, patterns = args
    k = max(len(p) for p in patterns)
    dig, _ = kernels.prefix_digits(ds, k)
    return [
        int(np.all(dig[:, : len(p)] == np.asarray(p, dtype=np.int64), axis=1).sum())
        for p in patterns
    ]


def scan_patterns(
    patterns: Sequence[Sequence[int]],
    prime_count: int,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
) -> dict[tuple[int, ...], int]:
    """Count scanned primes whose period starts with each given digit pattern.

    Digits beyond the period wrap cyclically, which agrees with the in-period
    reading whenever the pattern fits inside one period.
    """
    pats = tuple(tuple(int(d) for d in p) for p in patterns)
    if not pats or any(len(p) == 0 for p in pats):
        raise ValueError("patterns must be non-empty digit tuples")
    if any(d < 1 for p in pats for d in p):
        raise ValueError("pattern digits must be >= 1")
    jobs = [(first, arr, pats) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_pattern_job, jobs, workers)
    totals = [0] * len(pats)
    for part in parts:
        for i, c in enumerate(part):
            totals[i] += c
    return dict(zip(pats, totals))


@dataclass(frozen=True)
class FreqRow:
    position: int
    digit: int            # max_digit + 1 keys the pooled overflow bucket
    empirical: Fraction
    gauss_kuzmin: float


def gauss_kuzmin(digit: int) -> float:
    """Limiting digit law log2(1 + 1/(k(k+2)))."""
    return math.log2(1.0 + 1.0 / (digit * (digit + 2)))


def _freq_job(args: tuple[int, np.ndarray, int]):
    _, ds, position = args
    dig, _ = kernels.prefix_digits(ds, position)
    return dig[:, position - 1]


def digit_frequency(
    position: int,
    prime_count: int,
    max_digit: int,
    workers: int = 1,
    chunk_primes: int = DEFAULT_CHUNK_PRIMES,
) -> list[FreqRow]:
    """Empirical digit distribution at a fixed period position vs Gauss-Kuzmin.

    Positions beyond a short period continue cyclically (the closing 2*a0
    digit is counted as-is).  Digits above max_digit pool into the row keyed
    max_digit + 1, whose reference value is the remaining Gauss-Kuzmin mass.
    """
    if position < 1:
        raise ValueError("position must be >= 1")
    if max_digit < 1:
        raise ValueError("max_digit must be >= 1")
    jobs = [(first, arr, position) for first, arr in _chunk_jobs(prime_count, chunk_primes)]
    parts = _map_ordered(_freq_job, jobs, workers)
    col = np.concatenate(parts) if parts else np.empty(0, np.int64)
    clipped = np.minimum(col, max_digit + 1)
    hist = np.bincount(clipped, minlength=max_digit + 2)
    rows = []
    tail = 1.0
    for v in range(1, max_digit + 1):
        gk = gauss_kuzmin(v)
        tail -= gk
        rows.append(FreqRow(position, v, Fraction(int(hist[v]), prime_count), gk))
    rows.append(FreqRow(position, max_digit + 1, Fraction(int(hist[max_digit + 1]), prime_count), tail))
    return rows


# ---------------------------------------------------------------------------
# exact density engine

def density_predict(pattern: Sequence[int]) -> Fraction:
    """Relative prime density of expansions starting with the given digits.

    Exact value 1 / ((q_k + q_{k-1}) * q_k) over the pattern's continuants.
    """
    pat = tuple(int(d) for d in pattern)
    if not pat or any(d < 1 for d in pat):
        raise ValueError("pattern must be a non-empty tuple of digits >= 1")
    qk = continuant_q(pat)
    qk1 = continuant_q(pat[:-1])
    return Fraction(1, (qk + qk1) * qk)


def density_Ak(k: int) -> Fraction:
    """Relative density 1 / (F_{k+3} F_{k+1}) of the exactly-k-leading-ones set."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(1, fibonacci(k + 3) * fibonacci(k + 1))


# ---------------------------------------------------------------------------
# whole-range expansion audit (Pell + palindrome + closing digit)

@dataclass(frozen=True)
class AuditReport:
    checked: int
    violations: list[str]


def _audit_job(args: tuple[int, int, int]):
    lo, hi, budget = args
    buf = np.empty(min(4096, budget), np.int64)
    violations: list[str] = []
    checked = 0
    for D in range(lo, hi):
        r = isqrt(D)
        if r * r == D:
            continue
        checked += 1
        T = kernels.period_digits(D, buf)
        while T == -1:
            if len(buf) >= budget:
                raise BudgetExceededError(
                    f"period of sqrt({D}) exceeds budget of {budget} digits"
                )
            buf = np.empty(min(len(buf) * 4, budget), np.int64)
            T = kernels.period_digits(D, buf)
        digits = buf[:T]
        if int(digits[-1]) != 2 * r:
            violations.append(f"D={D}: closing digit {int(digits[-1])} != 2*a0")
        interior = digits[:-1]
        if not np.array_equal(interior, interior[::-1]):
            violations.append(f"D={D}: period interior not palindromic")
        p_prev, p_cur = 1, r
        q_prev, q_cur = 0, 1
        for a in digits[:-1].tolist():
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
        if p_cur * p_cur - D * q_cur * q_cur != (-1) ** T:
            violations.append(f"D={D}: Pell check != (-1)^T")
    return checked, violations


def expansion_audit(
    limit: int,
    period_budget: int = DEFAULT_PERIOD_BUDGET,
    workers: int = 1,
    chunk: int = 20_000,
) -> AuditReport:
    """Audit every non-square D <= limit: closing digit, palindrome, Pell sign."""
    if limit < 2:
        return AuditReport(0, [])
    jobs = [(lo, min(lo + chunk, limit + 1), period_budget) for lo in range(2, limit + 1, chunk)]
    parts = _map_ordered(_audit_job, jobs, workers)
    checked = sum(c for c, _ in parts)
    violations = [v for _, vs in parts for v in vs]
    return AuditReport(checked, violations)


# ---------------------------------------------------------------------------
# prime census over parametric families

@dataclass(frozen=True, eq=False)
class CensusReport:
    family_id: str
    total: int
    prime_count: int
    untested: int          # points with D >= 2**64, outside the primality range
    max_D: int
    reference: float       # max_D / ln(max_D)^{3/2}, the lower-bound curve
    primes: list[int]      # prime instances in generation order (capped)
    violations: list[str]


_PRIMALITY_LIMIT = 1 << 64


def family_prime_census(
    points: Iterable[FamilyPoint],
    verify_expansions: bool = True,
    keep_primes: int = 64,
) -> CensusReport:
    """Count prime values over a family grid and verify their expansions.

    Prime MAIN_D instances are checked for the (1,1,1) prefix and against a
    four-ones prefix; other families are checked against their advertised
    full period.  Points with D >= 2**64 are counted but not primality-tested.
    """
    family_id = ""
    total = prime_count = untested = 0
    max_d = 0
    primes: list[int] = []
    violations: list[str] = []
    for pt in points:
        if not family_id:
            family_id = pt.family_id
        total += 1
        max_d = max(max_d, pt.D)
        if pt.D >= _PRIMALITY_LIMIT:
            untested += 1
            continue
        if not is_prime(pt.D):
            continue
        prime_count += 1
        if len(primes) < keep_primes:
            primes.append(pt.D)
        if not verify_expansions:
            continue
        if pt.family_id == MAIN_D:
            pe = expand_prefix(pt.D, 4)
            if pe.digits[:3] != (1, 1, 1):
                violations.append(f"prime {pt.D}: prefix {pe.digits[:3]} != (1,1,1)")
            elif pe.digits[:4] == (1, 1, 1, 1):
                violations.append(f"prime {pt.D}: unexpected four leading ones")
        else:
            adv = advertised_period(pt)
            if adv is not None and expand_full(pt.D).period != adv:
                violations.append(f"prime {pt.D}: period differs from advertised shape")
    reference = max_d / math.log(max_d) ** 1.5 if max_d > 1 else 0.0
    return CensusReport(
        family_id=family_id,
        total=total,
        prime_count=prime_count,
        untested=untested,
        max_D=max_d,
        reference=reference,
        primes=primes,
        violations=violations,
    )
