"""Prime enumeration (segmented sieve) and deterministic 64-bit primality."""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import isqrt, log
from typing import Iterator

import numpy as np

from .errors import BudgetExceededError

__all__ = [
    "PrimeRange",
    "is_prime",
    "primes_stream",
    "nth_prime",
    "sieve_upto",
    "prime_chunks",
    "MEM_ENV_VAR",
]

MEM_ENV_VAR = "CFPRIME_MEM_MB"
DEFAULT_SEGMENT_BYTES = 8 * 1024 * 1024

# Strong-pseudoprime witnesses: deterministic for every n < 3.3 * 10^24,
# which covers the full 64-bit range with room to spare.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


@dataclass(frozen=True)
class PrimeRange:
    """1-based index window into the prime sequence (p_1 = 2)."""

    start_index: int = 1
    count: int = 1

    def __post_init__(self) -> None:
        if self.start_index < 1 or self.count < 1:
            raise ValueError("start_index and count must be >= 1")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24 (full 64-bit range)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= _MR_LIMIT:
        raise ValueError(f"deterministic witness set only covers n < {_MR_LIMIT}")
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _segment_bytes() -> int:
    cap = os.environ.get(MEM_ENV_VAR)
    if cap is None:
        return DEFAULT_SEGMENT_BYTES
    cap_mb = int(cap)
    if cap_mb < 1:
        raise BudgetExceededError(f"{MEM_ENV_VAR}={cap_mb} leaves no sieve memory")
    return min(DEFAULT_SEGMENT_BYTES, cap_mb * 1024 * 1024)


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_upto(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array; memory use is capped by the budget."""
    if limit + 1 > _segment_bytes():
        raise BudgetExceededError(
            f"simple sieve to {limit} exceeds the memory budget; "
            f"use prime_chunks for streaming enumeration"
        )
    return _simple_sieve(limit)


def _value_chunks(limit: int) -> Iterator[np.ndarray]:
    """Primes <= limit as increasing arrays, sieving odd-only segments."""
    if limit < 2:
        return
    base = _simple_sieve(isqrt(limit))
    span = 2 * _segment_bytes()  # odd-only flags: one byte covers two integers
    low = 3
    first = True
    while True:
        if low > limit:
            if first:
                yield np.array([2], dtype=np.int64)
            return
        high = min(low + span, limit + 1)  # exclusive, low is odd, span even
        n_odd = (high - low + 1) // 2
        flags = np.ones(n_odd, dtype=bool)
        for p in base[1:]:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            flags[(start - low) // 2:: p] = False
        seg = low + 2 * np.flatnonzero(flags).astype(np.int64)
        if first:
            seg = np.concatenate((np.array([2], dtype=np.int64), seg))
            first = False
        yield seg
        low = high


def _nth_prime_upper(m: int) -> int:
    """Rosser-style upper bound for p_m, exact enough for sieve sizing."""
    if m < 6:
        return 13
    lm = log(m)
    return int(m * (lm + log(lm))) + 1


def prime_chunks(count: int, start_index: int = 1) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (first_index, primes) arrays covering prime indices
    [start_index, start_index + count), 1-based with p_1 = 2."""
    if count < 1 or start_index < 1:
        raise ValueError("count and start_index must be >= 1")
    last = start_index + count - 1
    limit = _nth_prime_upper(last)
    seen = 0  # primes yielded by the sieve so far
    remaining = count
    for seg in _value_chunks(limit):
        seg_start = seen + 1  # global index of seg[0]
        seen += len(seg)
        if seen < start_index:
            continue
        lo = max(start_index - seg_start, 0)
        hi = min(len(seg), lo + remaining)
        part = seg[lo:hi]
        if len(part):
            yield seg_start + lo, part
            remaining -= len(part)
        if remaining == 0:
            return
    raise AssertionError(f"sieve bound {limit} too small for p_{last}")


def primes_stream(rng: PrimeRange) -> Iterator[tuple[int, int]]:
    """Ordered (m, p_m) pairs over the requested index window."""
    for first, arr in prime_chunks(rng.count, rng.start_index):
        for i, p in enumerate(arr.tolist()):
            yield first + i, p


def nth_prime(m: int) -> int:
    """The m-th prime, 1-based (p_1 = 2)."""
    for _, arr in prime_chunks(1, m):
        return int(arr[0])
    raise AssertionError("unreachable")
