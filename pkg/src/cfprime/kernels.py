"""Batch PQa kernels over machine-word radicands for the large scans.

These mirror the surd engine with int64 arithmetic.  When numba is installed
the kernels are JIT-compiled; otherwise the identical source runs as plain
Python (much slower, same integer results).  Every intermediate fits in a
signed 64-bit word for D < 2**60, far above any scanned prime.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def _njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


__all__ = [
    "HAVE_NUMBA",
    "KERNEL_D_LIMIT",
    "period_stats",
    "leading_ones",
    "prefix_no_ones",
    "prefix_digits",
    "period_digits",
]

KERNEL_D_LIMIT = 1 << 60


def check_kernel_range(ds: np.ndarray) -> None:
    if len(ds) and int(ds.max()) >= KERNEL_D_LIMIT:
        raise ValueError(f"kernel radicands must be < 2**60, got max {int(ds.max())}")


@_njit(cache=True)
def _isqrt64(D):
    a = np.int64(math.sqrt(D))
    while a * a > D:
        a -= 1
    while (a + 1) * (a + 1) <= D:
        a += 1
    return a


@_njit(cache=True)
def period_stats(ds, budget):
    """Per non-square radicand: (period length T, number of 1-digits).

    T = -1 (and ones = -1) marks a period longer than the budget.
    """
    n = len(ds)
    ts = np.empty(n, np.int64)
    ones = np.empty(n, np.int64)
    for i in range(n):
        D = ds[i]
        a0 = _isqrt64(D)
        P = a0
        Q = D - a0 * a0
        p1 = P
        q1 = Q
        T = 0
        c1 = 0
        while True:
            a = (a0 + P) // Q
            T += 1
            if a == 1:
                c1 += 1
            if T > budget:
                T = -1
                c1 = -1
                break
            P = a * Q - P
            Q = (D - P * P) // Q
            if P == p1 and Q == q1:
                break
        ts[i] = T
        ones[i] = c1
    return ts, ones


@_njit(cache=True)
def leading_ones(ds, cap):
    """Count of leading 1-digits of each period, capped at ``cap`` (early exit).

    The terminal digit 2*a0 >= 2 guarantees the count stays below T, so no
    closure detection is needed.
    """
    n = len(ds)
    out = np.empty(n, np.int64)
    for i in range(n):
        D = ds[i]
        a0 = _isqrt64(D)
        P = a0
        Q = D - a0 * a0
        c = 0
        while c < cap:
            a = (a0 + P) // Q
            if a != 1:
                break
            c += 1
            P = Q - P  # a == 1
            Q = (D - P * P) // Q
        out[i] = c
    return out


@_njit(cache=True)
def prefix_no_ones(ds, plen):
    """Early-exit filter: is the first min(plen, T) of the period free of 1s?

    Returns (clean flags, T) where T is the period length when the period
    closed within plen digits and -1 when it stayed open; T is -1 for
    disqualified radicands as well.
    """
    n = len(ds)
    clean = np.zeros(n, np.bool_)
    ts = np.empty(n, np.int64)
    for i in range(n):
        D = ds[i]
        a0 = _isqrt64(D)
        P = a0
        Q = D - a0 * a0
        p1 = P
        q1 = Q
        k = 0
        ok = True
        T = np.int64(-1)
        while k < plen:
            a = (a0 + P) // Q
            if a == 1:
                ok = False
                break
            k += 1
            P = a * Q - P
            Q = (D - P * P) // Q
            if P == p1 and Q == q1:
                T = k
                break
        clean[i] = ok
        ts[i] = T if ok else -1
    return clean, ts


@_njit(cache=True)
def prefix_digits(ds, k):
    """First k period digits of each radicand, cyclically continued when T < k.

    Returns (digits, T) with digits shaped (len(ds), k); T is -1 when the
    period did not close within k digits (the row still holds the true first
    k digits).
    """
    n = len(ds)
    dig = np.zeros((n, k), np.int64)
    ts = np.empty(n, np.int64)
    for i in range(n):
        D = ds[i]
        a0 = _isqrt64(D)
        P = a0
        Q = D - a0 * a0
        p1 = P
        q1 = Q
        T = np.int64(-1)
        j = 0
        while j < k:
            a = (a0 + P) // Q
            dig[i, j] = a
            j += 1
            P = a * Q - P
            Q = (D - P * P) // Q
            if P == p1 and Q == q1:
                T = j
                break
        if T != -1 and T < k:
            for j2 in range(T, k):
                dig[i, j2] = dig[i, j2 - T]
        ts[i] = T
    return dig, ts


@_njit(cache=True)
def period_digits(D, out):
    """Write the full period of sqrt(D) into ``out``; returns T, or -1 if
    the buffer is too small."""
    a0 = _isqrt64(D)
    P = a0
    Q = D - a0 * a0
    p1 = P
    q1 = Q
    budget = len(out)
    T = 0
    while True:
        a = (a0 + P) // Q
        if T >= budget:
            return -1
        out[T] = a
        T += 1
        P = a * Q - P
        Q = (D - P * P) // Q
        if P == p1 and Q == q1:
            return T
