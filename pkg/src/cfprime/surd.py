"""Exact integer continued-fraction engine for square roots of non-squares.

The complete quotient after k emitted period digits is (sqrt(D) + P) / Q with
integer P, Q, so the whole expansion runs in exact integer arithmetic at any
magnitude.  No floating point is ever consulted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Optional

from .errors import BudgetExceededError, InvariantViolationError, SquareInputError

__all__ = [
    "DEFAULT_PERIOD_BUDGET",
    "SurdState",
    "Expansion",
    "PrefixExpansion",
    "isqrt",
    "initial_state",
    "step",
    "expand_full",
    "expand_prefix",
    "period_length",
    "pell_check",
]

DEFAULT_PERIOD_BUDGET = 1_000_000


@dataclass(frozen=True)
class SurdState:
    """Expansion state of sqrt(D) after ``index`` emitted period digits.

    The complete quotient represented by the state is (sqrt(D) + P) / Q.
    For every reachable state with index >= 1 the classical bounds hold:
    0 < P <= a0, 0 < Q <= 2*a0, and Q divides D - P*P.
    """

    D: int
    a0: int
    P: int
    Q: int
    index: int


@dataclass(frozen=True)
class Expansion:
    """Full periodic expansion sqrt(D) = [a0; period...] with period[-1] == 2*a0."""

    D: int
    a0: int
    period: tuple[int, ...]

    @property
    def T(self) -> int:
        return len(self.period)


@dataclass(frozen=True)
class PrefixExpansion:
    """Leading digits of the periodic part; ``complete`` means the period closed."""

    D: int
    a0: int
    digits: tuple[int, ...]
    complete: bool


def _root_or_raise(D: int) -> int:
    if D < 1:
        raise SquareInputError(f"radicand must be a positive non-square, got {D}")
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise SquareInputError(f"{D} is a perfect square")
    return a0


def initial_state(D: int) -> SurdState:
    """State (P=0, Q=1) representing sqrt(D) itself, before any period digit."""
    return SurdState(D, _root_or_raise(D), 0, 1, 0)


def step(state: SurdState) -> tuple[int, SurdState]:
    """Advance one digit: returns ``(digit, next_state)``.

    The emitted digit is the floor of the *next* complete quotient, so the
    first step from ``initial_state(D)`` yields a1, the first period digit.
    """
    D, a0, P, Q = state.D, state.a0, state.P, state.Q
    a = (a0 + P) // Q
    P1 = a * Q - P
    num = D - P1 * P1
    Q1, rem = divmod(num, Q)
    if rem:
        raise InvariantViolationError(
            f"inexact PQa division for D={D}: Q={Q} does not divide {num}"
        )
    digit = (a0 + P1) // Q1
    return digit, SurdState(D, a0, P1, Q1, state.index + 1)


def _first_period_state(D: int) -> tuple[int, int, int]:
    """(a0, P1, Q1) for the first post-a0 state; raises on perfect squares."""
    a0 = _root_or_raise(D)
    return a0, a0, D - a0 * a0


def expand_full(D: int, period_budget: int = DEFAULT_PERIOD_BUDGET) -> Expansion:
    """Expand sqrt(D) to one full period.

    Termination is detected by the first recurrence of the (P1, Q1) state;
    the closing digit 2*a0 and the palindromic interior are then checked
    rather than assumed.
    """
    if period_budget < 1:
        raise ValueError("period_budget must be >= 1")
    a0, P, Q = _first_period_state(D)
    first = (P, Q)
    digits: list[int] = []
    while True:
        a = (a0 + P) // Q
        digits.append(a)
        if len(digits) > period_budget:
            raise BudgetExceededError(
                f"period of sqrt({D}) exceeds budget of {period_budget} digits"
            )
        P = a * Q - P
        num = D - P * P
        Q, rem = divmod(num, Q)
        if rem:
            raise InvariantViolationError(
                f"inexact PQa division for D={D} at digit {len(digits)}"
            )
        if (P, Q) == first:
            break
    if digits[-1] != 2 * a0:
        raise InvariantViolationError(
            f"period of sqrt({D}) does not close with 2*a0: got {digits[-1]}"
        )
    interior = digits[:-1]
    if interior != interior[::-1]:
        raise InvariantViolationError(f"period interior of sqrt({D}) is not palindromic")
    return Expansion(D, a0, tuple(digits))


def expand_prefix(
    D: int,
    k: int,
    digit_ok: Optional[Callable[[int], bool]] = None,
) -> PrefixExpansion:
    """First min(k, T) period digits of sqrt(D), with a period-closure flag.

    ``digit_ok`` enables early exit for scans: expansion stops right after the
    first digit failing the predicate (that digit is still included, and
    ``complete`` stays False unless the period happened to close on it).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    a0, P, Q = _first_period_state(D)
    first = (P, Q)
    digits: list[int] = []
    complete = False
    while True:
        a = (a0 + P) // Q
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == first:
            complete = True
            break
        if digit_ok is not None and not digit_ok(a):
            break
        if len(digits) == k:
            break
    return PrefixExpansion(D, a0, tuple(digits), complete)


def period_length(D: int, period_budget: int = DEFAULT_PERIOD_BUDGET) -> int:
    """Period length T of sqrt(D) by streaming the PQa recursion (no storage)."""
    if period_budget < 1:
        raise ValueError("period_budget must be >= 1")
    a0, P, Q = _first_period_state(D)
    first = (P, Q)
    count = 0
    while True:
        a = (a0 + P) // Q
        count += 1
        if count > period_budget:
            raise BudgetExceededError(
                f"period of sqrt({D}) exceeds budget of {period_budget} digits"
            )
        P = a * Q - P
        Q = (D - P * P) // Q
        if (P, Q) == first:
            return count


def pell_check(e: Expansion) -> int:
    """p_{T-1}^2 - D * q_{T-1}^2 from the convergent recurrences.

    Classical theory demands the value equal (-1)^T; callers treat any other
    result as corruption.
    """
    p_prev, p_cur = 1, e.a0
    q_prev, q_cur = 0, 1
    for a in e.period[:-1]:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    return p_cur * p_cur - e.D * q_cur * q_cur
