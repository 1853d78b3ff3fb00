"""Continuant polynomials, palindromic digit tuples, and Cassini-style identities.

Continuants are evaluated with the linear recurrence q_{-1}=0, q_0=1,
q_k = x_k q_{k-1} + q_{k-2} in exact integer arithmetic; rationals are
``fractions.Fraction`` and therefore always in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "DigitTuple",
    "continuant_q",
    "continuant_p",
    "fibonacci",
    "build_X",
    "build_Y",
    "cassini_even",
    "cassini_odd",
    "golden_square",
    "F_closed",
    "G_closed",
]

# A digit tuple is a sequence of positive integers (x_1, ..., x_n).
DigitTuple = tuple[int, ...]


def continuant_q(xs: Sequence[int]) -> int:
    """q over the digit tuple: q of the empty tuple is 1."""
    prev, cur = 0, 1
    for x in xs:
        prev, cur = cur, x * cur + prev
    return cur


def continuant_p(a0: int, xs: Sequence[int]) -> int:
    """p with p_{-1}=1, p_0=a0: numerator of the convergent [a0; xs...]."""
    prev, cur = 1, a0
    for x in xs:
        prev, cur = cur, x * cur + prev
    return cur


def fibonacci(k: int) -> int:
    """F_0=0, F_1=1, F_k = F_{k-1} + F_{k-2}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def _check_indices(n: int, i: int, j: int) -> None:
    if not 1 <= i <= j <= n:
        raise IndexError(f"require 1 <= i <= j <= n, got i={i}, j={j}, n={n}")


def build_X(xs: Sequence[int], i: int, j: int) -> DigitTuple:
    """Single-peak palindromic tuple (x_i, ..., x_n, x_{n-1}, ..., x_j).

    Indices are 1-based and must satisfy i <= j <= n; the result has length
    (n - i + 1) + (n - j).
    """
    n = len(xs)
    _check_indices(n, i, j)
    return tuple(xs[i - 1:n]) + tuple(xs[j - 1:n - 1][::-1])


def build_Y(xs: Sequence[int], i: int, j: int) -> DigitTuple:
    """Like build_X but with the peak x_n doubled; length (n-i+1) + (n-j+1)."""
    n = len(xs)
    _check_indices(n, i, j)
    return tuple(xs[i - 1:n]) + tuple(xs[j - 1:n][::-1])


def cassini_even(xs: Sequence[int]) -> int:
    """q(X_{1,2})^2 - q(X_{1,1}) * q(X_{2,2}), which contracts to 1.

    For n == 1 the constructions degenerate to q_0 = 1 and q_{-1} = 0, so the
    value is 1 - x_1 * 0.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("xs must be non-empty")
    if n == 1:
        return 1 * 1 - continuant_q(xs) * 0
    q12 = continuant_q(build_X(xs, 1, 2))
    q11 = continuant_q(build_X(xs, 1, 1))
    q22 = continuant_q(build_X(xs, 2, 2))
    return q12 * q12 - q11 * q22


def cassini_odd(xs: Sequence[int]) -> int:
    """q(Y_{1,2})^2 - q(Y_{1,1}) * q(Y_{2,2}), which contracts to -1.

    For n == 1: Y_{1,2} = (x_1), Y_{1,1} = (x_1, x_1) and Y_{2,2} is empty.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("xs must be non-empty")
    if n == 1:
        x = xs[0]
        return continuant_q((x,)) ** 2 - continuant_q((x, x)) * 1
    q12 = continuant_q(build_Y(xs, 1, 2))
    q11 = continuant_q(build_Y(xs, 1, 1))
    q22 = continuant_q(build_Y(xs, 2, 2))
    return q12 * q12 - q11 * q22


def golden_square(a: int, k: int) -> Fraction:
    """Exact square of [a; 1,...,1, 2a] with k-1 ones in the period.

    Equals (F_k a^2 + 2 F_{k-1} a + F_{k-2}) / F_k; integral values are
    precisely the radicands whose expansion is the all-ones period.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    fk = fibonacci(k)
    return Fraction(fk * a * a + 2 * fibonacci(k - 1) * a + fibonacci(k - 2), fk)


def F_closed(a: int, xs: Sequence[int]) -> Fraction:
    """Exact square of [a; X_{1,1}, 2a] in factored closed form.

    The two rational factors differ by 2/q(X_{1,1}), which is why integral
    values of the family are (eventually) composite.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("xs must be non-empty")
    if n == 1:
        q12, q11 = 1, continuant_q(xs)
    else:
        q12 = continuant_q(build_X(xs, 1, 2))
        q11 = continuant_q(build_X(xs, 1, 1))
    return (a + Fraction(q12 + 1, q11)) * (a + Fraction(q12 - 1, q11))


def G_closed(a: int, xs: Sequence[int]) -> Fraction:
    """Exact square of [a; Y_{1,1}, 2a]: a shifted square plus 1/q(Y_{1,1})^2."""
    n = len(xs)
    if n == 0:
        raise ValueError("xs must be non-empty")
    if n == 1:
        x = xs[0]
        q12 = continuant_q((x,))
        q11 = continuant_q((x, x))
    else:
        q12 = continuant_q(build_Y(xs, 1, 2))
        q11 = continuant_q(build_Y(xs, 1, 1))
    return (a + Fraction(q12, q11)) ** 2 + Fraction(1, q11 * q11)
