"""Parametric families of radicands with guaranteed period digit patterns.

Each constructor evaluates its defining polynomial exactly and records the
parameters on the returned point.  Verification helpers re-expand the
radicands through the surd engine instead of trusting the algebra, which
catches transcription slips in the longer polynomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

from .errors import DomainError, InvariantViolationError
from .surd import expand_full, expand_prefix

__all__ = [
    "MAIN_D",
    "PERIOD8",
    "PERIOD9_F",
    "LEMMA21_CASES",
    "FamilyPoint",
    "DiscriminantReport",
    "main_D",
    "lemma21_D",
    "period8_param",
    "period9_F",
    "period9_coeffs",
    "discriminant_checks",
    "advertised_period",
    "main_grid",
    "period8_grid",
    "lemma21_grid",
    "period9_grid",
    "verify_main_grid",
    "verify_period9_grid",
]

MAIN_D = "MAIN_D"
PERIOD8 = "PERIOD8"
PERIOD9_F = "PERIOD9_F"
LEMMA21_CASES = ("L21_case2", "L21_case3", "L21_case4", "L21_case5", "L21_case6")


@dataclass(frozen=True)
class FamilyPoint:
    """One radicand from a parametric family, with its defining parameters."""

    family_id: str
    params: dict[str, int]
    D: int
    a0: int


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise DomainError(f"{what}: {den} does not divide {num}")
    return q


def main_D(d: int, t: int) -> FamilyPoint:
    """Two-parameter quadratic family whose expansions start (1, 1, 1).

    D = (4t + 3d + 5)^2 + 5t + 4d + 6 with floor sqrt a0 = 4t + 3d + 5.
    """
    if d < 1 or t < 1:
        raise DomainError(f"require d >= 1 and t >= 1, got d={d}, t={t}")
    a0 = 4 * t + 3 * d + 5
    D = a0 * a0 + 5 * t + 4 * d + 6
    return FamilyPoint(MAIN_D, {"d": d, "t": t}, D, a0)


def lemma21_D(case: int, **params: int) -> FamilyPoint:
    """Radicands with short prescribed periods starting (1, 1).

    case 2: params t        -> period (1,1,1,2a), a = 3t-1
    case 3: params t        -> period (1,1,1,1,2a), a = 5t-2
    case 4: params u, v     -> period (1,1,2u,1,1,2a)
    case 5: params x, t     -> period (1,1,x,x,1,1,2a)
    case 6: params x, t     -> period (1,1,1,x,1,1,1,2a), t >= 0 allowed
    """
    if case == 2:
        t = params["t"]
        if t < 1:
            raise DomainError("case 2 requires t >= 1")
        a = 3 * t - 1
        D = t * (9 * t - 2)
    elif case == 3:
        t = params["t"]
        if t < 1:
            raise DomainError("case 3 requires t >= 1")
        a = 5 * t - 2
        D = 25 * t * t - 14 * t + 2
    elif case == 4:
        u, v = params["u"], params["v"]
        if u < 1 or v < 1:
            raise DomainError("case 4 requires u >= 1 and v >= 1")
        a = 2 * (2 * u + 1) * v - u - 1
        D = (4 * v - 1) * ((2 * u + 1) ** 2 * v - u * (u + 1))
    elif case == 5:
        x, t = params["x"], params["t"]
        if x < 1:
            raise DomainError("case 5 requires x >= 1")
        a = (4 * x * x + 4 * x + 5) * t - (2 * x + 1) * (x * x + x + 1) * (x * x + 2 * x + 2)
        if a < 1:
            raise DomainError(
                f"case 5 requires t large enough for a > 0, got a={a} at x={x}, t={t}"
            )
        rem = 2 * (2 * x * x + 3 * x + 3) * a + x * x + 2 * x + 2
        D = a * a + _exact_div(rem, 4 * x * x + 4 * x + 5, "case 5")
    elif case == 6:
        x, t = params["x"], params["t"]
        if x < 1 or t < 0:
            raise DomainError("case 6 requires x >= 1 and t >= 0")
        dx = gcd(2 * (6 * x + 7), 3 * (3 * x + 4))
        # the gcd is computed directly rather than via the parity shortcut
        step = _exact_div(3 * (3 * x + 4), dx, "case 6 step")
        a = step * t + _exact_div((x + 1) * (3 * x + 8), 2, "case 6 offset")
        if a < 1:
            raise DomainError(f"case 6 produced non-positive a={a}")
        rem = 2 * (6 * x + 7) * a + 4 * (x + 1)
        D = a * a + _exact_div(rem, 3 * (3 * x + 4), "case 6")
    else:
        raise DomainError(f"lemma case must be one of 2..6, got {case}")
    return FamilyPoint(f"L21_case{case}", dict(params), D, a)


def _period8_from_w(x: int, w: int) -> FamilyPoint:
    """Period-8 point at u = w/2 on the full solution lattice.

    Integer u (even w) is the published sublattice; odd w is admissible only
    for even x and fills in the solutions the integer-u form cannot reach
    (smallest example (d, t) = (4, 1), D = 468).
    """
    if x < 1 or w < 1:
        raise DomainError(f"require x >= 1 and w >= 1, got x={x}, w={w}")
    num_d = (3 * x - 4) * w + 2 * (3 + x - x * x)
    d, rem = divmod(num_d, 2)
    if rem:
        raise DomainError(f"odd w={w} needs even x, got x={x}")
    t = 3 * w - 2 * (x + 2)
    if d < 1 or t < 1:
        raise DomainError(f"(x={x}, w={w}) leaves the family domain: d={d}, t={t}")
    prod = (9 * w - 6 * x - 2) * ((3 * x + 4) ** 2 * w - 2 * (x + 1) * (3 * x * x + 6 * x + 2))
    D, rem = divmod(prod, 4)
    base = main_D(d, t)
    if rem or base.D != D:
        raise InvariantViolationError(
            f"period-8 product form disagrees with main_D at x={x}, w={w}"
        )
    params = {"x": x, "w": w, "d": d, "t": t}
    if w % 2 == 0:
        params["u"] = w // 2
    return FamilyPoint(PERIOD8, params, D, base.a0)


def period8_param(x: int, u: int) -> FamilyPoint:
    """(x, u) parametrization of the main-family points with period length 8.

    Maps to d = (3x-4)u + 3 + x - x^2, t = 2(3u - x - 2); the product form of
    D is cross-checked against main_D(d, t) exactly.
    """
    if u < 1:
        raise DomainError(f"require u >= 1, got u={u}")
    return _period8_from_w(x, 2 * u)


def period9_coeffs(n: int) -> tuple[int, int, int]:
    """Coefficients (P0, P1, P2) of the period-9 polynomial D = P0 u^2 + P1 u + P2."""
    p0 = (36 * n * n + 24 * n + 13) ** 2
    p1 = 2 * (255744 * n**6 + 314064 * n**5 + 265824 * n**4 + 96196 * n**3
              + 24300 * n**2 - 1898 * n + 437)
    p2 = 2 * (25233408 * n**8 + 28330752 * n**7 + 23296712 * n**6 + 7136448 * n**5
              + 1742464 * n**4 - 315412 * n**3 + 94262 * n**2 - 6994 * n + 565)
    return p0, p1, p2


def period9_F(n: int, u: int) -> FamilyPoint:
    """(n, u) parametrization of main-family points with period length 9.

    Computes D along two independent routes -- the explicit degree-2
    polynomial in u and main_D at the derived (d, t) -- and requires exact
    agreement.
    """
    if n < 1 or u < 1:
        raise DomainError(f"require n >= 1 and u >= 1, got n={n}, u={u}")
    d0 = 4 * n**3 * (592 * n - 457)
    t0 = 2368 * n**3 + 540 * n**2 - 52 * n + 7
    d = (12 * n * n - 8 * n - 1) * u + d0
    t = 4 * (3 * n + 1) * u + t0
    p0, p1, p2 = period9_coeffs(n)
    D_poly = p0 * u * u + p1 * u + p2
    base = main_D(d, t)
    if base.D != D_poly:
        raise InvariantViolationError(
            f"period-9 polynomial route disagrees with main_D at n={n}, u={u}"
        )
    return FamilyPoint(PERIOD9_F, {"n": n, "u": u, "d": d, "t": t}, D_poly, base.a0)


@dataclass(frozen=True)
class DiscriminantReport:
    """Squareness of the two partial discriminants of the main family polynomial."""

    disc_d: int
    disc_d_is_square: bool
    disc_d_root: int | None
    disc_t: int
    disc_t_is_square: bool
    factorization: tuple[int, int] | None


def discriminant_checks(d: int, t: int) -> DiscriminantReport:
    """Reducibility probe: Disc_d = 4(10 + 3t), Disc_t = 41 - 16d.

    When Disc_t is a square (exactly d in {1, 2}) the factorization of D as a
    product of two linear forms in t is returned with both factors evaluated.
    """
    disc_d = 4 * (10 + 3 * t)
    root_d: int | None = None
    if disc_d >= 0:
        r = isqrt(disc_d)
        if r * r == disc_d:
            root_d = r
    disc_t = 41 - 16 * d
    disc_t_square = disc_t >= 0 and isqrt(disc_t) ** 2 == disc_t
    factorization: tuple[int, int] | None = None
    if d == 1:
        factorization = (t + 2, 16 * t + 37)
    elif d == 2:
        factorization = (t + 3, 16 * t + 45)
    return DiscriminantReport(
        disc_d=disc_d,
        disc_d_is_square=root_d is not None,
        disc_d_root=root_d,
        disc_t=disc_t,
        disc_t_is_square=disc_t_square,
        factorization=factorization,
    )


def advertised_period(pt: FamilyPoint) -> tuple[int, ...] | None:
    """Period digits the family guarantees, or None for MAIN_D (prefix only)."""
    a = pt.a0
    fid = pt.family_id
    if fid == "L21_case2":
        return (1, 1, 1, 2 * a)
    if fid == "L21_case3":
        return (1, 1, 1, 1, 2 * a)
    if fid == "L21_case4":
        x = 2 * pt.params["u"]
        return (1, 1, x, 1, 1, 2 * a)
    if fid == "L21_case5":
        x = pt.params["x"]
        return (1, 1, x, x, 1, 1, 2 * a)
    if fid == "L21_case6":
        x = pt.params["x"]
        return (1, 1, 1, x, 1, 1, 1, 2 * a)
    if fid == PERIOD8:
        x = pt.params["x"]
        return (1, 1, 1, x, 1, 1, 1, 2 * a)
    if fid == PERIOD9_F:
        n = pt.params["n"]
        return (1, 1, 1, 2 * n, 2 * n, 1, 1, 1, 2 * a)
    return None


def main_grid(d_max: int, t_max: int) -> Iterator[FamilyPoint]:
    """All main-family points with 1 <= d <= d_max, 1 <= t <= t_max."""
    for d in range(1, d_max + 1):
        for t in range(1, t_max + 1):
            yield main_D(d, t)


def period8_grid(d_max: int, t_max: int) -> Iterator[FamilyPoint]:
    """All period-8 points (full w-lattice) whose (d, t) land in the given box.

    Iterated in (d, t) order so scans over the box line up with main_grid.
    """
    pts = []
    # d grows at least linearly in x, so x stays below d_max + t_max by a margin;
    # for each x, t = 3w - 2(x + 2) pins the admissible w range
    for x in range(1, d_max + t_max + 3):
        w_lo = (2 * x + 5 + 2) // 3  # smallest w with t >= 1
        w_hi = (t_max + 2 * (x + 2)) // 3
        for w in range(max(w_lo, 1), w_hi + 1):
            try:
                pt = _period8_from_w(x, w)
            except DomainError:
                continue
            if pt.params["d"] <= d_max and pt.params["t"] <= t_max:
                pts.append(pt)
    pts.sort(key=lambda p: (p.params["d"], p.params["t"]))
    return iter(pts)


def period9_grid(n_max: int, u_max: int) -> Iterator[FamilyPoint]:
    for n in range(1, n_max + 1):
        for u in range(1, u_max + 1):
            yield period9_F(n, u)


def lemma21_grid(case: int, bound: int) -> Iterator[FamilyPoint]:
    """Family points for the given lemma case with all parameters <= bound."""
    if case in (2, 3):
        for t in range(1, bound + 1):
            yield lemma21_D(case, t=t)
    elif case == 4:
        for u in range(1, bound + 1):
            for v in range(1, bound + 1):
                yield lemma21_D(case, u=u, v=v)
    elif case == 5:
        for x in range(1, bound + 1):
            for t in range(1, bound + 1):
                try:
                    yield lemma21_D(case, x=x, t=t)
                except DomainError:
                    continue
    elif case == 6:
        for x in range(1, bound + 1):
            for t in range(0, bound + 1):
                yield lemma21_D(case, x=x, t=t)
    else:
        raise DomainError(f"lemma case must be one of 2..6, got {case}")


def verify_main_grid(d_max: int, t_max: int) -> list[str]:
    """Check the main family's digit-pattern guarantees over a (d, t) box.

    Verifies, for every grid point: the (1,1,1) prefix; T >= 7 with equality
    exactly at (d, t) = (1, 3); the four-ones prefix appearing iff d in {1, 2}
    together with the stated factorizations; and that the set of T = 8 points
    coincides with the image of the (x, u) parametrization.  Returns a list
    of violation descriptions (empty when everything holds).
    """
    violations: list[str] = []
    t8_grid: set[tuple[int, int]] = set()
    for pt in main_grid(d_max, t_max):
        d, t = pt.params["d"], pt.params["t"]
        pe = expand_prefix(pt.D, 9)
        digits = pe.digits
        if digits[:3] != (1, 1, 1):
            violations.append(f"I3 != (1,1,1) at (d={d}, t={t})")
            continue
        if pe.complete:
            T = len(digits)
            if T < 7:
                violations.append(f"T={T} < 7 at (d={d}, t={t})")
            if T == 7 and (d, t) != (1, 3):
                violations.append(f"unexpected T=7 at (d={d}, t={t})")
            if T == 8:
                t8_grid.add((d, t))
        if (d, t) == (1, 3) and not (pe.complete and len(digits) == 7):
            violations.append("T != 7 at (d=1, t=3)")
        four_ones = digits[:4] == (1, 1, 1, 1)
        if four_ones != (d in (1, 2)):
            violations.append(f"I4 all-ones mismatch at (d={d}, t={t})")
        if d in (1, 2):
            rep = discriminant_checks(d, t)
            assert rep.factorization is not None
            f1, f2 = rep.factorization
            if f1 * f2 != pt.D:
                violations.append(f"factorization fails at (d={d}, t={t})")
    t8_param: set[tuple[int, int]] = set()
    for pt in period8_grid(d_max, t_max):
        d, t = pt.params["d"], pt.params["t"]
        t8_param.add((d, t))
        exp = expand_full(pt.D)
        if exp.period != advertised_period(pt):
            violations.append(f"period-8 shape mismatch at (d={d}, t={t})")
    if t8_grid != t8_param:
        violations.append(
            f"T=8 sets differ: grid-only {sorted(t8_grid - t8_param)}, "
            f"param-only {sorted(t8_param - t8_grid)}"
        )
    return violations


def verify_period9_grid(n_max: int, u_max: int) -> list[str]:
    """Check the period-9 family over an (n, u) box: route agreement is enforced
    by the constructor, the expansion shape is checked here."""
    violations: list[str] = []
    for pt in period9_grid(n_max, u_max):
        exp = expand_full(pt.D)
        if exp.period != advertised_period(pt):
            violations.append(
                f"period-9 shape mismatch at (n={pt.params['n']}, u={pt.params['u']})"
            )
    return violations
