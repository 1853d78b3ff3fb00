import pytest

from cfprime.errors import DomainError
from cfprime.families import (
    advertised_period,
    discriminant_checks,
    lemma21_D,
    lemma21_grid,
    main_D,
    period8_grid,
    period8_param,
    period9_F,
    period9_coeffs,
    verify_main_grid,
    verify_period9_grid,
)
from cfprime.primes import sieve_upto
from cfprime.surd import expand_full, expand_prefix
from cfprime import kernels

import numpy as np


def test_main_D_examples():
    pt = main_D(1, 3)
    assert pt.D == 425 and pt.a0 == 20
    assert pt.D == 25 * 17  # sqrt(425) = 5 sqrt(17)
    pt = main_D(1, 1)
    assert pt.D == 159
    assert expand_prefix(159, 3).digits == (1, 1, 1)


def test_main_D_factorization_identity():
    for t in range(1, 101):
        assert main_D(1, t).D == (t + 2) * (16 * t + 37)
        assert main_D(2, t).D == (t + 3) * (16 * t + 45)


def test_main_D_domain():
    with pytest.raises(DomainError):
        main_D(0, 1)
    with pytest.raises(DomainError):
        main_D(1, 0)


@pytest.mark.parametrize(
    "case,params,D,period",
    [
        (2, {"t": 1}, 7, (1, 1, 1, 4)),
        (3, {"t": 1}, 13, (1, 1, 1, 1, 6)),
        (4, {"u": 1, "v": 1}, 21, (1, 1, 2, 1, 1, 8)),
    ],
)
def test_lemma21_examples(case, params, D, period):
    pt = lemma21_D(case, **params)
    assert pt.D == D
    assert expand_full(D).period == period
    assert advertised_period(pt) == period


def test_lemma21_case4_a_value():
    pt = lemma21_D(4, u=1, v=1)
    assert pt.a0 == 2 * 3 * 1 - 1 - 1 == 4


def test_lemma21_case5():
    # x = 1 requires t >= 4 for a > 0
    with pytest.raises(DomainError):
        lemma21_D(5, x=1, t=3)
    pt = lemma21_D(5, x=1, t=4)
    assert pt.a0 == 13 * 4 - 45 == 7
    assert expand_full(pt.D).period == advertised_period(pt)


def test_lemma21_case5_coprimality_identity():
    # 2(2x^2+3x+3) u - (4x^2+4x+5) v = 1 at u=(2x+1)(x^2+x+1), v=2x^3+4x^2+4x+1
    for x in range(1, 50):
        u = (2 * x + 1) * (x * x + x + 1)
        v = 2 * x**3 + 4 * x**2 + 4 * x + 1
        assert 2 * (2 * x * x + 3 * x + 3) * u - (4 * x * x + 4 * x + 5) * v == 1


def test_lemma21_case6_gcd_handling():
    for x in range(1, 9):
        for t in range(0, 4):
            pt = lemma21_D(6, x=x, t=t)
            assert expand_full(pt.D).period == advertised_period(pt)


def test_lemma21_grids_expand_to_advertised_periods():
    for case, bound in [(2, 25), (3, 25), (4, 6), (5, 8), (6, 6)]:
        n = 0
        for pt in lemma21_grid(case, bound):
            assert expand_full(pt.D).period == advertised_period(pt), (case, pt)
            n += 1
        assert n > 0


def test_lemma21_bad_case():
    with pytest.raises(DomainError):
        lemma21_D(1, t=1)
    with pytest.raises(DomainError):
        lemma21_D(7, t=1)


def test_period8_param_examples():
    pt = period8_param(1, 2)
    assert pt.params["d"] == 1 and pt.params["t"] == 6
    assert pt.D == 14 * 76 == 1064
    assert main_D(1, 6).D == 1064
    assert expand_full(1064).period == (1, 1, 1, 1, 1, 1, 1, 64)

    pt = period8_param(2, 2)
    assert pt.params["d"] == 5 and pt.params["t"] == 4
    e = expand_full(pt.D)
    assert e.T == 8 and e.period[3] == 2

    with pytest.raises(DomainError):
        period8_param(1, 1)  # u <= (x+2)/3 leaves the domain


def test_period8_product_formula_integer_u():
    for x in range(1, 8):
        for u in range(1, 12):
            try:
                pt = period8_param(x, u)
            except DomainError:
                continue
            prod = (9 * u - 3 * x - 1) * ((3 * x + 4) ** 2 * u
                                          - (x + 1) * (3 * x * x + 6 * x + 2))
            assert pt.D == prod
            assert expand_full(pt.D).period == advertised_period(pt)


def test_period8_grid_contains_half_lattice_points():
    # (d, t) = (4, 1) has T = 8 but is unreachable with integer u; the grid
    # must still produce it via the completed lattice
    pts = {(p.params["d"], p.params["t"]): p for p in period8_grid(10, 10)}
    assert (4, 1) in pts
    assert pts[(4, 1)].D == 468
    assert expand_full(468).period == (1, 1, 1, 2, 1, 1, 1, 42)


def test_period9_examples():
    pt = period9_F(1, 1)
    assert pt.params["d"] == 543 and pt.params["t"] == 2879
    assert pt.D == 13150**2 + 16573
    e = expand_full(pt.D)
    assert e.T == 9
    assert e.period == (1, 1, 1, 2, 2, 1, 1, 1, 2 * 13150)


def test_period9_coeff_gcds():
    from math import gcd

    for n in range(1, 51):
        p0, p1, p2 = period9_coeffs(n)
        assert gcd(gcd(p0, p1), p2) == 1


def test_discriminant_checks():
    rep = discriminant_checks(1, 5)
    assert rep.disc_t == 25 and rep.disc_t_is_square
    assert rep.factorization == (7, 117)
    assert rep.factorization[0] * rep.factorization[1] == main_D(1, 5).D

    rep = discriminant_checks(3, 1)
    assert rep.disc_t == -7 and not rep.disc_t_is_square
    assert rep.factorization is None

    rep = discriminant_checks(5, 2)
    assert rep.disc_d == 64 and rep.disc_d_is_square and rep.disc_d_root == 8

    rep = discriminant_checks(2, 4)
    assert rep.factorization == (7, 109)
    assert 7 * 109 == main_D(2, 4).D


def test_verify_main_grid_small():
    assert verify_main_grid(40, 40) == []


def test_verify_period9_grid_small():
    assert verify_period9_grid(2, 3) == []


def test_corollary_two_ones_implies_seven_or_long():
    # primes p <= 10**6 with I_{p,2} = (1,1): T = 4 only at p = 7, otherwise T >= 5
    ps = sieve_upto(10**6)
    dig, ts = kernels.prefix_digits(ps, 5)
    two_ones = (dig[:, 0] == 1) & (dig[:, 1] == 1)
    sel_t = ts[two_ones]
    sel_p = ps[two_ones]
    assert not np.isin(sel_t, (1, 2, 3)).any()
    t4 = sel_p[sel_t == 4]
    assert t4.tolist() == [7]
