import math
from fractions import Fraction

import numpy as np
import pytest

from cfprime import experiments, kernels
from cfprime.errors import BudgetExceededError
from cfprime.families import lemma21_grid, main_grid
from cfprime.surd import expand_full, isqrt


# ---------------------------------------------------------------------------
# kernels agree with the exact engine

def test_kernels_match_engine_on_sample():
    ds = np.array([d for d in range(2, 2000) if isqrt(d) ** 2 != d], dtype=np.int64)
    ts, ones = kernels.period_stats(ds, 10**6)
    lead = kernels.leading_ones(ds, 30)
    dig, dig_t = kernels.prefix_digits(ds, 6)
    for i, d in enumerate(ds.tolist()):
        e = expand_full(d)
        assert ts[i] == e.T
        assert ones[i] == sum(1 for a in e.period if a == 1)
        expect_lead = 0
        for a in e.period:
            if a != 1:
                break
            expect_lead += 1
        assert lead[i] == expect_lead
        wrapped = tuple(e.period[j % e.T] for j in range(6))
        assert tuple(dig[i].tolist()) == wrapped
        assert dig_t[i] == (e.T if e.T <= 6 else -1)


def test_kernel_prefix_no_ones():
    ds = np.array([2, 3, 7, 11, 41, 89, 131, 139, 151], dtype=np.int64)
    clean, ts = kernels.prefix_no_ones(ds, 20)
    for i, d in enumerate(ds.tolist()):
        e = expand_full(d)
        has_one_early = any(a == 1 for a in e.period[:20])
        assert clean[i] == (not has_one_early)
        if clean[i]:
            assert ts[i] == (e.T if e.T <= 20 else -1)


def test_kernel_range_guard():
    with pytest.raises(ValueError):
        kernels.check_kernel_range(np.array([1 << 61], dtype=np.int64))


# ---------------------------------------------------------------------------
# A_k scan

def test_scan_ak_small_scale_table1(ak_100k):
    smallest = [3, 31, 7, 13, 3797, 5273, 4987, 90371, 79873, 2081]
    periods = [2, 8, 4, 5, 13, 7, 66, 258, 257, 11]
    for row, sp, t in zip(ak_100k.rows, smallest, periods):
        assert row.smallest_prime == sp
        assert row.period_of_smallest == t


def test_scan_ak_reconciliation_exhaustive():
    rep = experiments.scan_Ak(12, 10_000)
    assert rep.deeper == 0  # P_11 = 111301 lies beyond p_10000
    assert sum(r.count for r in rep.rows) + rep.no_leading_one == 10_000


def test_scan_ak_density_convergence():
    rep = experiments.scan_Ak(5, 10**6)
    for row in rep.rows:
        predicted = experiments.density_Ak(row.k)
        rel_err = abs(Fraction(row.count, 10**6) - predicted) / predicted
        assert rel_err < Fraction(5, 100), (row.k, row.count)


def test_scan_ak_kmax_validation():
    with pytest.raises(ValueError):
        experiments.scan_Ak(0, 100)
    with pytest.raises(ValueError):
        experiments.scan_Ak(65, 100)


# ---------------------------------------------------------------------------
# L0 scan

def test_scan_l0_table4(l0_100k):
    smallest = {r.i: r.smallest for r in l0_100k.rows}
    assert smallest[1] == 2
    assert smallest[2] == 11
    assert smallest[3] == 41
    assert smallest[5] == 89
    assert smallest[6] == 131
    assert smallest[7] == 1301
    assert smallest[9] == 287537
    assert smallest[10] == 5107
    assert smallest[11] == 4649
    assert smallest[13] == 617801
    assert smallest[14] == 164051
    assert smallest[19] == 20789


def test_scan_l0_expansions_match_paper(l0_100k):
    expected = {
        2: (2,),
        11: (3, 6),
        41: (2, 2, 12),
        89: (2, 3, 3, 2, 18),
        131: (2, 4, 11, 4, 2, 22),
        1301: (14, 2, 2, 2, 2, 14, 72),
    }
    for p, period in expected.items():
        assert expand_full(p).period == period


def test_scan_l0_members_have_no_ones(l0_100k):
    for p in l0_100k.members[:50].tolist():
        assert 1 not in expand_full(p).period


def test_scan_l0_scale_monotone():
    small = {r.i: r.smallest for r in experiments.scan_L0(5_000).rows}
    large = {r.i: r.smallest for r in experiments.scan_L0(20_000).rows}
    for i, p in small.items():
        assert large[i] == p


def test_scan_l0_no_multiple_of_four_period(l0_100k):
    assert all(r.i % 4 != 0 for r in l0_100k.rows)


# ---------------------------------------------------------------------------
# L1 scan

def test_scan_l1_structure(l1_100k):
    assert l1_100k.counts[1] == 1 and l1_100k.smallest[1] == 3
    assert l1_100k.counts[3] == 1 and l1_100k.smallest[3] == 7
    for odd in (5, 7, 9, 11):
        assert odd not in l1_100k.counts


def test_scan_l1_samples(l1_100k):
    # p_2 = 3: period (1,2) gives L1 = 1, ratio 1/2
    assert l1_100k.ones[1] == 1 and l1_100k.periods[1] == 2
    bucket = (1 * l1_100k.grid) // 2
    assert l1_100k.covered[bucket]
    assert l1_100k.counts == {int(v): c for v, c in
                              zip(*np.unique(l1_100k.ones, return_counts=True))}


def test_scan_l1_counts_total(l1_100k):
    assert sum(l1_100k.counts.values()) == 100_000


# ---------------------------------------------------------------------------
# periods scan

def test_scan_periods_exceedances_small():
    rep = experiments.scan_periods(10_000)
    assert rep.exceedances == [2, 4]


def test_scan_periods_rows_and_ratio():
    rep = experiments.scan_periods(20)
    rows = list(rep.rows())
    assert rows[0] == experiments.PeriodStats(1, 2, 1, None)
    m2 = rows[1]
    assert m2.p == 3 and m2.T == 2
    assert m2.ratio == pytest.approx(2 / (math.sqrt(2) * math.log(2)))
    m17 = rows[16]
    assert m17.p == 59 and m17.T == 6
    assert math.sqrt(17) * math.log(17) == pytest.approx(11.68, abs=0.01)


def test_scan_periods_w_histogram():
    rep = experiments.scan_periods(1000)
    assert sum(rep.w_hist.values()) == 1000
    assert rep.w_hist[1] == int((rep.ts == 1).sum())


def test_scan_periods_budget():
    with pytest.raises(BudgetExceededError):
        experiments.scan_periods(1000, period_budget=20)


# ---------------------------------------------------------------------------
# densities

def test_density_predict_examples():
    assert experiments.density_predict((1,)) == Fraction(1, 2)
    assert experiments.density_predict((1, 1)) == Fraction(1, 6)
    assert experiments.density_predict((2,)) == Fraction(1, 6)
    assert experiments.density_predict((1, 1, 1)) == Fraction(1, 15)
    assert experiments.density_predict((1, 2)) == Fraction(1, 12)
    assert experiments.density_predict((2, 1)) == Fraction(1, 15)


def test_density_predict_validation():
    with pytest.raises(ValueError):
        experiments.density_predict(())
    with pytest.raises(ValueError):
        experiments.density_predict((0, 1))


def test_density_ak_formula():
    assert experiments.density_Ak(1) == Fraction(1, 3)
    assert experiments.density_Ak(2) == Fraction(1, 10)
    assert experiments.density_Ak(3) == Fraction(1, 24)
    ones = lambda k: (1,) * k
    for k in range(1, 21):
        diff = experiments.density_predict(ones(k)) - experiments.density_predict(ones(k + 1))
        assert experiments.density_Ak(k) == diff


def test_pattern_scan_counts():
    counts = experiments.scan_patterns([(1,), (2,)], 10_000)
    rep = experiments.scan_Ak(12, 10_000)
    assert counts[(1,)] == 10_000 - rep.no_leading_one


# ---------------------------------------------------------------------------
# digit frequencies

def test_digit_frequency_partition():
    rows = experiments.digit_frequency(3, 5_000, 6)
    assert sum(r.empirical for r in rows) == 1
    assert rows[-1].digit == 7  # overflow bucket
    gk_total = sum(r.gauss_kuzmin for r in rows)
    assert gk_total == pytest.approx(1.0)


def test_digit_frequency_position_one_matches_density():
    rows = experiments.digit_frequency(1, 100_000, 4)
    emp1 = rows[0].empirical
    assert abs(emp1 - Fraction(1, 2)) < Fraction(1, 100)


def test_gauss_kuzmin_values():
    assert experiments.gauss_kuzmin(1) == pytest.approx(math.log2(4 / 3))
    assert experiments.gauss_kuzmin(2) == pytest.approx(math.log2(9 / 8))


def test_digit_frequency_deep_position_near_gauss_kuzmin():
    rows = experiments.digit_frequency(5, 10**6, 4, workers=2)
    emp1 = float(rows[0].empirical)
    assert abs(emp1 - math.log2(4 / 3)) < 0.02


# ---------------------------------------------------------------------------
# audit and census

def test_expansion_audit_small():
    rep = experiments.expansion_audit(3_000)
    squares = isqrt(3_000) - 1
    assert rep.checked == 3_000 - 1 - squares
    assert rep.violations == []


def test_family_census_main():
    rep = experiments.family_prime_census(main_grid(60, 60))
    assert rep.family_id == "MAIN_D"
    assert rep.total == 3600
    assert rep.prime_count > 0
    assert rep.violations == []
    assert rep.reference == pytest.approx(rep.max_D / math.log(rep.max_D) ** 1.5)


def test_family_census_case3_periods():
    rep = experiments.family_prime_census(lemma21_grid(3, 100))
    assert rep.prime_count > 0
    assert rep.violations == []
    assert 13 in rep.primes


def test_family_census_skips_oversized():
    from cfprime.families import FamilyPoint

    pts = [FamilyPoint("MAIN_D", {"d": 1, "t": 1}, (1 << 65) + 1, 1)]
    rep = experiments.family_prime_census(pts)
    assert rep.untested == 1 and rep.prime_count == 0


# ---------------------------------------------------------------------------
# worker determinism

def test_worker_determinism():
    kwargs = dict(chunk_primes=900)
    a1 = experiments.scan_Ak(6, 10_000, workers=1, **kwargs)
    a2 = experiments.scan_Ak(6, 10_000, workers=3, **kwargs)
    assert a1.rows == a2.rows and a1.no_leading_one == a2.no_leading_one

    p1 = experiments.scan_periods(10_000, workers=1, **kwargs)
    p2 = experiments.scan_periods(10_000, workers=3, **kwargs)
    assert np.array_equal(p1.ts, p2.ts)
    assert p1.exceedances == p2.exceedances and p1.w_hist == p2.w_hist

    l1 = experiments.scan_L0(10_000, workers=1, **kwargs)
    l2 = experiments.scan_L0(10_000, workers=3, **kwargs)
    assert l1.rows == l2.rows

    f1 = experiments.digit_frequency(2, 10_000, 5, workers=1, **kwargs)
    f2 = experiments.digit_frequency(2, 10_000, 5, workers=3, **kwargs)
    assert f1 == f2
