from fractions import Fraction

import pytest

from mdist.counting import (
    enumerate_reciprocal, mc_distribution, mc_star_volume, predicted_count, table_coefficients,
)
from mdist.distfun import MAHLER, RECIPROCAL
from mdist.errors import BudgetExceeded, UsageError

# Frozen from an independent brute force over reciprocal f (palindromic
# coefficient boxes |f_k| <= C(n, k) T) with repeated-root cases settled by
# exact factorization in sympy.
BRUTE = {(2, 10): 596, (3, 6): 440, (4, 4): 1216, (5, 3): 1044}


def test_table_values():
    c = table_coefficients()
    assert c[2] == Fraction(16, 3)
    assert c[8] == Fraction(655360, 11907)
    assert c[11] == Fraction(4294967296, 21223125) == 2 * c[10]


def test_predicted_count():
    assert predicted_count(2, 30) == pytest.approx(4800)
    assert predicted_count(4, 10) == pytest.approx(12800)
    assert predicted_count(0, 10) == pytest.approx(20)


def test_small_counts():
    assert enumerate_reciprocal(0, 10).exact_count == 20
    assert enumerate_reciprocal(1, 10).exact_count == 40
    for T in (1, 2, 5, 7):
        assert enumerate_reciprocal(1, T).exact_count == 4 * T


@pytest.mark.parametrize("key", sorted(BRUTE))
def test_against_brute_force(key):
    N, T = key
    assert enumerate_reciprocal(N, T, threads=2).exact_count == BRUTE[key]


def test_boundary_ties_included():
    # 3(x + 1)^2 has measure exactly 3; g = 3x + 6
    assert enumerate_reciprocal(2, 3).by_degree[2] - enumerate_reciprocal(2, 2.999).by_degree[2] > 0


def test_monotone_in_T():
    counts = [enumerate_reciprocal(3, T).exact_count for T in (2, 4, 6, 8, 10)]
    assert counts == sorted(counts)


def test_thread_independence():
    assert enumerate_reciprocal(4, 5, threads=1).exact_count == enumerate_reciprocal(4, 5, threads=3).exact_count


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_reciprocal(6, 1000)
    with pytest.raises(BudgetExceeded):
        enumerate_reciprocal(2, 101)
    with pytest.raises(UsageError):
        enumerate_reciprocal(-1, 5)


def test_mc_below_support_is_zero():
    est = mc_distribution(MAHLER, 2, 0.5, samples=20000)
    assert est.value == 0 and est.std_error == 0


def test_mc_distribution_small():
    est = mc_distribution(RECIPROCAL, 1, 2.0, samples=200000, seed=5)
    assert abs(est.value - 5.0) <= 4 * est.std_error


def test_mc_reproducible():
    a = mc_star_volume(RECIPROCAL, 2, samples=300000, seed=11, threads=1)
    b = mc_star_volume(RECIPROCAL, 2, samples=300000, seed=11, threads=4)
    assert a == b
    c = mc_star_volume(RECIPROCAL, 2, samples=300000, seed=12)
    assert c.value != a.value


def test_mc_star_volume_mahler_square():
    est = mc_star_volume(MAHLER, 1, samples=10000)
    assert est.value == 4.0
