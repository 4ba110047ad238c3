import math
from fractions import Fraction

import numpy as np
import pytest

from mdist.distfun import (
    MAHLER, RECIPROCAL, asymptotic_check, custom, distance, monic_restriction, parse_kind,
    root_bound, root_value, treciprocal,
)
from mdist.errors import UsageError
from mdist.polyroots import Polynomial, substitute_laurent

GOLDEN = (1 + math.sqrt(5)) / 2
GOLDEN_SQ = (3 + math.sqrt(5)) / 2


def test_root_value_examples():
    assert root_value(MAHLER, 0) == 1
    assert root_value(MAHLER, 3) == 3
    assert root_value(RECIPROCAL, 3) == pytest.approx(GOLDEN_SQ, rel=1e-14)
    assert root_value(RECIPROCAL, 2) == pytest.approx(1.0, abs=1e-7)
    assert root_value(RECIPROCAL, 0) == 1


def test_treciprocal_endpoints_match():
    g = np.array([0.3, 2.5, -4 + 1j, 1j, 10.0, -0.9 + 0.2j])
    assert np.allclose(treciprocal(0).phi(g), MAHLER.phi(g), rtol=0, atol=1e-12)
    assert np.allclose(treciprocal(1).phi(g), RECIPROCAL.phi(g), rtol=0, atol=1e-12)


def test_distance_examples():
    assert distance(MAHLER, [1, -1, -1]) == pytest.approx(GOLDEN, rel=1e-12)
    assert distance(RECIPROCAL, [1, 0, -5]) == pytest.approx(GOLDEN_SQ, rel=1e-12)
    assert distance(MAHLER, [7]) == 7
    assert distance(MAHLER, [0]) == 0


def test_shift_invariance():
    for n in range(11):
        assert distance(MAHLER, [1] + [0] * n) == 1


def test_monic_restriction_examples():
    assert monic_restriction(MAHLER, [0.5]) == 1
    assert monic_restriction(MAHLER, [-3]) == pytest.approx(3)
    assert monic_restriction(RECIPROCAL, [-3]) == pytest.approx(GOLDEN_SQ, rel=1e-12)


def test_asymptotic_check_examples():
    assert asymptotic_check(MAHLER, 1e6) == 0
    assert asymptotic_check(RECIPROCAL, 1e6) <= 2e-6
    assert asymptotic_check(treciprocal(Fraction(1, 2)), 1e6) <= 2e-6


def test_root_bound_examples():
    assert root_bound(MAHLER, 5) == 5
    assert root_bound(RECIPROCAL, 5) == 6
    assert root_bound(treciprocal(0), 5) == 5


def test_root_bound_contains_sublevel_set():
    rng = np.random.default_rng(0)
    g = rng.normal(scale=6, size=4000) + 1j * rng.normal(scale=6, size=4000)
    for kind in (MAHLER, RECIPROCAL, treciprocal(Fraction(1, 3))):
        for xi in (1.5, 3.0, 8.0):
            inside = np.asarray(kind.phi(g)) <= xi
            assert np.all(np.abs(g[inside]) <= root_bound(kind, xi) + 1e-12)


def test_pullback_identity():
    rng = np.random.default_rng(1)
    for _ in range(30):
        g = Polynomial([int(x) for x in rng.integers(-9, 10, size=int(rng.integers(2, 6)))])
        if g.trimmed[0] == 0 or g.degree == 0:
            continue
        f = substitute_laurent(g, 1)
        assert distance(RECIPROCAL, g) == pytest.approx(distance(MAHLER, f), rel=1e-9)


def test_parse_kind():
    assert parse_kind("mahler") is MAHLER
    assert parse_kind("reciprocal") is RECIPROCAL
    assert parse_kind("trec:1/2") == treciprocal(Fraction(1, 2))
    for bad in ("trec:2", "trec:x", "nope"):
        with pytest.raises(UsageError):
            parse_kind(bad)


def test_custom_kind():
    k = custom(lambda g: np.maximum(1.0, np.abs(g)), kappa=1.0, R0=1.0)
    assert distance(k, [2, -6]) == pytest.approx(6.0)
    with pytest.raises(UsageError):
        custom(abs, kappa=0, R0=1)
