import math

import numpy as np
import pytest

from mdist.errors import NonFiniteCoefficient, NotReciprocal, OddDegree
from mdist.polyroots import (
    Polynomial, eval_poly, from_roots, is_reciprocal, recover_g, roots, substitute_laurent,
)

GOLDEN = (1 + math.sqrt(5)) / 2


def test_eval_poly_examples():
    assert eval_poly(Polynomial([1, -1, -1]), 0) == -1
    assert abs(eval_poly(Polynomial([1, 0, 1]), 1j)) == 0
    assert eval_poly(Polynomial([2, 3]), 1.5) == 6.0


def test_effective_degree_and_zero():
    p = Polynomial([0, 0, 2, 1])
    assert p.degree == 1
    assert Polynomial([0, 0]).is_zero
    assert Polynomial(3).degree == 0


def test_roots_golden_ratio():
    r = np.sort(roots(Polynomial([1, -1, -1])).roots.real)
    assert r == pytest.approx([1 - GOLDEN, GOLDEN], abs=1e-12)


def test_roots_conjugate_pair():
    r = roots(Polynomial([1, 0, 1])).roots
    assert sorted(r, key=lambda z: z.imag) == pytest.approx([-1j, 1j], abs=1e-14)


def test_from_roots_round_trip():
    rs = roots(from_roots(5, [2, 3]))
    assert np.sort(rs.roots.real) == pytest.approx([2, 3], abs=1e-12)
    assert rs.leading == 5


def test_from_roots_examples():
    assert from_roots(1, [1, -1]).coeffs == (1, 0, -1)
    assert np.allclose(from_roots(2, [1j, -1j]).coeffs, [2, 0, 2])
    p = from_roots(1, [GOLDEN, 1 - GOLDEN])
    assert np.allclose(p.coeffs, [1, -1, -1], atol=1e-12)


def test_degree_zero_has_no_roots():
    assert len(roots(Polynomial([4]))) == 0


def test_nonfinite_rejected():
    with pytest.raises(NonFiniteCoefficient):
        roots(Polynomial([1, float("nan")]))


@pytest.mark.parametrize("coeffs, expected", [([3, 7, 3], True), ([1, 1, -1], False), ([1, 1], True)])
def test_is_reciprocal(coeffs, expected):
    assert is_reciprocal(Polynomial(coeffs)) is expected


def test_substitute_laurent_examples():
    assert substitute_laurent(Polynomial([1, 0])).coeffs == (1, 0, 1)
    assert substitute_laurent(Polynomial([1, 0, -2])).coeffs == (1, 0, 0, 0, 1)
    assert substitute_laurent(Polynomial([1, 3])).coeffs == (1, 3, 1)


def test_recover_g_examples():
    assert recover_g(Polynomial([1, 0, 0, 0, 1])).coeffs == (1, 0, -2)
    assert recover_g(Polynomial([1, 3, 1])).coeffs == (1, 3)
    assert recover_g(Polynomial([1, 2, 1])).coeffs == (1, 2)


def test_recover_g_guards():
    with pytest.raises(NotReciprocal):
        recover_g(Polynomial([1, 2, 3]))
    with pytest.raises(OddDegree):
        recover_g(Polynomial([1, 1]))


def test_real_polynomials_give_conjugate_closed_roots():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = Polynomial(rng.normal(size=int(rng.integers(2, 10))).tolist())
        r = roots(p).roots
        assert np.sort_complex(r) == pytest.approx(np.sort_complex(r.conj()), abs=1e-9)
