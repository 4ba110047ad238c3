import math
from fractions import Fraction

import numpy as np
import pytest

from mdist.distfun import MAHLER, RECIPROCAL, treciprocal
from mdist.errors import ConvergenceViolation, OddSize, UsageError
from mdist.exactalg import S, determinant, pfaffian
from mdist.forms import (
    MonicFamily, QuadratureSpec, border_integral_numeric, bracket, gram_matrix,
    hermitian_form_numeric, lemma3_check, mahler_A_matrix_exact, orthogonalize_hermitian,
    rho_A_matrix_exact, skew_form_complex_numeric, skew_form_real_numeric, skew_matrix,
    skew_orthogonalize,
)
from mdist.moments import F_closed_mahler, F_closed_reciprocal

s = S
ONE, G = [1], [1, 0]
HALF = treciprocal(Fraction(1, 2))


def test_bracket_examples():
    assert bracket(2, 1) == 1
    assert bracket(0, 1) == -1
    assert bracket(2, 2) == -1 == -bracket(2, 1)


def test_lemma3_all_items():
    for j in range(1, 10):
        for k in range(1, 9):
            res = lemma3_check(j, k)
            assert all(v in (True, None) for v in res.values()), (j, k, res)
            assert res[1] and res[2]
            if j % 2:
                assert res[3]
                if k % 2 == 0:
                    assert res[4]


def test_monic_family_validation():
    with pytest.raises(UsageError):
        MonicFamily([[1], [2, 0]])
    fam = MonicFamily.shifted(3, 1)
    assert fam[2].coeffs == (1, -2, 1)
    assert MonicFamily.monomials(4).has_parity()
    assert not fam.has_parity()


def test_quadrature_spec_validation():
    with pytest.raises(UsageError):
        QuadratureSpec(rel_tol=0)


def test_hermitian_examples():
    assert hermitian_form_numeric(MAHLER, 2, ONE, ONE) == pytest.approx(2 * math.pi, rel=1e-9)
    assert abs(hermitian_form_numeric(MAHLER, 3, ONE, G)) < 1e-10
    assert hermitian_form_numeric(MAHLER, 3, G, G) == pytest.approx(1.5 * math.pi, rel=1e-9)


def test_skew_form_examples():
    assert skew_form_real_numeric(MAHLER, 3, ONE, G) == pytest.approx(20 / 3, rel=1e-9)
    assert skew_form_complex_numeric(MAHLER, 3, ONE, G) == pytest.approx(16 / 3, rel=1e-9)
    assert skew_form_real_numeric(MAHLER, 3, G, G) == pytest.approx(0, abs=1e-12)
    assert skew_form_complex_numeric(RECIPROCAL, 5, G, G) == pytest.approx(0, abs=1e-12)


def test_skew_antisymmetry_numeric():
    P, Q = [1, 2], [1, -1, 3]
    for kind in (MAHLER, RECIPROCAL):
        a = skew_form_real_numeric(kind, 6, P, Q) + skew_form_complex_numeric(kind, 6, P, Q)
        b = skew_form_real_numeric(kind, 6, Q, P) + skew_form_complex_numeric(kind, 6, Q, P)
        assert a == pytest.approx(-b, rel=1e-9)


def test_border_examples():
    assert border_integral_numeric(MAHLER, 2, ONE) == pytest.approx(4, rel=1e-9)
    assert border_integral_numeric(MAHLER, 4, G) == pytest.approx(0, abs=1e-12)
    assert border_integral_numeric(RECIPROCAL, 2, ONE) == pytest.approx(16 / 3, rel=1e-9)


def test_convergence_guard():
    with pytest.raises(ConvergenceViolation):
        hermitian_form_numeric(MAHLER, 1.0, G, G)
    with pytest.raises(ConvergenceViolation):
        border_integral_numeric(MAHLER, 1.5, G)


def test_parity_vanishing():
    for kind in (MAHLER, RECIPROCAL, HALF):
        for P, Q in (([1], [1, 0, 0]), ([1, 0], [1, 0, 0, 0])):
            val = skew_form_real_numeric(kind, 7, P, Q) + skew_form_complex_numeric(kind, 7, P, Q)
            assert abs(val) < 1e-10


def test_skew_matrix_examples():
    U = skew_matrix(MAHLER, 3, MonicFamily.monomials(2))
    assert U == pytest.approx(np.array([[0, 12], [-12, 0]]), rel=1e-9)
    U1 = skew_matrix(MAHLER, 2, MonicFamily.monomials(1))
    assert U1 == pytest.approx(np.array([[0, 4], [-4, 0]]), rel=1e-9)
    Ue = skew_matrix(MAHLER, None, MonicFamily.monomials(2), exact=True)
    assert Ue[0][1] == 4 * s / (s - 2)


def test_gram_examples():
    W = gram_matrix(MAHLER, 3, MonicFamily.monomials(2))
    assert W == pytest.approx(np.diag([1.5 * math.pi, 1.5 * math.pi]), abs=1e-9)
    W1 = gram_matrix(RECIPROCAL, 2, MonicFamily.monomials(1))
    assert W1[0, 0] == pytest.approx(4 * math.pi / 3, rel=1e-9)


def test_gram_hermitian_symmetry():
    fam = MonicFamily([[1], [1, 1j], [1, 0.5, -2j]])
    W = gram_matrix(HALF, 5, fam)
    assert W == pytest.approx(W.conj().T, abs=1e-12)


def test_mahler_A_exact():
    assert mahler_A_matrix_exact(2) == [[4 * s / (s - 2)]]
    A = mahler_A_matrix_exact(2)
    assert A[0][0](3) == 12
    for N in range(1, 7):
        assert determinant(mahler_A_matrix_exact(N)) == F_closed_mahler(N).expand()


def test_rho_A_exact():
    fac = rho_A_matrix_exact(2)
    assert fac.A == [[32 * s ** 2 / (3 * (s ** 2 - 4))]]
    assert fac.A[0][0](3) == Fraction(96, 5)
    fac4 = rho_A_matrix_exact(5)
    for j, row in enumerate(fac4.C):
        for m, c in enumerate(row):
            if m > j:
                assert c == 0
    for N in range(1, 6):
        assert determinant(rho_A_matrix_exact(N).A) == F_closed_reciprocal(N).expand()


@pytest.mark.parametrize("kind", [MAHLER, RECIPROCAL])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_exact_vs_quadrature_skew(kind, N):
    fam = MonicFamily.monomials(N)
    for sv in (N + 1, N + 2.5):
        num = skew_matrix(kind, sv, fam)
        ex = np.array(skew_matrix(kind, Fraction(sv), fam, exact=True), dtype=float)
        assert num == pytest.approx(ex, rel=1e-6, abs=1e-9)


def test_hermitian_orthogonalize_mahler():
    fam, norms = orthogonalize_hermitian(MAHLER, 3, 2)
    assert fam[1].coeffs == pytest.approx((1, 0), abs=1e-12)
    assert norms == pytest.approx([1.5 * math.pi, 1.5 * math.pi], rel=1e-9)
    W = gram_matrix(MAHLER, 3, MonicFamily.monomials(2))
    assert np.prod(norms) == pytest.approx(np.linalg.det(W), rel=1e-9)


def test_hermitian_orthogonalize_exact_rho():
    fam, norms = orthogonalize_hermitian(RECIPROCAL, None, 3, exact=True)
    assert [tuple(p.coeffs) for p in fam] == [(1,), (1, 0), (1, 0, -1)]
    assert norms[0].body == 2 * s / (s ** 2 - 1)
    assert norms[1].body == 2 * s / (s ** 2 - 4)


def test_skew_orthogonalize():
    fam, M = skew_orthogonalize(MAHLER, 3, 2)
    assert M[0] == pytest.approx(12, rel=1e-9)
    fam4, M4 = skew_orthogonalize(RECIPROCAL, 5.5, 4)
    U = skew_matrix(RECIPROCAL, 5.5, fam4)
    assert abs(U[0, 2]) < 1e-8 and abs(U[1, 3]) < 1e-8
    assert np.prod(M4) == pytest.approx(pfaffian(skew_matrix(RECIPROCAL, 5.5, MonicFamily.monomials(4))),
                                        rel=1e-8)
    with pytest.raises(OddSize):
        skew_orthogonalize(MAHLER, 5, 3)
