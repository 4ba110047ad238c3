import math
from fractions import Fraction

import numpy as np
import pytest

from mdist.distfun import MAHLER, RECIPROCAL, custom, treciprocal
from mdist.errors import PatternViolation, SymmetryViolation, UsageError
from mdist.exactalg import S
from mdist.forms import MonicFamily
from mdist.moments import (
    C_N, F_closed_mahler, F_closed_reciprocal, F_numeric, F_numeric_det_route, H_closed_mahler,
    H_closed_reciprocal, H_closed_treciprocal, H_numeric, PiMultiple, closed_form,
    distribution_from_moment, moment_limit, rootspace_oracle_F, rootspace_oracle_H,
    star_volume_complex, star_volume_real, trajectory_F, trajectory_H, v_N,
)

s = S
HALF = treciprocal(Fraction(1, 2))


def test_H_mahler():
    assert H_closed_mahler(1).expand() == s / (s - 1)
    assert H_closed_mahler(1).pi_power == 1
    c, k = H_closed_mahler(2).exact_value(3)
    assert (c, k) == (Fraction(9, 4), 2)


def test_F_mahler():
    assert F_closed_mahler(1).expand() == 2 * s / (s - 1)
    assert F_closed_mahler(2).expand() == 4 * s / (s - 2)
    assert F_closed_mahler(3).expand() == Fraction(16, 3) * s ** 2 / ((s - 3) * (s - 1))
    assert C_N(3) == Fraction(16, 3)


def test_reciprocal_closed_forms():
    assert F_closed_reciprocal(1).expand() == 4 * s ** 2 / (s ** 2 - 1)
    assert F_closed_reciprocal(1).exact_value(2) == (Fraction(16, 3), 0)
    assert v_N(3) == Fraction(1024, 45)
    assert F_closed_reciprocal(3).exact_value(4)[0] == Fraction(262144, 4725)
    assert H_closed_reciprocal(1).expand() == 2 * s / (s ** 2 - 1)


def test_treciprocal_endpoints():
    for N in range(1, 11):
        assert H_closed_treciprocal(N, 0).expand() == H_closed_mahler(N).expand()
        assert H_closed_treciprocal(N, 1).expand() == H_closed_reciprocal(N).expand()


def test_treciprocal_half():
    assert H_closed_treciprocal(1, Fraction(1, 2)).exact_value(2) == (Fraction(11, 6), 1)


def test_reciprocal_parity():
    for N in range(1, 8):
        F = F_closed_reciprocal(N).expand()
        assert F.is_even()
        H = H_closed_reciprocal(N).expand()
        assert H.is_even() or H.is_odd()


def test_pole_census():
    for N in range(1, 9):
        poles = sorted(p for p, _ in F_closed_reciprocal(N).poles())
        expected = sorted({sgn * (N - 2 * j) for j in range(N // 2 + 1) for sgn in (1, -1)} - {0})
        assert poles == expected
        assert all(m == 1 for _, m in F_closed_reciprocal(N).poles())


def test_numeric_examples():
    assert F_numeric(MAHLER, 3, 2) == pytest.approx(12, rel=1e-8)
    assert F_numeric(RECIPROCAL, 3, 2) == pytest.approx(96 / 5, rel=1e-8)
    assert H_numeric(MAHLER, 3, 2) == pytest.approx(9 * math.pi ** 2 / 4, rel=1e-8)
    assert F_numeric_det_route(MAHLER, 3, 2) == pytest.approx(12, rel=1e-8)
    assert F_numeric_det_route(RECIPROCAL, 4.5, 3) == pytest.approx(float(F_closed_reciprocal(3)(4.5)), rel=1e-6)
    assert F_numeric_det_route(HALF, 3, 2) == pytest.approx(F_numeric(HALF, 3, 2), rel=1e-6)


@pytest.mark.parametrize("kind", [MAHLER, RECIPROCAL])
def test_family_invariance(kind):
    N, sv = 3, 4.5
    ref_F, ref_H = F_numeric(kind, sv, N), H_numeric(kind, sv, N)
    for fam in (MonicFamily.shifted(N, 1), MonicFamily([[1], [1, 0.5], [1, -0.25, -1]])):
        assert F_numeric(kind, sv, N, fam) == pytest.approx(ref_F, rel=1e-6)
        assert H_numeric(kind, sv, N, fam) == pytest.approx(ref_H, rel=1e-6)


def test_det_route_guards():
    with pytest.raises(PatternViolation):
        F_numeric_det_route(MAHLER, 4, 2, MonicFamily.shifted(2, 1))
    lopsided = custom(lambda g: np.maximum(1.0, np.abs(np.asarray(g) - 0.5)), kappa=0.5, R0=2.0)
    with pytest.raises(SymmetryViolation):
        F_numeric_det_route(lopsided, 4, 2)


def test_oracle_examples():
    assert rootspace_oracle_F(MAHLER, 2, 1) == pytest.approx(4, rel=1e-8)
    assert rootspace_oracle_H(MAHLER, 2, 1) == pytest.approx(2 * math.pi, rel=1e-8)
    assert rootspace_oracle_F(MAHLER, 3, 2) == pytest.approx(12, abs=1e-4)
    with pytest.raises(UsageError):
        rootspace_oracle_H(MAHLER, 6, 4)


def test_star_volumes():
    assert star_volume_real(MAHLER, 1) == 4
    assert star_volume_real(RECIPROCAL, 1) == Fraction(16, 3)
    assert star_volume_real(RECIPROCAL, 4) == Fraction(655360, 11907)
    assert star_volume_real(RECIPROCAL, 2, route="numeric") == pytest.approx(12.8, rel=1e-8)
    vc = star_volume_complex(MAHLER, 1)
    assert isinstance(vc, PiMultiple) and vc.coefficient == 1 and vc.pi_power == 2
    assert star_volume_complex(MAHLER, 1, route="numeric") == pytest.approx(math.pi ** 2, rel=1e-8)


def test_limits():
    assert moment_limit(F_closed_mahler(3)) == Fraction(16, 3)
    assert moment_limit(F_closed_reciprocal(2)) == Fraction(32, 3)
    assert moment_limit(H_closed_mahler(3)) == Fraction(1, 6)


def test_distribution_inversion():
    f1 = distribution_from_moment(F_closed_mahler(1))
    assert f1(3.0) == pytest.approx(6.0)
    f2 = distribution_from_moment(F_closed_mahler(2))
    assert f2(2.0) == pytest.approx(16.0)
    fr = distribution_from_moment(F_closed_reciprocal(1))
    assert fr(2.0) == pytest.approx(5.0)
    assert fr.mellin() == F_closed_reciprocal(1).expand() / s


def test_closed_form_dispatch():
    with pytest.raises(UsageError):
        closed_form("F", HALF, 2)
    assert closed_form("H", HALF, 1).expand() == H_closed_treciprocal(1, Fraction(1, 2)).expand()


def test_trajectory_H():
    pts = trajectory_H(2, [Fraction(1, 2)])
    zeros = {p.index: p.location for p in pts if p.feature == "zero"}
    assert zeros[1] == pytest.approx(-5 / 3, abs=1e-14)
    origin = [p for p in pts if p.feature == "zero" and p.index == 0]
    assert origin[0].multiplicity == 2
    assert len([p for p in pts if p.feature == "pole"]) == 4
    near0 = trajectory_H(1, [Fraction(1, 1000)])[1].location.real
    near1 = trajectory_H(1, [Fraction(999, 1000)])[1].location.real
    assert near0 == pytest.approx(-1, abs=1e-5) and near1 < -500


def test_trajectory_F_N2():
    pts = trajectory_F(2, [Fraction(1, 100), Fraction(9, 10), Fraction(99, 100)])
    z = [p.location.real for p in pts if p.feature == "zero" and p.index == 1]
    assert len(z) == 3
    assert -2 < z[0] < -1.99
    assert -2 < z[1] < 0
    assert -0.05 < z[2] < 0


def test_trajectory_guards():
    with pytest.raises(UsageError):
        trajectory_F(3, [0.5])
    with pytest.raises(UsageError):
        trajectory_H(2, [1])
