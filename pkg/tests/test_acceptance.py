"""End-to-end acceptance checks.

Each test prints one ``[PASS]``/``[FAIL]`` line; the lines are repeated in
the pytest terminal summary under "acceptance".
"""

import math
import time
from fractions import Fraction

import numpy as np

from mdist.counting import enumerate_reciprocal, mc_distribution, mc_star_volume, predicted_count
from mdist.counting import table_coefficients
from mdist.distfun import MAHLER, RECIPROCAL, treciprocal
from mdist.exactalg import determinant
from mdist.forms import mahler_A_matrix_exact, rho_A_matrix_exact
from mdist.moments import (
    F_closed_mahler, F_closed_reciprocal, F_numeric, F_numeric_det_route, H_closed_mahler,
    H_closed_reciprocal, H_closed_treciprocal, H_numeric, _F_numerator_fit, closed_form,
    distribution_from_moment, rootspace_oracle_F, rootspace_oracle_H, trajectory_F, trajectory_H,
)
from mdist.verify import axiom_suite, pfaffian_suite

HALF = treciprocal(Fraction(1, 2))
TABLE = [Fraction(2), Fraction(4), Fraction(16, 3), Fraction(32, 3), Fraction(64, 5),
         Fraction(128, 5), Fraction(131072, 4725), Fraction(262144, 4725),
         Fraction(655360, 11907), Fraction(1310720, 11907),
         Fraction(2147483648, 21223125), Fraction(4294967296, 21223125)]
GRID = [Fraction(k, 20) for k in range(1, 20)]


def test_counting_table(record):
    start = time.perf_counter()
    got = table_coefficients()
    elapsed = time.perf_counter() - start
    bad = [N for N in range(12) if got[N] != TABLE[N]]
    record(1, not bad and elapsed < 1.0,
           f"12 leading constants exact, {len(bad)} mismatches, {elapsed:.3f}s")


def test_closed_form_consistency(record):
    start = time.perf_counter()
    bad = []
    for N in range(1, 11):
        if H_closed_treciprocal(N, 0).expand() != H_closed_mahler(N).expand():
            bad.append(f"H t=0 N={N}")
        if H_closed_treciprocal(N, 1).expand() != H_closed_reciprocal(N).expand():
            bad.append(f"H t=1 N={N}")
    for N in range(1, 9):
        if determinant(mahler_A_matrix_exact(N)) != F_closed_mahler(N).expand():
            bad.append(f"det mahler N={N}")
        if determinant(rho_A_matrix_exact(N).A) != F_closed_reciprocal(N).expand():
            bad.append(f"det reciprocal N={N}")
    elapsed = time.perf_counter() - start
    record(2, not bad and elapsed < 30.0,
           f"t-endpoints N<=10 and exact determinants N<=8, failures {bad or 'none'}, {elapsed:.2f}s")


def test_pfaffian_identities(record):
    checks = pfaffian_suite(trials=200, seed=0)
    failed = [c.name for c in checks if not c.passed]
    record(3, not failed, f"{len(checks)} identities x 200 exact trials, failed {failed or 'none'}")


def test_quadrature_vs_exact(record):
    worst, slowest = 0.0, 0.0
    for kind in (MAHLER, RECIPROCAL):
        for N in range(1, 5):
            for s in (N + 1, N + 2.5):
                F = float(closed_form("F", kind, N)(s))
                H = float(closed_form("H", kind, N)(s))
                for fn, ref in ((F_numeric, F), (F_numeric_det_route, F), (H_numeric, H)):
                    start = time.perf_counter()
                    val = fn(kind, s, N)
                    slowest = max(slowest, time.perf_counter() - start)
                    worst = max(worst, abs(val / ref - 1))
    record(4, worst <= 1e-6 and slowest < 60.0,
           f"Pf, det and Gram routes vs closed forms, worst rel {worst:.1e}, slowest {slowest:.2f}s")


def test_rootspace_oracle(record):
    start = time.perf_counter()
    worst = 0.0
    for kind in (MAHLER, RECIPROCAL, HALF):
        for N in range(1, 4):
            s = N + 1
            worst = max(worst,
                        abs(rootspace_oracle_F(kind, s, N) / F_numeric(kind, s, N) - 1),
                        abs(rootspace_oracle_H(kind, s, N) / H_numeric(kind, s, N) - 1))
    elapsed = time.perf_counter() - start
    record(5, worst <= 1e-4 and elapsed < 600.0,
           f"oracle vs Pf/Gram for mu, rho, mu_1/2 at N<=3, worst rel {worst:.1e}, {elapsed:.1f}s")


def test_enumeration_vs_asymptotics(record):
    start = time.perf_counter()
    ok = True
    parts = []
    for T in (5, 10, 20):
        n = enumerate_reciprocal(1, T).exact_count
        ok &= n == 4 * math.floor(T)
        parts.append(f"#M1({T})={n}")
    for N in (2, 3):
        dev = {T: abs(enumerate_reciprocal(N, T).exact_count / predicted_count(N, T) - 1)
               for T in (10, 40)}
        ok &= dev[40] <= 0.15 and dev[40] < dev[10]
        parts.append(f"N={N} dev {dev[10]:.4f}->{dev[40]:.4f}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300.0
    record(6, ok, f"{', '.join(parts)}, {elapsed:.1f}s")


def test_distribution_functions(record):
    ok = True
    worst = 0.0
    rho1 = distribution_from_moment(F_closed_reciprocal(1))
    for xi in (1.5, 2.0, 4.0):
        for kind, exact in ((MAHLER, 2 * xi), (RECIPROCAL, rho1(xi))):
            est = mc_distribution(kind, 1, xi, samples=10 ** 6, seed=1)
            dev = abs(est.value - exact)
            ok &= dev <= 3 * est.std_error
            if est.std_error:
                worst = max(worst, dev / est.std_error)
        ok &= math.isclose(rho1(xi), 2 * xi + 2 / xi)
    for kind, N, exact in ((RECIPROCAL, 1, 16 / 3), (MAHLER, 1, 4.0), (MAHLER, 2, 8.0)):
        est = mc_star_volume(kind, N, samples=10 ** 6, seed=1)
        dev = abs(est.value - exact)
        ok &= dev <= 3 * est.std_error
        if est.std_error:
            worst = max(worst, dev / est.std_error)
    record(7, ok, f"MC distributions and star volumes at 1e6 samples, worst {worst:.2f} sigma")


def test_trajectories(record):
    N = 6
    pts = trajectory_H(N, GRID)
    worst, monotone, closed = 0.0, True, True
    for n in range(1, N + 1):
        zs = sorted((p.t, p.location) for p in pts if p.feature == "zero" and p.index == n)
        for t, z in zs:
            u = float(t) ** (2 * n)
            worst = max(worst, abs(z - (-n * (1 + u) / (1 - u))))
            # the same zero read off the canonical closed form
            exact = {r for r, _ in H_closed_treciprocal(N, t).zeros()}
            closed &= any(abs(float(r) - z.real) <= 1e-12 for r in exact)
        dist = [abs(z + n) for _, z in zs]
        monotone &= all(a < b for a, b in zip(dist, dist[1:]))

    ts = [Fraction(k, 10) for k in range(1, 10)]
    F2 = trajectory_F(2, ts)
    one_each, resid = True, 0.0
    for t in ts:
        zeros = [p.location.real for p in F2 if p.t == t and p.feature == "zero" and p.index > 0]
        one_each &= len(zeros) == 1 and -2 < zeros[0] < 0
        if zeros:
            coef = _F_numerator_fit(t, 2, None)
            resid = max(resid, abs(np.polyval(coef, zeros[0])) / abs(np.polyval(coef, -1.0)))
    ok = worst <= 1e-12 and closed and monotone and one_each and resid <= 1e-4
    record(8, ok, f"H_6 zeros max err {worst:.1e}, match closed form {closed}, pole approach monotone {monotone}, "
                  f"F_2 one zero per t {one_each}, residual {resid:.1e}")


def test_axioms(record):
    checks = axiom_suite(trials=500, seed=0)
    record(9, all(c.passed for c in checks),
           "; ".join(f"{c.name}: {c.detail}" for c in checks))
