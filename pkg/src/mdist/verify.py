"""Self-check suites run by ``mdist verify``.

Each suite returns a list of :class:`Check` records; a suite passes when
every record does.  Randomized suites draw from a seeded ``random.Random``
so repeated runs are identical.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distfun import MAHLER, RECIPROCAL, asymptotic_check, distance, treciprocal
from .exactalg import (
    checkerboard_pfaffian,
    determinant,
    pfaffian,
    pfaffian_definition,
    pfaffian_restricted,
    pfaffian_sum_expansion,
    sign_product,
    sign_product_matrix,
    vandermonde,
    vandermonde_product,
)
from .polyroots import Polynomial

TABLE = {
    0: Fraction(2), 1: Fraction(4), 2: Fraction(16, 3), 3: Fraction(32, 3),
    4: Fraction(64, 5), 5: Fraction(128, 5), 6: Fraction(131072, 4725),
    7: Fraction(262144, 4725), 8: Fraction(655360, 11907), 9: Fraction(1310720, 11907),
    10: Fraction(2147483648, 21223125), 11: Fraction(4294967296, 21223125),
}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


# ---------------------------------------------------------------------------


def table_suite() -> list[Check]:
    from .counting import table_coefficients

    got = table_coefficients()
    out = [Check(f"c_{N} = {TABLE[N]}", got[N] == TABLE[N], str(got[N])) for N in TABLE]
    out.append(Check("c_(2J+1) = 2 c_(2J)", all(got[2 * J + 1] == 2 * got[2 * J] for J in range(6))))
    return out


# ---------------------------------------------------------------------------


def _antisym(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> list[list[int]]:
    M = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            M[j][k] = rng.randint(lo, hi)
            M[k][j] = -M[j][k]
    return M


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pfaffian_suite(trials: int = 200, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    fails = dict.fromkeys(
        ["Pf^2 = det", "sum expansion", "restricted permutations", "checkerboard",
         "permutation covariance", "sign product", "Vandermonde product"], 0)
    for _ in range(trials):
        n = 2 * rng.randint(1, 5)
        M = _antisym(rng, n)
        if pfaffian(M) ** 2 != determinant(M):
            fails["Pf^2 = det"] += 1

        n = rng.choice([4, 6])
        R, C = _antisym(rng, n), _antisym(rng, n)
        S = [[R[j][k] + C[j][k] for k in range(n)] for j in range(n)]
        if pfaffian_sum_expansion(R, C) != pfaffian(S):
            fails["sum expansion"] += 1

        n = 2 * rng.randint(1, 3)
        M = _antisym(rng, n)
        if pfaffian_restricted(M) != pfaffian_definition(M):
            fails["restricted permutations"] += 1

        U = _antisym(rng, n)
        for j in range(n):
            for k in range(n):
                if (j - k) % 2 == 0:
                    U[j][k] = 0
        if checkerboard_pfaffian(U) != pfaffian(U):
            fails["checkerboard"] += 1

        p = list(range(n))
        rng.shuffle(p)
        PUP = [[M[p[j]][p[k]] for k in range(n)] for j in range(n)]
        if pfaffian(PUP) != _perm_sign(p) * pfaffian(M):
            fails["permutation covariance"] += 1

        L = rng.randint(1, 6)
        alpha = rng.sample(range(-50, 50), L)
        alpha = [Fraction(a, rng.randint(1, 7)) for a in alpha]
        if len(set(alpha)) == L and pfaffian(sign_product_matrix(alpha)) != sign_product(alpha):
            fails["sign product"] += 1

        nodes = [rng.randint(-9, 9) for _ in range(rng.randint(1, 6))]
        if determinant(vandermonde(nodes)) != vandermonde_product(nodes):
            fails["Vandermonde product"] += 1
    return [Check(f"{k} ({trials} trials)", v == 0, f"{v} failures") for k, v in fails.items()]


# ---------------------------------------------------------------------------


def routes_suite(N: int = 3, rel: float = 1e-6, oracle_rel: float = 1e-4) -> list[Check]:
    from .moments import (
        F_numeric, F_numeric_det_route, H_numeric, closed_form,
        rootspace_oracle_F, rootspace_oracle_H,
    )

    out = []
    s = N + 1
    for kind in (MAHLER, RECIPROCAL):
        for moment in ("F", "H"):
            exact = float(closed_form(moment, kind, N)(s))
            routes = {}
            if moment == "F":
                routes["pfaffian"] = F_numeric(kind, s, N)
                if N >= 2:
                    routes["determinant"] = F_numeric_det_route(kind, s, N)
            else:
                routes["gram"] = H_numeric(kind, s, N)
            for name, val in routes.items():
                err = abs(val / exact - 1)
                out.append(Check(f"{moment}_{N}({kind.name}; {s}) {name}", err <= rel, f"rel {err:.2e}"))
            if N <= 3:
                orc = (rootspace_oracle_F if moment == "F" else rootspace_oracle_H)(kind, s, N)
                err = abs(orc / exact - 1)
                out.append(Check(f"{moment}_{N}({kind.name}; {s}) oracle", err <= oracle_rel,
                                 f"rel {err:.2e}"))
    return out


# ---------------------------------------------------------------------------


def _rand_poly(rng: np.random.Generator, deg: int) -> list[float]:
    c = rng.normal(size=deg + 1)
    c[0] = c[0] if abs(c[0]) > 0.1 else 1.0
    return c.tolist()


def axiom_suite(trials: int = 500, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    kinds = [MAHLER, RECIPROCAL, treciprocal(Fraction(1, 2)), treciprocal(Fraction(1, 10))]
    fails = {"multiplicativity": 0, "homogeneity": 0, "asymptotics": 0}
    worst = {"multiplicativity": 0.0, "homogeneity": 0.0, "asymptotics": 0.0}
    for i in range(trials):
        kind = kinds[i % len(kinds)]
        f = _rand_poly(rng, int(rng.integers(0, 7)))
        g = _rand_poly(rng, int(rng.integers(0, 7)))
        fg = np.convolve(f, g).tolist()
        df, dg, dfg = (distance(kind, Polynomial(p)) for p in (f, g, fg))
        e = abs(dfg / (df * dg) - 1)
        worst["multiplicativity"] = max(worst["multiplicativity"], e)
        fails["multiplicativity"] += e > 1e-9

        w = complex(*rng.normal(size=2))
        e = abs(distance(kind, Polynomial([w * c for c in f])) / (abs(w) * df) - 1)
        worst["homogeneity"] = max(worst["homogeneity"], e)
        fails["homogeneity"] += e > 1e-9

        radius = 10.0 ** rng.uniform(4, 8)
        dev = asymptotic_check(kind, radius, samples=16)
        # phi(g) = |g| + O(1/|g|) for the built-ins
        e = dev * radius
        worst["asymptotics"] = max(worst["asymptotics"], e)
        fails["asymptotics"] += e > 2.0
    return [Check(f"{k} ({trials} trials)", fails[k] == 0, f"worst {worst[k]:.2e}") for k in fails]


SUITES = {
    "table": lambda args: table_suite(),
    "pfaffian": lambda args: pfaffian_suite(),
    "routes": lambda args: routes_suite(args.N),
    "axioms": lambda args: axiom_suite(),
}
