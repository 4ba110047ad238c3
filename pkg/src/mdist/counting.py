"""Counting reciprocal integer polynomials of bounded Mahler measure, and
Monte Carlo estimates of distribution functions and star-body volumes.

A nonzero reciprocal ``f`` in ``Z[x]`` of even degree ``2d`` is
``x^d g(x + 1/x)`` for a unique ``g`` in ``Z[x]`` of degree ``d`` with
``mu(f) = rho(g)``; odd-degree ones are ``(x + 1)`` times an even-degree one
with the same measure.  Counting ``f`` therefore reduces to counting lattice
points ``g`` in dilates of the reciprocal star body.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .distfun import MAHLER, RECIPROCAL, RootFunctionKind, distance, root_bound
from .errors import BudgetExceeded, UsageError
from .moments import F_closed_reciprocal
from .polyroots import Polynomial, substitute_laurent

TIE_TOL = 1e-9
MAX_N, MAX_T = 5, 100


def default_threads() -> int:
    env = os.environ.get("MDIST_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError("MDIST_THREADS must be an integer") from exc
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# leading constants


def table_coefficients() -> dict[int, Fraction]:
    """Leading coefficients ``c_N`` of ``#M_N(T) ~ c_N T^(J+1)``, ``N = 0..11``."""
    out = {}
    for N in range(12):
        J = N // 2
        if J == 0:
            vol = Fraction(2)  # the interval [-1, 1]
        else:
            F, _ = F_closed_reciprocal(J).exact_value(J + 1)
            vol = 2 * F / (J + 1)
        out[N] = vol * (2 if N % 2 else 1)
    return out


def predicted_count(N: int, T: float) -> float:
    if N < 0:
        raise UsageError("N must be nonnegative")
    J = N // 2
    if N <= 11:
        c = table_coefficients()[N]
    else:
        F, _ = F_closed_reciprocal(J).exact_value(J + 1)
        c = 2 * F / (J + 1) * (2 if N % 2 else 1)
    return float(c) * float(T) ** (J + 1)


# ---------------------------------------------------------------------------
# exhaustive enumeration


@dataclass(frozen=True)
class CountReport:
    N: int
    T: float
    exact_count: int
    predicted_leading: Fraction
    predicted: float
    elapsed: float
    by_degree: dict = field(default_factory=dict)


def _coeff_box(d: int, P: float) -> list[int]:
    """Bounds on ``|g_k / a|`` for monic-normalized ``g`` with ``rho <= P``.

    With ``phi >= 1`` and ``|g| <= phi + 1`` for every root, the elementary
    symmetric function ``e_k(|g_i|)`` is largest when one root carries the
    whole budget ``P`` and the others sit at ``|g| = 2``.
    """
    out = []
    for k in range(1, d + 1):
        b = (P + 1) * math.comb(d - 1, k - 1) * 2 ** (k - 1) + math.comb(d - 1, k) * 2 ** k
        out.append(b)
    return out


def _rho_values(a: int, G: np.ndarray) -> np.ndarray:
    """``rho(a x^d + G[:,0] x^(d-1) + ...)`` for each row of ``G``."""
    m, d = G.shape
    C = np.zeros((m, d, d))
    C[:, 0, :] = -G / a
    if d > 1:
        C[:, np.arange(1, d), np.arange(d - 1)] = 1.0
    z = np.linalg.eigvals(C)
    return abs(a) * np.prod(np.asarray(RECIPROCAL.phi(z)), axis=1)


def _rho_exact_check(a: int, row) -> float:
    """Measure of ``x^d g(x + 1/x)`` computed from exact integer coefficients,
    which keeps repeated unimodular roots well conditioned."""
    g = Polynomial([a, *(int(x) for x in row)])
    return distance(MAHLER, substitute_laurent(g, 1))


def _count_degree(d: int, T: float, threads: int) -> int:
    """``#{g in Z[x] : deg g = d, rho(g) <= T}``."""
    Tf = float(T)
    amax = math.floor(Tf + TIE_TOL)
    if d == 0:
        return 2 * amax
    thr = Tf + TIE_TOL

    def work(a: int) -> int:
        P = Tf / a
        box = [math.floor(b * a + 1e-9) for b in _coeff_box(d, P)]
        ranges = [np.arange(-b, b + 1) for b in box]
        last = ranges[-1]
        count = 0
        for head in itertools.product(*ranges[:-1]):
            G = np.empty((len(last), d))
            G[:, : d - 1] = head
            G[:, d - 1] = last
            vals = _rho_values(a, G)
            near = np.abs(vals - Tf) <= 1e-6 * max(Tf, 1.0)
            count += int(np.count_nonzero((vals <= thr) & ~near))
            for i in np.nonzero(near)[0]:
                if _rho_exact_check(a, G[i]) <= thr:
                    count += 1
        return count

    a_values = range(1, amax + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(work, a_values))
    else:
        total = sum(work(a) for a in a_values)
    return 2 * total  # g and -g


def enumerate_reciprocal(N: int, T: float, threads: int | None = None,
                         force: bool = False) -> CountReport:
    """Exact ``#{f in Z[x] reciprocal, f != 0, deg f <= N, mu(f) <= T}``."""
    if N < 0 or T <= 0:
        raise UsageError("need N >= 0 and T > 0")
    if not force and (N > MAX_N or T > MAX_T):
        raise BudgetExceeded(f"N <= {MAX_N} and T <= {MAX_T} unless forced")
    threads = threads or default_threads()
    start = time.perf_counter()
    per_d = {d: _count_degree(d, T, threads) for d in range(N // 2 + 1)}
    by_degree = {}
    for n in range(N + 1):
        by_degree[n] = per_d[n // 2]  # odd n: (x + 1) times degree n - 1
    total = sum(by_degree.values())
    J = N // 2
    lead = table_coefficients()[N] if N <= 11 else Fraction(0)
    return CountReport(N, float(T), total, lead, float(lead) * float(T) ** (J + 1),
                       time.perf_counter() - start, by_degree)


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class MCEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


SHARD = 1 << 17


def _stream(seed: int, shard: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed + shard) % 2 ** 64))


def _batch_monic_distance(kind: RootFunctionKind, B: np.ndarray) -> np.ndarray:
    """``Phi(x^N + B[:,0] x^(N-1) + ...)`` row by row."""
    m, N = B.shape
    C = np.zeros((m, N, N), dtype=B.dtype)
    C[:, 0, :] = -B
    if N > 1:
        C[:, np.arange(1, N), np.arange(N - 1)] = 1.0
    z = np.linalg.eigvals(C)
    return np.prod(np.asarray(kind.phi(z)).reshape(m, N), axis=1)


def _run_shards(n: int, seed: int, threads: int | None, sampler) -> int:
    shards = [(i, min(SHARD, n - i * SHARD)) for i in range(math.ceil(n / SHARD))]
    threads = threads or default_threads()

    def one(job):
        i, size = job
        return sampler(_stream(seed, i), size)

    if threads > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(one, shards))
    return sum(one(j) for j in shards)


def _estimate(hits: int, n: int, volume: float, seed: int) -> MCEstimate:
    p = hits / n
    return MCEstimate(volume * p, volume * math.sqrt(max(p * (1 - p), 0.0) / n), n, seed)


def mc_distribution(kind: RootFunctionKind, N: int, xi: float, samples: int = 10 ** 6,
                    seed: int = 0, field: str = "real", threads: int | None = None) -> MCEstimate:
    """Measure of ``{b : Phi(x^N + b_1 x^(N-1) + ... + b_N) <= xi}``.

    Samples the box ``|b_k| <= C(N, k) R^k`` (real and imaginary parts
    separately for ``field="complex"``) with ``R`` the root bound at ``xi``.
    """
    if N < 1 or xi <= 0 or samples < 1:
        raise UsageError("need N >= 1, xi > 0 and samples >= 1")
    if field not in ("real", "complex"):
        raise UsageError("field must be 'real' or 'complex'")
    R = root_bound(kind, xi)
    half = np.array([math.comb(N, k) * R ** k for k in range(1, N + 1)])
    cplx = field == "complex"
    volume = float(np.prod(2 * half)) ** (2 if cplx else 1)

    def sampler(rng, size):
        B = rng.uniform(-1.0, 1.0, size=(size, N)) * half
        if cplx:
            B = B + 1j * rng.uniform(-1.0, 1.0, size=(size, N)) * half
        return int(np.count_nonzero(_batch_monic_distance(kind, B) <= xi))

    return _estimate(_run_shards(samples, seed, threads, sampler), samples, volume, seed)


def _star_box(kind: RootFunctionKind, N: int) -> np.ndarray:
    """Half-widths for ``(b_1..b_N)`` when ``|a| <= 1`` and ``Phi <= 1``.

    Every root obeys ``|g| <= phi(g) + c`` (``c = t`` for the built-ins,
    ``R0 + 1/kappa`` in general after scaling), and maximizing
    ``|a| e_k(phi_i + c)`` under ``prod phi_i <= 1/|a|`` gives
    ``C(N, k) (1 + c)^k``.
    """
    if kind.is_builtin:
        c = 1.0 + kind.t_value
    else:
        kappa, R0 = kind.growth
        c = R0 + 1.0 / kappa
    return np.array([math.comb(N, k) * c ** k for k in range(1, N + 1)])


def mc_star_volume(kind: RootFunctionKind, N: int, samples: int = 10 ** 6, seed: int = 0,
                   threads: int | None = None) -> MCEstimate:
    """Volume of ``{(a, b) in R^(N+1) : Phi(a x^N + b_1 x^(N-1) + ...) <= 1}``."""
    if N < 1 or samples < 1:
        raise UsageError("need N >= 1 and samples >= 1")
    half = _star_box(kind, N)
    volume = 2.0 * float(np.prod(2 * half))

    def sampler(rng, size):
        a = rng.uniform(-1.0, 1.0, size=size)
        B = rng.uniform(-1.0, 1.0, size=(size, N)) * half
        a = np.where(a == 0, np.finfo(float).tiny, a)
        vals = np.abs(a) * _batch_monic_distance(kind, B / a[:, None])
        return int(np.count_nonzero(vals <= 1.0))

    return _estimate(_run_shards(samples, seed, threads, sampler), samples, volume, seed)
