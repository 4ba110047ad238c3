"""Hermitian and skew-symmetric bilinear forms attached to a root function.

For a root function ``phi`` and ``s`` in the convergence region:

* hermitian:   ``<P|Q> = int_C phi(g)^(-2s) P(g) conj(Q(g)) dA``
* real skew:   ``<P,Q>_R = int_R int_R w(x) w(y) P(x) Q(y) sgn(y - x)``
  with ``w = phi^(-s)``
* complex skew: ``<P,Q>_C = 4 int_{Im b > 0} w(b) w(conj b) Im(P(conj b) Q(b)) dA``
* combined skew form ``<P,Q> = <P,Q>_R + <P,Q>_C``

Numerically every form is an adaptive Gauss-Kronrod integral on a truncated
domain; the discarded tail is bounded in closed form from the growth
constants of ``phi``.  For Mahler's measure and the reciprocal measure the
same forms are available exactly as rational functions of ``s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .distfun import RootFunctionKind
from .errors import (
    ConvergenceViolation,
    DegenerateForm,
    OddSize,
    ToleranceNotReached,
    UsageError,
)
from .exactalg import (
    Poly,
    RationalFunction,
    S,
    ScaledRationalFunction,
    as_fraction,
)
from .polyroots import Polynomial
from .quadrature import NODES, WG, WK, _EPS, gauss_legendre, gk_batch


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200000
    truncation_slack: float = 10.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0 or self.truncation_slack <= 0:
            raise UsageError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise UsageError("max_subdivisions must be positive")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class MonicFamily:
    """Monic polynomials ``P_1..P_N`` with ``deg P_n = n - 1``."""

    polys: tuple[Polynomial, ...]

    def __init__(self, polys: Sequence):
        ps = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in polys)
        for n, p in enumerate(ps):
            if len(p.coeffs) != n + 1 or p.coeffs[0] != 1:
                raise UsageError(f"entry {n + 1} must be monic of degree {n}")
        object.__setattr__(self, "polys", ps)

    @classmethod
    def monomials(cls, N: int) -> MonicFamily:
        return cls([[1] + [0] * n for n in range(N)])

    @classmethod
    def shifted(cls, N: int, c) -> MonicFamily:
        """``(g - c)^(n-1)``: a non-monomial family with the same forms' determinants."""
        out = []
        for n in range(N):
            out.append([math.comb(n, i) * (-c) ** i for i in range(n + 1)])
        return cls(out)

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence]) -> MonicFamily:
        """Build from ascending coefficient rows (``rows[n][a]`` multiplies ``g^a``)."""
        return cls([list(r[: n + 1])[::-1] for n, r in enumerate(rows)])

    @property
    def N(self) -> int:
        return len(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def coefficient_rows(self) -> list[list]:
        """Lower-triangular rows, ``rows[n][a]`` = coefficient of ``g^a`` in ``P_{n+1}``."""
        N = self.N
        rows = []
        for n, p in enumerate(self.polys):
            asc = list(p.coeffs[::-1])
            rows.append(asc + [0] * (N - n - 1))
        return rows

    def arrays(self) -> list[np.ndarray]:
        return [p.as_array() for p in self.polys]

    def has_parity(self) -> bool:
        """True when every ``P_n`` is even or odd according to its degree."""
        for n, p in enumerate(self.polys):
            asc = p.coeffs[::-1]
            if any(c != 0 for a, c in enumerate(asc) if (a - n) % 2):
                return False
        return True


# ---------------------------------------------------------------------------
# bracket coefficients and the binomial identities built on them


def _binom(M: int, m: int) -> int:
    return math.comb(M, m) if 0 <= m <= M else 0


def bracket(M: int, m: int) -> int:
    """``C(M, m) - C(M, m - 1)`` with out-of-range binomials equal to 0."""
    return _binom(M, m) - _binom(M, m - 1)


def lemma3_check(j: int, k: int) -> dict[int, bool | None]:
    """Verify the four bracket identities exactly.

    1. ``(x + 1/x)^(j-1) (x - 1/x) = sum_{m=0}^{j} [j-1, m] x^(j-2m)``
    2. ``2^k = sum_{n=0}^{k} [k-1, n] (k - 2n)``
    3. ``2^j / j = sum_{m=0}^{j} [j-1, m] / (j - 2m)``  (j odd)
    4. ``2^(j+k) / (j (j+k)) = sum_{m=0}^{j} sum_{n=0}^{k}
       [j-1, m] [k-1, n] / ((j - 2m)(j - 2m + k - 2n))``  (j odd, k even)

    Items whose parity hypothesis fails are reported as ``None``.
    """
    if j < 1 or k < 1:
        raise UsageError("j and k must be positive")
    out: dict[int, bool | None] = {}

    # item 1: compare Laurent coefficients, keyed by exponent
    lhs: dict[int, int] = {}
    for i in range(j):
        for e, c in ((1, 1), (-1, -1)):
            p = (j - 1 - 2 * i) + e
            lhs[p] = lhs.get(p, 0) + c * math.comb(j - 1, i)
    rhs: dict[int, int] = {}
    for m in range(j + 1):
        rhs[j - 2 * m] = rhs.get(j - 2 * m, 0) + bracket(j - 1, m)
    keys = set(lhs) | set(rhs)
    out[1] = all(lhs.get(p, 0) == rhs.get(p, 0) for p in keys)

    out[2] = 2 ** k == sum(bracket(k - 1, n) * (k - 2 * n) for n in range(k + 1))

    if j % 2:
        out[3] = Fraction(2 ** j, j) == sum(
            Fraction(bracket(j - 1, m), j - 2 * m) for m in range(j + 1))
    else:
        out[3] = None

    if j % 2 and not k % 2:
        total = Fraction(0)
        for m in range(j + 1):
            bm = bracket(j - 1, m)
            if not bm:
                continue
            for n in range(k + 1):
                bn = bracket(k - 1, n)
                if bn:
                    total += Fraction(bm * bn, (j - 2 * m) * (j - 2 * m + k - 2 * n))
        out[4] = total == Fraction(2 ** (j + k), j * (j + k))
    else:
        out[4] = None
    return out


# ---------------------------------------------------------------------------
# exact forms


def _exact_variant(kind: RootFunctionKind) -> str:
    if kind.variant == "custom":
        raise UsageError("exact forms need a built-in kind")
    t = kind.t_exact
    if t == 0:
        return "mahler"
    if t == 1:
        return "reciprocal"
    return "treciprocal"


def _rf(num_coeffs, den_coeffs) -> RationalFunction:
    return RationalFunction(Poly(num_coeffs), Poly(den_coeffs))


def _s_minus(c) -> RationalFunction:
    """``s - c``."""
    return RationalFunction(Poly([-as_fraction(c), 1]))


def _s2_minus(c) -> RationalFunction:
    """``s^2 - c``."""
    return RationalFunction(Poly([-as_fraction(c), 0, 1]))


def mahler_skew_monomial(a: int, b: int) -> RationalFunction:
    """Exact ``<g^a, g^b>`` (combined skew form) for Mahler's measure."""
    if (a - b) % 2 == 0:
        return RationalFunction(0)
    if a % 2:
        return -mahler_skew_monomial(b, a)
    j, k = a + 1, b + 1  # j odd, k even
    return -Fraction(4, j * (j - k)) * S / _s_minus(k)


def mahler_skew_parts(a: int, b: int) -> tuple[RationalFunction, RationalFunction]:
    """Real-line and complex parts of :func:`mahler_skew_monomial`."""
    if (a - b) % 2 == 0:
        return RationalFunction(0), RationalFunction(0)
    if a % 2:
        r, c = mahler_skew_parts(b, a)
        return -r, -c
    j, k = a + 1, b + 1
    shared = Fraction(4, j - k) / _s_minus(Fraction(j + k, 2))
    real = shared + Fraction(4, j * (j + k)) + Fraction(4 * k, j * (k - j)) / _s_minus(k)
    cplx = -shared + Fraction(8, (k - j) * (k + j))
    return real, cplx


def mahler_border(a: int) -> RationalFunction:
    """Exact ``int_R max(1,|x|)^(-s) x^a dx``."""
    if a % 2:
        return RationalFunction(0)
    return Fraction(2, a + 1) * S / _s_minus(a + 1)


def rho_skew_even_odd(j: int, k: int) -> RationalFunction:
    """Exact ``<g^(2j-2), g^(2k-1)>`` for the reciprocal measure (``j, k >= 1``)."""
    total = RationalFunction(0)
    for n in range(1, k + 1):
        bn = bracket(2 * k - 1, k - n)
        if not bn:
            continue
        inner = Fraction(0)
        for m in range(1, j + 1):
            bm = bracket(2 * j - 2, j - m)
            if bm:
                inner += Fraction(bm * 2 * n, (2 * m - 1) * ((2 * n) ** 2 - (2 * m - 1) ** 2))
        if inner:
            total = total + bn * inner * 16 * S * S / _s2_minus(4 * n * n)
    return total


def rho_border(j: int) -> RationalFunction:
    """Exact ``int_R rho(x)^(-s) x^(2j-2) dx``."""
    total = RationalFunction(0)
    for m in range(1, j + 1):
        bm = bracket(2 * j - 2, j - m)
        if bm:
            total = total + Fraction(bm, 2 * m - 1) / _s2_minus((2 * m - 1) ** 2)
    return 4 * S * S * total


def rho_skew_monomial(a: int, b: int) -> RationalFunction:
    if (a - b) % 2 == 0:
        return RationalFunction(0)
    if a % 2:
        return -rho_skew_monomial(b, a)
    return rho_skew_even_odd(a // 2 + 1, (b + 1) // 2)


def skew_monomial_exact(kind: RootFunctionKind, a: int, b: int) -> RationalFunction:
    v = _exact_variant(kind)
    if v == "mahler":
        return mahler_skew_monomial(a, b)
    if v == "reciprocal":
        return rho_skew_monomial(a, b)
    raise UsageError("exact skew forms are available for Mahler and reciprocal kinds")


def border_monomial_exact(kind: RootFunctionKind, a: int) -> RationalFunction:
    v = _exact_variant(kind)
    if v == "mahler":
        return mahler_border(a)
    if v == "reciprocal":
        return RationalFunction(0) if a % 2 else rho_border(a // 2 + 1)
    raise UsageError("exact border integrals are available for Mahler and reciprocal kinds")


def _laurent_coeffs(a: int, t: Fraction) -> dict[int, Fraction]:
    """Coefficients of ``(x + t/x)^a (1 - t/x^2)`` by exponent."""
    out: dict[int, Fraction] = {}
    for i in range(a + 1):
        c = math.comb(a, i) * t ** i
        e = a - 2 * i
        out[e] = out.get(e, 0) + c
        out[e - 2] = out.get(e - 2, 0) - c * t
    return {e: c for e, c in out.items() if c != 0}


def hermitian_monomial_exact(kind: RootFunctionKind, a: int, b: int) -> RationalFunction:
    """``<g^a | g^b> / pi`` as an exact rational function of ``s``.

    Pulling back along ``g = x + t/x`` turns the integral into radial
    monomial integrals over ``|x| > 1`` (weight ``|x|^(-2s)``) and over the
    annulus ``sqrt(t) < |x| < 1`` (weight 1).
    """
    _exact_variant(kind)
    t = kind.t_exact
    A, B = _laurent_coeffs(a, t), _laurent_coeffs(b, t)
    total = RationalFunction(0)
    for p, ca in A.items():
        cb = B.get(p)
        if not cb:
            continue
        # the pulled-back integrand is a derivative, so x^-1 never appears
        assert p != -1
        inner = (1 - t ** (p + 1)) / (2 * p + 2) if t else Fraction(1, 2 * p + 2)
        total = total + ca * cb * (2 * inner + 1 / _s_minus(p + 1))
    return total


def _congruence(rows: list[list], M: list[list]) -> list[list]:
    """``C M C^T`` for a lower-triangular coefficient matrix ``C``."""
    n = len(rows)
    zero = RationalFunction(0)
    CM = [[sum((rows[i][a] * M[a][b] for a in range(i + 1) if rows[i][a] != 0), zero)
           for b in range(len(M))] for i in range(n)]
    return [[sum((CM[i][b] * rows[j][b] for b in range(j + 1) if rows[j][b] != 0), zero)
             for j in range(n)] for i in range(n)]


def _exact_rows(family: MonicFamily) -> list[list[Fraction]]:
    try:
        return [[as_fraction(c) for c in r] for r in family.coefficient_rows()]
    except TypeError as exc:
        raise UsageError("exact forms need rational coefficients") from exc


def gram_body_exact(kind: RootFunctionKind, family: MonicFamily) -> list[list[RationalFunction]]:
    """Gram matrix divided by ``pi``, entrywise exact."""
    N = family.N
    M = [[hermitian_monomial_exact(kind, a, b) for b in range(N)] for a in range(N)]
    return _congruence(_exact_rows(family), M)


def skew_matrix_exact(kind: RootFunctionKind, family: MonicFamily) -> list[list[RationalFunction]]:
    """Bordered skew matrix of size ``2J`` with exact entries."""
    N = family.N
    M = [[RationalFunction(0)] * N for _ in range(N)]
    for a in range(N):
        for b in range(a + 1, N):
            M[a][b] = skew_monomial_exact(kind, a, b)
            M[b][a] = -M[a][b]
    rows = _exact_rows(family)
    U = _congruence(rows, M)
    if N % 2:
        border = [border_monomial_exact(kind, a) for a in range(N)]
        col = [sum((rows[i][a] * border[a] for a in range(i + 1)), RationalFunction(0))
               for i in range(N)]
        for i in range(N):
            U[i].append(col[i])
        U.append([-c for c in col] + [RationalFunction(0)])
    return U


def mahler_A_matrix_exact(N: int) -> list[list[RationalFunction]]:
    """Checkerboard block ``A[j][k] = <g^(2j), g^(2k+1)>`` (0-based) for
    Mahler's measure; the last column holds border integrals when ``N`` is odd."""
    if N < 1:
        raise UsageError("N must be positive")
    J = (N + 1) // 2
    A = []
    for j in range(1, J + 1):
        row = []
        for k in range(1, J + 1):
            if N % 2 and k == J:
                row.append(Fraction(2, 2 * j - 1) * S / _s_minus(2 * j - 1))
            else:
                row.append(Fraction(4, (2 * k - 2 * j + 1) * (2 * j - 1)) * S / _s_minus(2 * k))
        A.append(row)
    return A


@dataclass(frozen=True)
class RhoFactorization:
    """``A = C B D^T``: ``C`` unit lower triangular with bracket entries,
    ``B`` Cauchy-like, ``D`` lower triangular."""

    A: list
    B: list
    C: list
    D: list


def rho_A_matrix_exact(N: int) -> RhoFactorization:
    """Checkerboard block of the reciprocal-measure skew matrix, assembled
    from its three factors."""
    if N < 1:
        raise UsageError("N must be positive")
    J = (N + 1) // 2
    odd = N % 2 == 1
    C = [[RationalFunction(bracket(2 * j - 2, j - m)) for m in range(1, J + 1)]
         for j in range(1, J + 1)]
    B, D = [], []
    for m in range(1, J + 1):
        row = []
        for n in range(1, J + 1):
            if odd and n == J:
                row.append(Fraction(2 * J, 2 * m - 1) / _s2_minus((2 * m - 1) ** 2))
            else:
                row.append(RationalFunction(
                    Fraction(2 * n, (2 * m - 1) * ((2 * n) ** 2 - (2 * m - 1) ** 2))))
        B.append(row)
    for k in range(1, J + 1):
        row = []
        for n in range(1, J + 1):
            if odd and k == J:
                row.append(Fraction(2, J) * S * S if n == J else RationalFunction(0))
            else:
                row.append(bracket(2 * k - 1, k - n) * 16 * S * S / _s2_minus(4 * n * n))
        D.append(row)
    A = _matmul(_matmul(C, B), [list(r) for r in zip(*D)])
    return RhoFactorization(A, B, C, D)


def _matmul(X, Y):
    zero = RationalFunction(0)
    return [[sum((X[i][l] * Y[l][j] for l in range(len(Y)) if X[i][l] and Y[l][j]), zero)
             for j in range(len(Y[0]))] for i in range(len(X))]


# ---------------------------------------------------------------------------
# numeric forms


def _check_real_s(s) -> float:
    if isinstance(s, (complex, np.complexfloating)):
        raise UsageError("numeric forms need real s; use the exact forms for complex s")
    s = float(s)
    if not math.isfinite(s):
        raise UsageError("s must be finite")
    return s


def _weighted(kind: RootFunctionKind, s: float, polys: list[np.ndarray], z: np.ndarray):
    """``P_j(z) phi(z)^(-s)`` for every ``j``, shape ``(len(z), n)``.

    For ``|z| > 1`` this is evaluated as ``(P(z)/z^d) exp(d log z - s log phi)``
    so that very wide truncation radii cannot overflow.
    """
    z = np.asarray(z, dtype=complex)
    logphi = np.log(np.asarray(kind.phi(z), dtype=float))
    big = np.abs(z) > 1.0
    zb = np.where(big, z, 1.0)
    logz = np.log(zb)
    inv = 1.0 / zb
    damp = np.exp(-s * logphi)
    out = np.empty((len(z), len(polys)), dtype=complex)
    for i, c in enumerate(polys):
        d = len(c) - 1
        small = np.polyval(c, z) * damp
        large = np.polyval(c[::-1], inv) * np.exp(d * logz - s * logphi)
        out[:, i] = np.where(big, large, small)
    return out


def _coef_norm(c: np.ndarray) -> float:
    return float(np.sum(np.abs(c)))


def _radius(kind: RootFunctionKind, tail, target: float) -> float:
    """A radius beyond every kink and ``R0`` at which ``tail(R) <= target``."""
    _, R0 = kind.growth
    R = 1.01 * max(R0, 4.0, *kind.radial_breaks(), *kind.real_breaks())
    while tail(R) > target:
        R *= 2.0
        if R > 1e300:
            raise ConvergenceViolation("tail bound unattainable; s is too close to the boundary")
    return R


def _tail_1d(kind, s, cn, d):
    kappa, _ = kind.growth
    return lambda R: cn * 2.0 * kappa ** (-s) * R ** (d - s + 1) / (s - d - 1)


def _tail_2d(kind, sigma, cn, d):
    kappa, _ = kind.growth
    return lambda R: cn * 2.0 * np.pi * kappa ** (-sigma) * R ** (d - sigma + 2) / (sigma - d - 2)


def _polar_batch(kind, s, polys, pairs, spec, *, half: bool):
    """Polar-coordinate driver for the two-dimensional forms.

    ``half=False`` integrates ``u_j conj(u_k)`` over the plane (hermitian
    form, complex result); ``half=True`` integrates
    ``4 Im(u_j(conj b) u_k(b))`` over the upper half plane.  Here
    ``u = P phi^(-s)``.  Returns values and error bounds.
    """
    degs = [len(c) - 1 for c in polys]
    cn = [_coef_norm(c) for c in polys]
    d = max(degs[j] + degs[k] for j, k in pairs)
    sigma = 2.0 * s
    if not sigma > d + 2:
        raise ConvergenceViolation(f"need 2s > {d + 2} for absolute convergence")
    cnmax = max(cn[j] * cn[k] for j, k in pairs)
    tail = _tail_2d(kind, sigma, cnmax, d)
    R = _radius(kind, tail, spec.abs_tol / spec.truncation_slack)
    # the half-plane integrand carries a factor 4 on half the area
    trunc = tail(R) * (2.0 if half else 1.0)
    top = np.pi if half else 2.0 * np.pi
    jj = np.array([p[0] for p in pairs])
    kk = np.array([p[1] for p in pairs])

    def inner(r: np.ndarray) -> np.ndarray:
        nr = len(r)
        br = np.concatenate([kind.angular_breaks(r), np.full((nr, 1), np.pi)], axis=1)

        def g(theta, own):
            rr = r[own]
            z = rr * np.exp(1j * theta)
            u = _weighted(kind, s, polys, z)
            if half:
                uc = _weighted(kind, s, polys, np.conj(z))
                return 4.0 * np.imag(uc[:, jj] * u[:, kk]) * rr[:, None]
            val = u[:, jj] * np.conj(u[:, kk]) * rr[:, None]
            return np.concatenate([val.real, val.imag], axis=1)

        # components that vanish identically are pure roundoff, so the
        # absolute floor is set by |u_j| |u_k| at radius r
        th = np.linspace(0.0, top, 9)
        z = np.repeat(r, 9) * np.tile(np.exp(1j * th), nr)
        au = np.abs(_weighted(kind, s, polys, z))
        mag = (au[:, jj] * au[:, kk]).reshape(nr, 9 * len(pairs))
        scale = top * (4.0 if half else 1.0) * r * mag.max(axis=1)
        I, _ = gk_batch(g, np.zeros(nr), np.full(nr, top), br,
                        rtol=spec.rel_tol / 10, atol=np.maximum(1e3 * _EPS * scale, 1e-300),
                        max_panels=max(spec.max_subdivisions, 64 * nr))
        return I

    def outer(v, _own):
        return inner(np.sinh(v)) * np.cosh(v)[:, None]

    vb = [np.arcsinh(x) for x in kind.radial_breaks()]
    I, E = gk_batch(outer, [0.0], [np.arcsinh(R)], [vb], rtol=spec.rel_tol,
                    atol=spec.abs_tol / 2, max_panels=spec.max_subdivisions)
    I, E = I[0], E[0]
    if half:
        return I, E + trunc
    m = len(pairs)
    return I[:m] + 1j * I[m:], np.hypot(E[:m], E[m:]) + trunc


def _real_line(kind, s, polys, pairs, spec):
    """Border integrals ``int w P_j`` and real-line skew forms for ``pairs``.

    With the running antiderivative ``G_j(y) = int_{-R}^{y} w P_j`` the sign
    kernel integral becomes ``int w P_k (2 G_j - G_j(R))``.  ``G_j`` at each
    node is a cumulative panel sum plus a Gauss-Legendre rule on the partial
    panel, and the panels are refined until the outer integral converges.
    """
    n = len(polys)
    degs = [len(c) - 1 for c in polys]
    cn = [_coef_norm(c) for c in polys]
    d = max(degs)
    if not s > d + 1:
        raise ConvergenceViolation(f"need s > {d + 1} for absolute convergence")
    target = spec.abs_tol / (spec.truncation_slack * 100.0)
    R = _radius(kind, _tail_1d(kind, s, max(cn), d), target)
    tails = np.array([_tail_1d(kind, s, cn[j], degs[j])(R) for j in range(n)])
    V = float(np.arcsinh(R))
    vb = sorted({0.0, *(float(np.arcsinh(x)) for x in kind.real_breaks())})

    def u(v):
        x = np.sinh(v).astype(complex)
        return _weighted(kind, s, polys, x).real * np.cosh(v)[:, None]

    I0, E0, part = gk_batch(lambda v, _o: u(v), [-V], [V], [vb], rtol=spec.rel_tol / 10,
                            atol=target, max_panels=spec.max_subdivisions,
                            return_partition=True)
    border, border_err = I0[0], E0[0] + tails
    if not pairs:
        return border, border_err, np.zeros(0), np.zeros(0)

    gx, gw = gauss_legendre(21)
    jj = np.array([p[0] for p in pairs])
    kk = np.array([p[1] for p in pairs])
    a, b = part.a, part.b
    for _ in range(60):
        P = len(a)
        c, h = 0.5 * (a + b), 0.5 * (b - a)
        X = c[:, None] + h[:, None] * NODES[None, :]
        U = u(X.ravel()).reshape(P, 21, n)
        pint = h[:, None] * np.einsum("pkn,k->pn", U, WK)
        total = pint.sum(axis=0)
        cum = np.cumsum(pint, axis=0) - pint
        span = X - a[:, None]
        T = a[:, None, None] + span[:, :, None] * (gx + 1.0)[None, None, :] / 2
        UT = u(T.ravel()).reshape(P, 21, 21, n)
        G = cum[:, None, :] + span[:, :, None] / 2 * np.einsum("pign,g->pin", UT, gw)
        H = U[:, :, kk] * (2.0 * G[:, :, jj] - total[jj])
        rk = h[:, None] * np.einsum("pkm,k->pm", H, WK)
        rg = h[:, None] * np.einsum("pkm,k->pm", H, WG)
        rabs = h[:, None] * np.einsum("pkm,k->pm", np.abs(H), WK)
        err = np.maximum(np.abs(rk - rg), 50 * _EPS * rabs)
        val, val_err = rk.sum(axis=0), err.sum(axis=0)
        tol = np.maximum(np.maximum(spec.abs_tol / 2, spec.rel_tol * np.abs(val)),
                         100 * _EPS * rabs.sum(axis=0))
        if np.all(val_err <= tol):
            break
        share = err / (tol[None, :] / P)
        split = (share > 1.0).any(axis=1)
        split[np.argmax(share.max(axis=1))] = True
        if P + split.sum() > spec.max_subdivisions:
            break
        mid = 0.5 * (a[split] + b[split])
        a = np.sort(np.concatenate([a, mid]))
        b = np.sort(np.concatenate([b, mid]))
    if not np.all(val_err <= tol):
        raise ToleranceNotReached(f"skew quadrature stopped with error {val_err.max():.3e}")
    L = (h[:, None] * np.einsum("pkn,k->pn", np.abs(U), WK)).sum(axis=0)
    trunc = 2 * (tails[jj] * (L[kk] + tails[kk]) + tails[kk] * (L[jj] + tails[jj]))
    return border, border_err, val, val_err + trunc


# ---------------------------------------------------------------------------
# public numeric and exact entry points


def _as_array(P) -> np.ndarray:
    if not isinstance(P, Polynomial):
        P = Polynomial(P)
    return P.as_array()


def hermitian_form_numeric(kind: RootFunctionKind, s, P, Q, spec: QuadratureSpec | None = None,
                           *, return_error: bool = False):
    """``<P|Q>`` by adaptive quadrature in polar coordinates."""
    s = _check_real_s(s)
    val, err = _polar_batch(kind, s, [_as_array(P), _as_array(Q)], [(0, 1)],
                            spec or DEFAULT_SPEC, half=False)
    out = complex(val[0])
    if _as_array(P).tolist() == _as_array(Q).tolist():
        out = complex(out.real, 0.0)
    return (out, float(err[0])) if return_error else out


def skew_form_real_numeric(kind: RootFunctionKind, s, P, Q, spec: QuadratureSpec | None = None,
                           *, return_error: bool = False):
    """``<P,Q>_R``: the sign-kernel integral over the real plane."""
    s = _check_real_s(s)
    _, _, val, err = _real_line(kind, s, [_as_array(P), _as_array(Q)], [(0, 1)],
                                spec or DEFAULT_SPEC)
    return (float(val[0]), float(err[0])) if return_error else float(val[0])


def skew_form_complex_numeric(kind: RootFunctionKind, s, P, Q, spec: QuadratureSpec | None = None,
                              *, return_error: bool = False):
    """``<P,Q>_C``: the upper/lower half-plane integral (real for real ``P, Q``)."""
    s = _check_real_s(s)
    val, err = _polar_batch(kind, s, [_as_array(P), _as_array(Q)], [(0, 1)],
                            spec or DEFAULT_SPEC, half=True)
    return (float(val[0]), float(err[0])) if return_error else float(val[0])


def border_integral_numeric(kind: RootFunctionKind, s, P, spec: QuadratureSpec | None = None,
                            *, return_error: bool = False):
    """``int_R phi(x)^(-s) P(x) dx``."""
    s = _check_real_s(s)
    val, err, _, _ = _real_line(kind, s, [_as_array(P)], [], spec or DEFAULT_SPEC)
    return (float(val[0]), float(err[0])) if return_error else float(val[0])


def _evaluate_matrix(M, s):
    if isinstance(s, (int, Fraction, str)):
        s = as_fraction(s)
    return [[x(s) for x in row] for row in M]


def skew_matrix(kind: RootFunctionKind, s, family: MonicFamily,
                spec: QuadratureSpec | None = None, *, exact: bool = False,
                return_error: bool = False):
    """Skew matrix ``U`` of size ``2J`` (``J = (N+1)//2``).

    Entries ``<P_j, P_k>`` for ``j, k <= N``; for odd ``N`` the last row and
    column hold ``sgn(k - j) int w P_min(j,k)``.  With ``exact=True`` the
    entries are rational functions of ``s`` (evaluated when ``s`` is given);
    otherwise a float array, plus an array of error bounds when
    ``return_error`` is set.
    """
    if exact:
        U = skew_matrix_exact(kind, family)
        return U if s is None else _evaluate_matrix(U, s)
    s = _check_real_s(s)
    spec = spec or DEFAULT_SPEC
    N = family.N
    polys = family.arrays()
    pairs = [(j, k) for j in range(N) for k in range(j + 1, N)]
    size = N + N % 2
    U = np.zeros((size, size))
    E = np.zeros((size, size))
    border, berr, rval, rerr = _real_line(kind, s, polys, pairs, spec)
    if pairs:
        cval, cerr = _polar_batch(kind, s, polys, pairs, spec, half=True)
        for i, (j, k) in enumerate(pairs):
            U[j, k], E[j, k] = rval[i] + cval[i], rerr[i] + cerr[i]
    if N % 2:
        U[:N, N], E[:N, N] = border, berr
    U = U - U.T
    E = E + E.T
    return (U, E) if return_error else U


def gram_matrix(kind: RootFunctionKind, s, family: MonicFamily,
                spec: QuadratureSpec | None = None, *, exact: bool = False,
                return_error: bool = False):
    """Hermitian Gram matrix ``W[j][k] = <P_j|P_k>``.

    Exact mode returns entries as ``pi * body(s)``: a matrix of
    :class:`ScaledRationalFunction` when ``s`` is None, floats otherwise.
    """
    if exact:
        body = gram_body_exact(kind, family)
        if s is None:
            return [[ScaledRationalFunction(1, x) for x in row] for row in body]
        return np.array([[math.pi * complex(x(as_fraction(s) if isinstance(s, (int, str))
                                                 else s)).real for x in row] for row in body])
    s = _check_real_s(s)
    spec = spec or DEFAULT_SPEC
    N = family.N
    pairs = [(j, k) for j in range(N) for k in range(j, N)]
    val, err = _polar_batch(kind, s, family.arrays(), pairs, spec, half=False)
    W = np.zeros((N, N), dtype=complex)
    E = np.zeros((N, N))
    for i, (j, k) in enumerate(pairs):
        W[j, k], E[j, k] = val[i], err[i]
        W[k, j], E[k, j] = np.conj(val[i]), err[i]
    for j in range(N):
        W[j, j] = W[j, j].real
    if kind.even_symmetric and all(p.is_real for p in family.polys):
        # conjugation invariance of phi makes every entry real
        W = W.real.copy()
    return (W, E) if return_error else W


# ---------------------------------------------------------------------------
# Gram-Schmidt


def _orth_setup(kind, s, N, spec, exact, skew: bool):
    fam = MonicFamily.monomials(N)
    if exact:
        M = skew_matrix_exact(kind, fam) if skew else gram_body_exact(kind, fam)
        M = [row[:N] for row in M[:N]]
        if s is not None:
            M = _evaluate_matrix(M, s)
        return M, (lambda x: x == 0), (lambda x: x)
    M = skew_matrix(kind, s, fam, spec)[:N, :N] if skew else gram_matrix(kind, s, fam, spec)
    tol = 1e3 * _EPS * float(np.max(np.abs(M)))
    return M, (lambda x: abs(x) <= tol), np.conj


def _bilinear(M, p, q, conj=lambda x: x):
    n = len(p)
    total = 0
    for a in range(n):
        if p[a] == 0:
            continue
        row = 0
        for b in range(n):
            if q[b] != 0:
                row = row + M[a][b] * conj(q[b])
        total = total + p[a] * row
    return total


def _family_from_vectors(vecs) -> MonicFamily:
    rows = []
    for n, v in enumerate(vecs):
        row = []
        for c in v[: n + 1]:
            if isinstance(c, (complex, np.complexfloating)) and c.imag == 0:
                c = c.real
            row.append(float(c) if isinstance(c, np.floating) else c)
        rows.append(row)
    return MonicFamily.from_coefficients(rows)


def orthogonalize_hermitian(kind: RootFunctionKind, s, N: int,
                            spec: QuadratureSpec | None = None, *, exact: bool = False):
    """Monic family orthogonal under ``<.|.>`` and the norms ``<Q_n|Q_n>``.

    Numeric norms are floats; exact norms are :class:`ScaledRationalFunction`
    values ``pi * body``.
    """
    if N < 1:
        raise UsageError("N must be positive")
    M, is_zero, conj = _orth_setup(kind, s, N, spec, exact, skew=False)
    zero = RationalFunction(0) if exact and s is None else 0
    Q, norms = [], []
    for n in range(N):
        v = [zero] * N
        v[n] = v[n] + 1
        for m in range(n):
            c = _bilinear(M, v, Q[m], conj) / norms[m]
            v = [v[i] - c * Q[m][i] for i in range(N)]
        nv = _bilinear(M, v, v, conj)
        if is_zero(nv):
            raise DegenerateForm(f"norm of Q_{n + 1} vanishes")
        if not exact:
            nv = float(np.real(nv))
        Q.append(v)
        norms.append(nv)
    fam = _family_from_vectors(Q)
    if exact:
        norms = [ScaledRationalFunction(1, x if isinstance(x, RationalFunction)
                                        else RationalFunction(x)) for x in norms]
    return fam, norms


def skew_orthogonalize(kind: RootFunctionKind, s, N: int,
                       spec: QuadratureSpec | None = None, *, exact: bool = False):
    """Monic family with ``<Q_(2i-1), Q_(2j)> = delta_ij M_j`` and all other
    cross-block pairings zero, plus the normalizations ``M_j``.

    ``Q_(2j)`` is fixed by requiring a zero coefficient on ``g^(2j-2)``.
    """
    if N < 2 or N % 2:
        raise OddSize("N must be even and positive")
    M, is_zero, _ = _orth_setup(kind, s, N, spec, exact, skew=True)
    zero = RationalFunction(0) if exact and s is None else 0

    def unit(i):
        v = [zero] * N
        v[i] = v[i] + 1
        return v

    def project(v, Q, norms):
        for i, m in enumerate(norms):
            odd, even = Q[2 * i], Q[2 * i + 1]
            a = _bilinear(M, v, even) / m
            b = _bilinear(M, v, odd) / m
            v = [v[r] - a * odd[r] + b * even[r] for r in range(N)]
        return v

    Q, norms = [], []
    for j in range(N // 2):
        p = project(unit(2 * j), Q, norms)
        q = project(unit(2 * j + 1), Q, norms)
        c = q[2 * j]
        q = [q[r] - c * p[r] for r in range(N)]
        m = _bilinear(M, p, q)
        if is_zero(m):
            raise DegenerateForm(f"block {j + 1} is degenerate")
        Q += [p, q]
        norms.append(m if exact else float(np.real(m)))
    return _family_from_vectors(Q), norms
