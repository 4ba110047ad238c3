"""Moment functions ``H_N(Phi; s)`` and ``F_N(Phi; s)``.

Three independent routes are provided:

* closed forms (rational functions of ``s`` kept in factored form),
* the determinant / Pfaffian of the bilinear-form matrices in :mod:`forms`,
* a direct cubature over root space that never touches the forms.

On top of these sit star-body volumes, the ``s -> infinity`` limits,
recovery of the distribution functions by partial fractions, and the
zero/pole trajectories of the ``t``-reciprocal moments.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .distfun import RootFunctionKind, treciprocal
from .errors import (
    NumericFailure,
    PatternViolation,
    SymmetryViolation,
    UsageError,
    ZeroNotBracketed,
)
from .exactalg import (
    Poly,
    RationalFunction,
    ScaledRationalFunction,
    as_fraction,
    determinant,
    partial_fractions,
    pfaffian,
)
from .forms import (
    DEFAULT_SPEC,
    MonicFamily,
    QuadratureSpec,
    gram_matrix,
    skew_matrix,
)
from .quadrature import gauss_legendre

log = logging.getLogger(__name__)

MAX_CLOSED_N = 24

Factor = tuple[tuple[int, ...], int]  # ascending integer coefficients, multiplicity


def _primitive(coeffs: Sequence) -> tuple[Fraction, tuple[int, ...]]:
    """Split a rational polynomial into ``scale * primitive`` with a positive
    leading coefficient and coprime integer coefficients."""
    c = [as_fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    den = math.lcm(*(x.denominator for x in c))
    ints = [int(x * den) for x in c]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(x // g for x in ints)


def _factor_str(coeffs: tuple[int, ...]) -> str:
    return str(Poly(coeffs))


@dataclass(frozen=True)
class MomentClosedForm:
    """``constant * pi^pi_power * prod num / prod den`` with integer factors."""

    moment: str  # "H" or "F"
    N: int
    kind_name: str
    constant: Fraction
    pi_power: int
    numerator: tuple[Factor, ...]
    denominator: tuple[Factor, ...]
    _body: RationalFunction | None = field(default=None, compare=False, repr=False)

    @classmethod
    def build(cls, moment, N, kind_name, constant, pi_power, num, den) -> MomentClosedForm:
        """Normalize raw rational factors and merge repeats."""
        const = as_fraction(constant)
        merged: list[dict] = [{}, {}]
        for side, items in enumerate((num, den)):
            for coeffs, mult in items:
                scale, prim = _primitive(coeffs)
                const = const * scale ** (mult if side == 0 else -mult)
                if prim != (1,):
                    merged[side][prim] = merged[side].get(prim, 0) + mult
        nf = tuple(sorted(merged[0].items()))
        df = tuple(sorted(merged[1].items()))
        return cls(moment, N, kind_name, const, pi_power, nf, df)

    def expand(self) -> RationalFunction:
        """The canonical rational function ``body`` with ``value = pi^k * body``."""
        if self._body is None:
            num, den = Poly([self.constant]), Poly([1])
            for coeffs, m in self.numerator:
                num = num * Poly(coeffs) ** m
            for coeffs, m in self.denominator:
                den = den * Poly(coeffs) ** m
            object.__setattr__(self, "_body", RationalFunction(num, den))
        return self._body

    @property
    def value(self) -> ScaledRationalFunction:
        return ScaledRationalFunction(self.pi_power, self.expand())

    def __call__(self, s):
        return self.value(s)

    def exact_value(self, s) -> tuple[Fraction, int]:
        """``(c, k)`` with the moment at rational ``s`` equal to ``c * pi^k``."""
        return self.value.exact_value(s)

    def poles(self) -> list[tuple[Fraction, int]]:
        return _linear_roots(self.denominator)

    def zeros(self) -> list[tuple[Fraction, int]]:
        return _linear_roots(self.numerator)

    def __str__(self):
        head = f"{self.moment}_{self.N}({self.kind_name}; s) = {self.constant}"
        if self.pi_power:
            head += f" * pi^{self.pi_power}"
        parts = [f"({_factor_str(c)})" + (f"^{m}" if m > 1 else "") for c, m in self.numerator]
        dparts = [f"({_factor_str(c)})" + (f"^{m}" if m > 1 else "") for c, m in self.denominator]
        out = head
        if parts:
            out += " * " + " * ".join(parts)
        if dparts:
            out += " / [" + " * ".join(dparts) + "]"
        return out


def _linear_roots(factors) -> list[tuple[Fraction, int]]:
    out = []
    for coeffs, m in factors:
        if len(coeffs) == 2:
            out.append((Fraction(-coeffs[0], coeffs[1]), m))
        elif len(coeffs) == 3 and coeffs[1] == 0 and coeffs[0] <= 0:
            r = Fraction(-coeffs[0], coeffs[2])
            root = _exact_sqrt(r)
            if root is None:
                raise NumericFailure(f"irrational roots in factor {coeffs}")
            out += [(root, m), (-root, m)] if root else [(Fraction(0), 2 * m)]
        else:
            raise NumericFailure(f"factor {coeffs} is not linear or a difference of squares")
    return sorted(out)


def _exact_sqrt(r: Fraction) -> Fraction | None:
    a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
    return Fraction(a, b) if a * a == r.numerator and b * b == r.denominator else None


def _check_N(N: int) -> None:
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise UsageError("N must be a positive integer")
    if N > MAX_CLOSED_N:
        raise UsageError(f"closed forms are provided for N <= {MAX_CLOSED_N}")


def C_N(N: int) -> Fraction:
    """Leading constant of ``F_N`` for Mahler's measure."""
    M = (N - 1) // 2
    out = Fraction(2 ** N)
    for m in range(1, M + 1):
        out *= Fraction(2 * m, 2 * m + 1) ** (N - 2 * m)
    return out


def v_N(N: int) -> Fraction:
    """Leading constant of ``F_N`` for the reciprocal measure."""
    out = Fraction(2 ** N, math.factorial(N))
    for n in range(1, N + 1):
        out *= Fraction(2 * n, 2 * n - 1) ** (N + 1 - n)
    return out


def H_closed_mahler(N: int) -> MomentClosedForm:
    _check_N(N)
    return MomentClosedForm.build("H", N, "mahler", Fraction(1, math.factorial(N)), N,
                                  [((0, 1), N)], [((-n, 1), 1) for n in range(1, N + 1)])


def F_closed_mahler(N: int) -> MomentClosedForm:
    _check_N(N)
    M = (N - 1) // 2
    return MomentClosedForm.build("F", N, "mahler", C_N(N), 0, [((0, 1), M + 1)],
                                  [((-(N - 2 * m), 1), 1) for m in range(M + 1)])


def H_closed_reciprocal(N: int) -> MomentClosedForm:
    _check_N(N)
    return MomentClosedForm.build("H", N, "reciprocal", Fraction(2 ** N), N, [((0, 1), N)],
                                  [((-n * n, 0, 1), 1) for n in range(1, N + 1)])


def F_closed_reciprocal(N: int) -> MomentClosedForm:
    _check_N(N)
    J = (N - 1) // 2
    return MomentClosedForm.build("F", N, "reciprocal", v_N(N), 0, [((0, 1), 2 * (J + 1))],
                                  [((-(N - 2 * j) ** 2, 0, 1), 1) for j in range(J + 1)])


def H_closed_treciprocal(N: int, t) -> MomentClosedForm:
    """Closed form of ``H_N`` for the ``t``-reciprocal measure, rational ``t`` in [0, 1]."""
    _check_N(N)
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise UsageError("t must lie in [0, 1]")
    num = [((0, 1), N)]
    for n in range(1, N + 1):
        u = t ** (2 * n)
        if u == 1:
            num.append(((2 * n,), 1))  # the linear factor collapses to 2n
        else:
            num.append(((n * (1 + u), 1 - u), 1))
    den = [((-n * n, 0, 1), 1) for n in range(1, N + 1)]
    return MomentClosedForm.build("H", N, f"trec:{t}", Fraction(1, math.factorial(N)), N,
                                  num, den)


def closed_form(moment: str, kind: RootFunctionKind, N: int) -> MomentClosedForm:
    """Dispatch to the available closed form for ``kind``."""
    if kind.variant == "custom":
        raise UsageError("no closed form for custom kinds")
    t = kind.t_exact
    if moment == "H":
        if t == 0:
            return H_closed_mahler(N)
        if t == 1:
            return H_closed_reciprocal(N)
        return H_closed_treciprocal(N, t)
    if moment == "F":
        if t == 0:
            return F_closed_mahler(N)
        if t == 1:
            return F_closed_reciprocal(N)
        raise UsageError("F has no closed form for 0 < t < 1; use the numeric routes")
    raise UsageError("moment must be 'H' or 'F'")


def moment_limit(form: MomentClosedForm) -> Fraction:
    """``lim_{s -> oo}`` of the form, as the rational coefficient of ``pi^pi_power``."""
    dn = sum((len(c) - 1) * m for c, m in form.numerator)
    dd = sum((len(c) - 1) * m for c, m in form.denominator)
    if dn < dd:
        return Fraction(0)
    if dn > dd:
        raise UsageError("the form grows without bound")
    out = form.constant
    for c, m in form.numerator:
        out *= Fraction(c[-1]) ** m
    for c, m in form.denominator:
        out /= Fraction(c[-1]) ** m
    return out


# ---------------------------------------------------------------------------
# distribution functions


@dataclass(frozen=True)
class LaurentPolynomial:
    """``sum c_k xi^k`` (optionally times ``pi^pi_power``), valid for ``xi >= 1``."""

    terms: tuple[tuple[int, Fraction], ...]
    pi_power: int = 0

    def __call__(self, xi):
        val = sum(float(c) * xi ** k for k, c in self.terms)
        return math.pi ** self.pi_power * val

    def mellin(self) -> RationalFunction:
        """``int_1^oo xi^(-s) f(xi) dxi/xi`` divided by ``pi^pi_power``."""
        out = RationalFunction(0)
        for k, c in self.terms:
            out = out + RationalFunction(Poly([c]), Poly([-k, 1]))
        return out

    def __str__(self):
        body = " + ".join(f"{c}*xi^{k}" for k, c in sorted(self.terms, reverse=True)) or "0"
        return body if not self.pi_power else f"pi^{self.pi_power} * ({body})"


def distribution_from_moment(form: MomentClosedForm) -> LaurentPolynomial:
    """Invert ``form(s)/s = int_1^oo xi^(-s) f(xi) dxi/xi`` by partial fractions."""
    body = form.expand() / RationalFunction.s()
    poly, terms = partial_fractions(body)
    if not poly.is_zero():
        raise UsageError("the moment divided by s must vanish at infinity")
    return LaurentPolynomial(tuple(sorted(terms)), form.pi_power)


# ---------------------------------------------------------------------------
# numeric routes


def _family(N: int, family: MonicFamily | None) -> MonicFamily:
    if family is None:
        return MonicFamily.monomials(N)
    if family.N != N:
        raise UsageError("family size does not match N")
    return family


def _det_error(A: np.ndarray, dA: np.ndarray) -> tuple[float, float]:
    d = float(np.real(np.linalg.det(A)))
    try:
        inv = np.linalg.inv(A)
    except np.linalg.LinAlgError:
        return d, float("inf")
    return d, abs(d) * float(np.sum(np.abs(inv.T) * dA))


def H_numeric(kind: RootFunctionKind, s, N: int, family: MonicFamily | None = None,
              spec: QuadratureSpec | None = None, *, return_error: bool = False):
    """``det`` of the Gram matrix for a monic family (monomials by default)."""
    W, E = gram_matrix(kind, s, _family(N, family), spec, return_error=True)
    val, err = _det_error(W, E)
    return (val, err) if return_error else val


def F_numeric(kind: RootFunctionKind, s, N: int, family: MonicFamily | None = None,
              spec: QuadratureSpec | None = None, *, return_error: bool = False):
    """Pfaffian of the bordered skew matrix."""
    U, E = skew_matrix(kind, s, _family(N, family), spec, return_error=True)
    val = float(pfaffian(U, check=False))
    try:
        inv = np.linalg.inv(U)
        err = 0.5 * abs(val) * float(np.sum(np.abs(inv.T) * E))
    except np.linalg.LinAlgError:
        err = float("inf")
    return (val, err) if return_error else val


def _check_even(kind: RootFunctionKind, samples: int = 32) -> None:
    if kind.is_builtin:
        return
    rng = np.random.default_rng(12345)
    g = rng.normal(scale=3.0, size=samples) + 1j * rng.normal(scale=3.0, size=samples)
    a, b = np.asarray(kind.phi(g)), np.asarray(kind.phi(-g))
    if np.max(np.abs(a - b) / np.maximum(1.0, np.abs(a))) > 1e-12:
        raise SymmetryViolation("phi(-g) differs from phi(g)")


def F_numeric_det_route(kind: RootFunctionKind, s, N: int, family: MonicFamily | None = None,
                        spec: QuadratureSpec | None = None, *, return_error: bool = False):
    """``det A`` with ``A[j][k] = U[2j][2k+1]`` (0-based), valid for kinds with
    ``phi(-g) = phi(g)`` and families alternating in parity."""
    _check_even(kind)
    fam = _family(N, family)
    if not fam.has_parity():
        raise PatternViolation("family must alternate between even and odd polynomials")
    U, E = skew_matrix(kind, s, fam, spec, return_error=True)
    J = U.shape[0] // 2
    A = U[0::2, 1::2][:J, :J]
    dA = E[0::2, 1::2][:J, :J]
    val, err = _det_error(A, dA)
    return (val, err) if return_error else val


# ---------------------------------------------------------------------------
# root-space cubature (independent of the bilinear forms)


def _builtin_t(kind: RootFunctionKind) -> float:
    if not kind.is_builtin:
        raise UsageError("the root-space oracle supports built-in kinds only")
    return kind.t_value


def _jacobi_rule(n: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for ``int_0^1 u^alpha p(u) du``."""
    from scipy.special import roots_jacobi

    x, w = roots_jacobi(n, 0.0, alpha)  # weight (1-x)^0 (1+x)^alpha on [-1, 1]
    return (x + 1) / 2, w / 2 ** (alpha + 1)


def _plane_rule(t: float, s: float, N: int, half: bool, n_ext: int, n_int: int, n_theta: int):
    """Cubature for ``int phi(g)^(-2s) p(g, conj g) dA`` over the plane (or the
    upper half plane) through ``g = x + t/x``, ``|x| > sqrt t``.

    Returns points ``g`` and weights that already include ``phi^(-2s)`` and
    the Jacobian.  Exact in the radial exterior for polynomial ``p`` of total
    degree up to about ``2N``.
    """
    # exterior |x| > 1 with x = e^{i th}/u: the weight is u^(2s) and
    # r dr = u^(-3) du; Gauss-Jacobi absorbs the fractional power of u
    beta0 = 2 * s - 2 * N - 1
    if beta0 <= -1:
        raise UsageError("s is outside the convergence region")
    frac = beta0 - math.floor(beta0)
    u, wu = _jacobi_rule(n_ext, frac)
    rad = [1.0 / u]
    rad_w = [wu * u ** (2 * s - 3 - frac)]
    lo = math.sqrt(t)
    if lo < 1.0:
        x, wx = gauss_legendre(n_int)
        r = lo + (1 - lo) * (x + 1) / 2
        rad.append(r)
        rad_w.append(wx * (1 - lo) / 2 * r)
    r = np.concatenate(rad)
    wr = np.concatenate(rad_w)
    if half:
        th, wth = gauss_legendre(n_theta)
        th = np.pi * (th + 1) / 2
        wth = wth * np.pi / 2
    else:
        th = 2 * np.pi * np.arange(n_theta) / n_theta
        wth = np.full(n_theta, 2 * np.pi / n_theta)
    X = r[:, None] * np.exp(1j * th)[None, :]
    jac = np.abs(1 - t / X ** 2) ** 2 if t else np.ones_like(r[:, None] * wth)
    g = X + t / X
    w = wr[:, None] * wth[None, :] * jac
    return g.ravel(), w.ravel()


def _line_panels(t: float, s: float):
    """Three panels in a monotone parameter ``tau`` in [-2, 2]:
    ``[-1, 1]`` covers ``|a| <= 1 + t`` (weight 1), the outer panels map
    ``z = 2 -+ tau`` to ``a = +-(1/z + t z)`` with weight ``z^s``."""

    def middle(tau):
        return (1 + t) * tau, np.full_like(tau, 1 + t)

    def right(tau):
        z = 2 - tau
        return 1 / z + t * z, z ** s * (1 / z ** 2 - t)

    def left(tau):
        z = 2 + tau
        return -(1 / z + t * z), z ** s * (1 / z ** 2 - t)

    return [(-2.0, -1.0, left), (-1.0, 1.0, middle), (1.0, 2.0, right)]


def _ordered_real(t: float, s: float, L: int, n: int):
    """Points ``a_1 < ... < a_L`` with weights ``prod w(a_i) da_i`` covering the
    ordered region of ``R^L``; panels shared by several points use a
    collapsed (Duffy-type) map so the integrand stays smooth."""
    panels = _line_panels(t, s)
    x, wx = gauss_legendre(n)
    u01 = (x + 1) / 2
    w01 = wx / 2
    pts_all, w_all = [], []
    for combo in itertools.combinations_with_replacement(range(3), L):
        weights = np.ones(1)
        tau_cols = np.zeros((1, 0))
        for p in sorted(set(combo)):
            k = combo.count(p)
            a, b, _ = panels[p]
            # k ordered points in [a, b]:
            # tau_1 = a + (b - a) u_1, tau_i = tau_{i-1} + (b - tau_{i-1}) u_i
            G = np.array(list(itertools.product(range(n), repeat=k)))
            U = u01[G]
            W = np.prod(w01[G], axis=1)
            T = np.empty_like(U)
            prev = np.full(len(G), a)
            for i in range(k):
                span = b - prev
                T[:, i] = prev + span * U[:, i]
                W = W * span
                prev = T[:, i]
            tau_cols = np.concatenate([np.repeat(tau_cols, len(G), axis=0),
                                       np.tile(T, (len(tau_cols), 1))], axis=1)
            weights = np.repeat(weights, len(G)) * np.tile(W, len(weights))
        alpha = np.empty_like(tau_cols)
        for col, p in enumerate(combo):
            _, _, fn = panels[p]
            val, wgt = fn(tau_cols[:, col])
            alpha[:, col] = val
            weights = weights * wgt
        pts_all.append(alpha)
        w_all.append(weights)
    return np.concatenate(pts_all), np.concatenate(w_all)


def _vandermonde_abs(nodes: np.ndarray) -> np.ndarray:
    """``prod_{i<j} |x_j - x_i|`` along the last axis."""
    n = nodes.shape[-1]
    out = np.ones(nodes.shape[:-1])
    for i in range(n):
        for j in range(i + 1, n):
            out = out * np.abs(nodes[..., j] - nodes[..., i])
    return out


def rootspace_oracle_H(kind: RootFunctionKind, s, N: int, spec: QuadratureSpec | None = None,
                       *, n_ext: int | None = None, n_int: int = 16) -> float:
    """``(1/N!) int_{C^N} prod phi(g_i)^(-2s) |det V|^2`` by a tensor cubature."""
    if not 1 <= N <= 3:
        raise UsageError("the root-space oracle is limited to N <= 3")
    s = float(s)
    if not s > N:
        raise UsageError("need s > N")
    t = _builtin_t(kind)
    g, w = _plane_rule(t, s, N, False, n_ext or 3 * N + 6, n_int, 2 * N + 2)
    total = 0.0
    m = len(g)
    idx = np.arange(m)
    if N == 1:
        return float(np.sum(w).real)
    # iterate over the first point, vectorize over the rest
    for i in range(m):
        if N == 2:
            d2 = np.abs(g - g[i]) ** 2
            total += w[i] * np.sum(w * d2)
        else:
            d_i = np.abs(g - g[i]) ** 2
            G1, G2 = np.meshgrid(idx, idx, indexing="ij")
            prod = d_i[G1] * d_i[G2] * np.abs(g[G1] - g[G2]) ** 2
            total += w[i] * np.sum(w[G1] * w[G2] * prod)
    return float(total / math.factorial(N))


def rootspace_oracle_F(kind: RootFunctionKind, s, N: int, spec: QuadratureSpec | None = None,
                       *, n_line: int = 40, n_ext: int | None = None, n_int: int = 16) -> float:
    """Sum over real/complex root strata of
    ``2^M/(L! M!) int prod w(a) prod w(b) w(conj b) |det V|``."""
    if not 1 <= N <= 3:
        raise UsageError("the root-space oracle is limited to N <= 3")
    s = float(s)
    if not s > N:
        raise UsageError("need s > N")
    t = _builtin_t(kind)
    total = 0.0
    for M in range(N // 2 + 1):
        L = N - 2 * M
        if M == 0:
            a, wa = _ordered_real(t, s, L, n_line)
            total += float(np.sum(wa * _vandermonde_abs(a)))
            continue
        # M == 1 for N <= 3: one conjugate pair in the upper half plane
        b, wb = _plane_rule(t, s, N, True, n_ext or 3 * N + 6, n_int, 2 * N + 8)
        pair = wb * 2 * np.abs(b.imag)
        if L == 0:
            total += 2.0 * float(np.sum(pair))
        else:
            a, wa = _ordered_real(t, s, 1, n_line)
            d = np.abs(a[:, 0][:, None] - b[None, :]) ** 2
            total += 2.0 * float(np.sum(wa[:, None] * pair[None, :] * d))
    return total


# ---------------------------------------------------------------------------
# volumes


@dataclass(frozen=True)
class PiMultiple:
    """The exact number ``coefficient * pi^pi_power``."""

    coefficient: Fraction
    pi_power: int

    def __float__(self):
        return float(self.coefficient) * math.pi ** self.pi_power

    def __str__(self):
        if not self.pi_power:
            return str(self.coefficient)
        pw = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        return pw if self.coefficient == 1 else f"{self.coefficient}*{pw}"


def star_volume_real(kind: RootFunctionKind, N: int, route: str = "closed",
                     spec: QuadratureSpec | None = None):
    """Volume of ``{a in R^(N+1) : Phi <= 1}``, ``2 F_N(N+1)/(N+1)``.

    ``route="closed"`` returns an exact Fraction (Mahler and reciprocal);
    ``route="numeric"`` uses the Pfaffian route and returns a float.
    """
    if route == "closed":
        c, _ = closed_form("F", kind, N).exact_value(N + 1)
        return 2 * c / (N + 1)
    if route == "numeric":
        return 2.0 * F_numeric(kind, N + 1, N, spec=spec) / (N + 1)
    raise UsageError("route must be 'closed' or 'numeric'")


def star_volume_complex(kind: RootFunctionKind, N: int, route: str = "closed",
                        spec: QuadratureSpec | None = None):
    """Volume of ``{a in C^(N+1) : Phi <= 1}``, ``2 pi H_N(N+1)/(2N+2)``.

    The closed route returns a :class:`PiMultiple`, the numeric route a float.
    """
    if route == "closed":
        c, k = closed_form("H", kind, N).exact_value(N + 1)
        return PiMultiple(c / (N + 1), k + 1)
    if route == "numeric":
        return 2.0 * math.pi * H_numeric(kind, N + 1, N, spec=spec) / (2 * N + 2)
    raise UsageError("route must be 'closed' or 'numeric'")


# ---------------------------------------------------------------------------
# trajectories of zeros and poles in the t-reciprocal family


@dataclass(frozen=True)
class TrajectoryPoint:
    t: Fraction
    feature: str  # "zero" or "pole"
    index: int
    location: complex
    multiplicity: int = 1


def _t_grid(ts) -> list[Fraction]:
    out = [as_fraction(t) if not isinstance(t, float) else Fraction(t).limit_denominator(10 ** 12)
           for t in ts]
    for t in out:
        if not 0 < t < 1:
            raise UsageError("trajectory parameters must lie strictly between 0 and 1")
    return out


def _map_threads(fn, items, threads: int | None):
    items = list(items)
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def trajectory_H(N: int, ts: Sequence) -> list[TrajectoryPoint]:
    """Zeros and poles of ``H_N(mu_t; s)`` from its factored closed form."""
    _check_N(N)
    out = []
    for t in _t_grid(ts):
        out.append(TrajectoryPoint(t, "zero", 0, 0j, N))
        for n in range(1, N + 1):
            u = t ** (2 * n)
            out.append(TrajectoryPoint(t, "zero", n, complex(-n * (1 + u) / (1 - u))))
        for n in range(1, N + 1):
            out.append(TrajectoryPoint(t, "pole", n, complex(n)))
            out.append(TrajectoryPoint(t, "pole", -n, complex(-n)))
    return out


def _F_numerator_fit(t: Fraction, N: int, spec: QuadratureSpec | None):
    """Coefficients (highest first) of ``G(s) = F_N(mu_t; s) prod (s^2 - (N-2j)^2) / s^J``.

    ``G`` is a polynomial of degree ``J = N/2``; it is recovered by least
    squares from Pfaffian-route values at real ``s > N`` and continued to the
    negative axis, where the integrals defining ``F`` diverge.
    """
    J = N // 2
    kind = treciprocal(t)
    ss = np.linspace(N + 0.5, N + 0.5 + 1.5 * (J + 3), J + 4)
    F = np.array([F_numeric_det_route(kind, s, N, spec=spec) for s in ss])
    D = np.prod([ss ** 2 - (N - 2 * j) ** 2 for j in range(J)], axis=0)
    G = F * D / ss ** J
    coef = np.polyfit(ss, G, J)
    resid = np.max(np.abs(np.polyval(coef, ss) - G)) / np.max(np.abs(G))
    if resid > 1e-7:
        raise NumericFailure(f"numerator fit residual {resid:.1e}; structure assumption failed")
    return coef


def _bisect(f, a: float, b: float, tol: float) -> float:
    fa = f(a)
    while b - a > tol:
        m = 0.5 * (a + b)
        if m in (a, b):
            break
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def trajectory_F(N: int, ts: Sequence, spec: QuadratureSpec | None = None, *,
                 tol: float = 1e-4, threads: int | None = None) -> list[TrajectoryPoint]:
    """Zeros and poles of ``F_N(mu_t; s)`` for even ``N <= 6``.

    Poles sit at ``+-(N - 2j)``; besides the ``J``-fold zero at the origin
    one real zero is searched in each gap between consecutive negative poles
    by dyadic refinement and bisection.  A gap without a sign change is
    logged (``ZeroNotBracketed``) and skipped; a located zero whose fitted
    numerator exceeds ``tol`` times its value at the gap midpoint raises
    ``NumericFailure``.
    """
    if N % 2 or not 2 <= N <= 6:
        raise UsageError("trajectory_F supports even N <= 6")
    J = N // 2
    grid = _t_grid(ts)

    def one(t):
        coef = _F_numerator_fit(t, N, spec)
        g = lambda s: float(np.polyval(coef, s))  # noqa: E731
        pts = [TrajectoryPoint(t, "zero", 0, 0j, J)]
        edges = [-(N - 2 * j) for j in range(J)] + [0]
        for i in range(J):
            a, b = float(edges[i]), float(edges[i + 1])
            found = None
            for depth in range(1, 12):
                # uniform dyadic points plus geometric ones crowding the ends,
                # where zeros sit when t is near 0 or 1
                geo = (b - a) * 2.0 ** -np.arange(depth, depth + 48)
                xs = np.unique(np.concatenate([np.linspace(a, b, 2 ** depth + 1)[1:-1],
                                               a + geo, b - geo]))
                xs = xs[(xs > a) & (xs < b)]
                vals = np.array([g(x) for x in xs])
                flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
                # endpoints are poles (or the origin), so only interior flips count
                if len(flips):
                    k = flips[0]
                    found = _bisect(g, xs[k], xs[k + 1], 0.0)
                    break
                exact = np.nonzero(vals == 0)[0]
                if len(exact):
                    found = float(xs[exact[0]])
                    break
            if found is None:
                log.warning("%s", ZeroNotBracketed(f"no sign change in ({a}, {b}) at t={t}"))
                continue
            ref = abs(g(0.5 * (a + b)))
            if ref and abs(g(found)) > tol * ref:
                raise NumericFailure(f"zero residual {abs(g(found)) / ref:.1e} at t={t}")
            pts.append(TrajectoryPoint(t, "zero", i + 1, complex(found)))
        for j in range(J):
            pts.append(TrajectoryPoint(t, "pole", N - 2 * j, complex(N - 2 * j)))
            pts.append(TrajectoryPoint(t, "pole", -(N - 2 * j), complex(-(N - 2 * j))))
        return pts

    return [p for pts in _map_threads(one, grid, threads) for p in pts]
