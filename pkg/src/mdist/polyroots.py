"""Polynomials, root finding and the reciprocal <-> Laurent bijection.

Coefficients are stored leading-first, ``f(x) = a x^N + b_1 x^(N-1) + ... + b_N``.
Roots come from companion-matrix eigenvalues polished by Aberth-Ehrlich
iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Sequence

import numpy as np

from .errors import (
    NonFiniteCoefficient,
    NotReciprocal,
    OddDegree,
    ToleranceNotReached,
    ZeroPolynomial,
)

DEFAULT_TOL = 1e-13
SNAP_REAL = 1e-10


@dataclass(frozen=True)
class Polynomial:
    """Coefficient sequence, leading coefficient first.

    Leading zeros are allowed; the effective degree skips them.  Entries may
    be ints, Fractions, floats or complex numbers.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence[Number] | Number):
        if isinstance(coeffs, Number):
            coeffs = (coeffs,)
        object.__setattr__(self, "coeffs", tuple(coeffs) if len(coeffs) else (0,))

    @property
    def trimmed(self) -> tuple:
        c = self.coeffs
        i = 0
        while i < len(c) - 1 and c[i] == 0:
            i += 1
        return c[i:]

    @property
    def degree(self) -> int:
        """Effective degree; 0 for constants including the zero polynomial."""
        return len(self.trimmed) - 1

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    @property
    def leading(self):
        return self.trimmed[0]

    @property
    def is_real(self) -> bool:
        return all(not isinstance(x, complex) or x.imag == 0 for x in self.coeffs) and not any(
            isinstance(x, np.complexfloating) and x.imag != 0 for x in self.coeffs
        )

    @property
    def is_integer(self) -> bool:
        return all(
            isinstance(x, (int, np.integer)) or (isinstance(x, Fraction) and x.denominator == 1)
            for x in self.coeffs
        )

    def __call__(self, z):
        return eval_poly(self, z)

    def __mul__(self, other: Polynomial) -> Polynomial:
        a, b = self.trimmed, other.trimmed
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial(out)

    def scale(self, w) -> Polynomial:
        return Polynomial([w * x for x in self.coeffs])

    def as_array(self) -> np.ndarray:
        t = self.trimmed
        dtype = complex if any(isinstance(x, (complex, np.complexfloating)) for x in t) else float
        return np.array([complex(x) if dtype is complex else float(x) for x in t], dtype=dtype)

    def __str__(self):
        t = self.trimmed
        n = len(t) - 1
        parts = []
        for i, c in enumerate(t):
            k = n - i
            if c == 0 and n > 0:
                continue
            pw = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            parts.append(f"{c}{'*' if pw else ''}{pw}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class RootSet:
    """Multiset of roots together with the leading coefficient."""

    roots: np.ndarray
    leading: complex
    residual: float = field(default=0.0, compare=False)

    def __len__(self):
        return len(self.roots)

    def to_polynomial(self) -> Polynomial:
        return from_roots(self.leading, self.roots)


def eval_poly(p: Polynomial, z):
    """Horner evaluation; works elementwise on numpy arrays."""
    acc = 0 * z if isinstance(z, np.ndarray) else 0
    for c in p.coeffs:
        acc = acc * z + c
    return acc


def _check_finite(p: Polynomial) -> None:
    for c in p.coeffs:
        if isinstance(c, (float, complex, np.floating, np.complexfloating)) and not np.isfinite(c):
            raise NonFiniteCoefficient(f"coefficient {c!r} is not finite")


def _aberth(coef: np.ndarray, z: np.ndarray, tol: float, max_iter: int):
    """Polish all roots simultaneously; returns roots and the worst
    relative backward error ``|p(z)| / sum |a_k| |z|^k``."""
    n = len(z)
    dcoef = np.polyder(coef)
    absc = np.abs(coef)
    res = np.inf
    for _ in range(max_iter):
        pz = np.polyval(coef, z)
        scale = np.polyval(absc, np.abs(z))
        back = np.abs(pz) / np.where(scale > 0, scale, 1.0)
        res = float(back.max())
        if res <= tol:
            return z, res
        dpz = np.polyval(dcoef, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = w / (1.0 - w * inv.sum(axis=1))
        # converged roots are left alone, which keeps double roots stable
        corr = np.where((back <= tol) | ~np.isfinite(corr), 0.0, corr)
        z = z - corr
    pz = np.polyval(coef, z)
    scale = np.polyval(absc, np.abs(z))
    res = float((np.abs(pz) / np.where(scale > 0, scale, 1.0)).max()) if n else 0.0
    return z, res


def _spread(z: np.ndarray, coef: np.ndarray) -> np.ndarray:
    """Separate coincident starting points, which stall the Aberth update.

    The offset is tied to a lower bound on the root moduli (Fujiwara's bound
    for the reversed polynomial), so clusters of tiny roots are split too.
    """
    n = len(z)
    if n < 2:
        return z
    rev = np.abs(coef[::-1])
    k = np.arange(1, n + 1)
    lower = 1.0 / (2.0 * np.max((rev[1:] / rev[0]) ** (1.0 / k)))
    gap = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(gap, np.inf)
    tight = gap.min(axis=1) <= 1e-9 * np.maximum(np.abs(z), lower)
    if tight.any():
        ang = np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
        z = np.where(tight, z + 1e-3 * np.maximum(np.abs(z), lower) * ang, z)
    return z


def _symmetrize(z: np.ndarray) -> np.ndarray:
    """Snap near-real roots to the axis and pair the rest with conjugates."""
    z = z.copy()
    near = np.abs(z.imag) <= SNAP_REAL * np.maximum(1.0, np.abs(z))
    z[near] = z[near].real
    upper = [i for i in range(len(z)) if not near[i] and z[i].imag > 0]
    lower = [i for i in range(len(z)) if not near[i] and z[i].imag < 0]
    used: set[int] = set()
    for i in upper:
        best, bd = None, np.inf
        for j in lower:
            if j in used:
                continue
            d = abs(z[j] - np.conj(z[i]))
            if d < bd:
                best, bd = j, d
        if best is None:
            continue
        used.add(best)
        m = 0.5 * (z[i] + np.conj(z[best]))
        z[i], z[best] = m, np.conj(m)
    return z


def _float_roots(core: np.ndarray, tol: float, max_iter: int):
    z0 = _spread(np.roots(core).astype(complex), core)
    z, res = _aberth(core.astype(complex), z0, tol, max_iter)
    if res > tol:
        raise ToleranceNotReached(f"root residual {res:.3e} exceeds {tol:.1e}")
    return z, res


def _is_exact(t) -> bool:
    return all(isinstance(x, (int, np.integer, Fraction)) and not isinstance(x, bool) for x in t)


def _exact_roots(t, tol: float, max_iter: int):
    """Roots of a rational polynomial via its squarefree parts.

    ``rest_i / rest_(i+1)`` (with ``rest_(i+1) = gcd(rest_i, rest_i')``) has
    each root of multiplicity ``> i`` once, so repeated roots are found to
    full precision instead of ``eps^(1/m)``.
    """
    from .exactalg import Poly

    rest = Poly([Fraction(x) for x in t[::-1]])
    parts, res = [], 0.0
    while rest.degree > 0:
        nxt = rest.gcd(rest.deriv())
        rad = (rest // nxt).monic()
        if rad.degree > 0:
            c = np.array([float(x) for x in rad.c[::-1]])
            z, r = _float_roots(c, tol, max_iter)
            parts.append(z)
            res = max(res, r)
        rest = nxt
    return np.concatenate(parts), res


def roots(p: Polynomial, tol: float = DEFAULT_TOL, max_iter: int = 200) -> RootSet:
    """All roots of ``p`` with multiplicity.

    Each returned root satisfies ``|p(g)| <= tol * sum |a_k||g|^k``; real
    polynomials yield exactly conjugate-paired output.
    """
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no root multiset")
    _check_finite(p)
    t = p.trimmed
    lead = complex(t[0])
    if len(t) == 1:
        return RootSet(np.zeros(0, dtype=complex), lead)
    coef = p.as_array()
    # exact zero roots from trailing zeros
    nz = 0
    while coef[-1 - nz] == 0:
        nz += 1
    core = coef[: len(coef) - nz]
    if len(core) > 2 and _is_exact(t):
        z, res = _exact_roots(t[: len(t) - nz], tol, max_iter)
        z = _symmetrize(z)
    elif len(core) > 1:
        z, res = _float_roots(core, tol, max_iter)
        if p.is_real:
            z = _symmetrize(z)
    else:
        z, res = np.zeros(0, dtype=complex), 0.0
    z = np.concatenate([z, np.zeros(nz, dtype=complex)])
    order = np.lexsort((z.imag, z.real))
    return RootSet(z[order], lead, res)


def from_roots(leading, root_list) -> Polynomial:
    """Expand ``leading * prod (x - r)``; exact when the inputs are exact."""
    out: list = [leading]
    for r in root_list:
        if isinstance(r, (np.complexfloating, np.floating)):
            r = complex(r) if isinstance(r, np.complexfloating) else float(r)
        nxt = out + [0]
        for i in range(1, len(nxt)):
            nxt[i] = nxt[i] - r * out[i - 1]
        out = nxt
    return Polynomial(out)


def is_reciprocal(p: Polynomial) -> bool:
    """True iff the coefficients are palindromic over the effective degree."""
    if p.is_zero:
        return False
    t = p.trimmed
    return all(t[i] == t[-1 - i] for i in range(len(t)))


def substitute_laurent(g: Polynomial, t=1) -> Polynomial:
    """``x^J * g(x + t/x)`` for ``g`` of degree ``J``.

    With ``t = 1`` this maps integer polynomials of degree ``J`` bijectively
    onto reciprocal integer polynomials of degree ``2J``.
    """
    if g.is_zero:
        raise ZeroPolynomial("substitution of the zero polynomial")
    coeffs = g.trimmed
    J = len(coeffs) - 1
    # (x^2 + t)^k x^(J-k) has degree J+k; accumulate in ascending powers
    out = [0] * (2 * J + 1)
    for i, c in enumerate(coeffs):
        k = J - i  # power of (x + t/x)
        for m in range(k + 1):
            # (x^2 + t)^k = sum C(k,m) t^(k-m) x^(2m); times x^(J-k)
            out[2 * m + J - k] = out[2 * m + J - k] + c * math.comb(k, m) * t ** (k - m)
    return Polynomial(out[::-1])


def recover_g(f: Polynomial) -> Polynomial:
    """Inverse of ``substitute_laurent(., 1)`` on reciprocal even-degree input."""
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial")
    if not is_reciprocal(f):
        raise NotReciprocal("coefficients are not palindromic")
    t = list(f.trimmed)
    if (len(t) - 1) % 2:
        raise OddDegree("reciprocal polynomial of odd degree")
    J = (len(t) - 1) // 2
    # peel off the top power of (x + 1/x) repeatedly
    rem = t[: J + 1]  # rem[J - p] is the coefficient of x^p, p = J..0
    g = []
    for k in range(J, -1, -1):
        c = rem[J - k]
        g.append(c)
        # subtract c * (x + 1/x)^k restricted to nonnegative powers
        for m in range(k // 2 + 1):
            rem[J - (k - 2 * m)] = rem[J - (k - 2 * m)] - c * math.comb(k, m)
    return Polynomial(g)
