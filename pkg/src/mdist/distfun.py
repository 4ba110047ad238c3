"""Root functions and the multiplicative distance functions they generate.

A distance function is determined by its root function ``phi`` through
``Phi(f) = |a| * prod phi(gamma_n)``.  Built-in kinds:

* Mahler: ``phi(g) = max(1, |g|)``
* t-reciprocal (``0 <= t <= 1``): ``phi(g) = max(1,|r+|) * max(1,|r-|)`` with
  ``r+-`` the roots of ``x^2 - g x + t``; ``t = 1`` is the reciprocal measure
  and ``t = 0`` collapses to Mahler.
* Custom: any positive callable together with growth constants
  ``kappa, R0`` such that ``phi(g) >= kappa |g|`` whenever ``|g| >= R0``.
  Custom callables must be safe to call from several threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import UsageError
from .polyroots import Polynomial, roots


@dataclass(frozen=True)
class RootFunctionKind:
    variant: str  # "mahler" | "reciprocal" | "treciprocal" | "custom"
    t: Fraction | None = None
    func: Callable | None = field(default=None, compare=False)
    kappa: float = 1.0
    R0: float = 1.0
    symmetric: bool = False
    name: str = ""

    # -- evaluation -------------------------------------------------------

    @property
    def t_value(self) -> float:
        """The Laurent parameter as a float (0 for Mahler, 1 for reciprocal)."""
        if self.variant == "mahler":
            return 0.0
        if self.variant == "reciprocal":
            return 1.0
        if self.variant == "treciprocal":
            return float(self.t)
        raise UsageError("custom kinds have no Laurent parameter")

    @property
    def t_exact(self) -> Fraction:
        if self.variant == "mahler":
            return Fraction(0)
        if self.variant == "reciprocal":
            return Fraction(1)
        if self.variant == "treciprocal":
            return self.t
        raise UsageError("custom kinds have no Laurent parameter")

    @property
    def is_builtin(self) -> bool:
        return self.variant != "custom"

    @property
    def even_symmetric(self) -> bool:
        """Whether ``phi(-g) = phi(g)`` and ``phi(conj g) = phi(g)``."""
        return self.is_builtin or self.symmetric

    def phi(self, gamma):
        """Vectorized root function."""
        g = np.asarray(gamma, dtype=complex)
        if self.variant == "custom":
            out = np.asarray(np.vectorize(self.func, otypes=[float])(g), dtype=float)
            return out if out.ndim else float(out)
        t = self.t_value
        if t == 0.0:
            out = np.maximum(1.0, np.abs(g))
        else:
            out = np.maximum(1.0, np.abs(_big_root(g, t)))
        return out if out.ndim else float(out)

    def __call__(self, gamma):
        return self.phi(gamma)

    # -- geometry used by quadrature and enumeration ----------------------

    @property
    def growth(self) -> tuple[float, float]:
        """Constants ``(kappa, R0)`` with ``phi(g) >= kappa |g|`` for ``|g| >= R0``."""
        if self.variant == "custom":
            return self.kappa, self.R0
        t = self.t_value
        if t == 0.0:
            return 1.0, 1.0
        # |r+| >= |g|/2 and |g| <= |r+| + t/|r+| give phi >= (1 - 2t/R0^2)|g|
        R0 = 4.0
        return 1.0 - 2.0 * t / R0 ** 2, R0

    def real_breaks(self) -> list[float]:
        """Points on the real line where ``phi`` is not smooth."""
        if self.variant == "custom":
            return []
        a = 1.0 + self.t_value
        return [-a, a]

    def radial_breaks(self) -> list[float]:
        if self.variant == "custom":
            return []
        t = self.t_value
        out = {1.0 + t}
        if 0.0 < t:
            out.add(1.0 - t)
        return sorted(x for x in out if x > 0)

    def angular_breaks(self, r: np.ndarray) -> np.ndarray:
        """Angles in ``[0, 2 pi]`` where the circle ``|g| = r`` meets the
        non-smooth locus; returned as an array of shape ``(len(r), 4)``
        padded with NaN."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.full((len(r), 4), np.nan)
        if self.variant == "custom" or self.t_value == 0.0:
            return out
        t = self.t_value
        lo, hi = 1.0 - t, 1.0 + t
        inside = (r > lo) & (r < hi)
        if t == 1.0:
            # the locus is the segment [-2, 2]
            out[inside, 0] = 0.0
            out[inside, 1] = np.pi
            out[inside, 2] = 2 * np.pi
            return out
        c2 = np.clip((r[inside] ** 2 - lo ** 2) / (hi ** 2 - lo ** 2), 0.0, 1.0)
        psi = np.arccos(np.sqrt(c2))
        th = np.arctan2(lo * np.sin(psi), hi * np.cos(psi))
        out[inside, 0] = th
        out[inside, 1] = np.pi - th
        out[inside, 2] = np.pi + th
        out[inside, 3] = 2 * np.pi - th
        return out

    def __str__(self):
        if self.variant == "treciprocal":
            return f"trec:{self.t}"
        return self.name or self.variant


def _big_root(g: np.ndarray, t: float) -> np.ndarray:
    """Root of ``x^2 - g x + t`` with the larger modulus, computed without
    cancellation."""
    d = np.sqrt(g * g - 4.0 * t)
    a = g + d
    b = g - d
    return 0.5 * np.where(np.abs(a) >= np.abs(b), a, b)


MAHLER = RootFunctionKind("mahler", name="mahler")
RECIPROCAL = RootFunctionKind("reciprocal", name="reciprocal")


def treciprocal(t) -> RootFunctionKind:
    t = Fraction(t) if not isinstance(t, str) else Fraction(t.strip())
    if not 0 <= t <= 1:
        raise UsageError("t must lie in [0, 1]")
    return RootFunctionKind("treciprocal", t=t, name=f"trec:{t}")


def custom(func: Callable, kappa: float, R0: float, symmetric: bool = False,
           name: str = "custom") -> RootFunctionKind:
    if kappa <= 0 or R0 <= 0:
        raise UsageError("growth constants must be positive")
    return RootFunctionKind("custom", func=func, kappa=float(kappa), R0=float(R0),
                            symmetric=symmetric, name=name)


def parse_kind(text: str) -> RootFunctionKind:
    """``mahler``, ``reciprocal`` or ``trec:<p/q>``."""
    s = text.strip().lower()
    if s in ("mahler", "mu"):
        return MAHLER
    if s in ("reciprocal", "rho"):
        return RECIPROCAL
    if s.startswith("trec:"):
        try:
            return treciprocal(Fraction(s[5:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad t in {text!r}") from exc
    raise UsageError(f"unknown kind {text!r}")


# ---------------------------------------------------------------------------


def root_value(kind: RootFunctionKind, gamma) -> float:
    return kind.phi(gamma)


def distance(kind: RootFunctionKind, p: Polynomial | list) -> float:
    """``|a| * prod phi(gamma_n)``; zero for the zero polynomial."""
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    if p.is_zero:
        return 0.0
    rs = roots(p)
    lead = abs(rs.leading)
    if len(rs) == 0:
        return float(lead)
    return float(lead * np.prod(kind.phi(rs.roots)))


def monic_restriction(kind: RootFunctionKind, b) -> float:
    """Distance of ``x^N + b_1 x^(N-1) + ... + b_N``."""
    return distance(kind, Polynomial([1, *list(b)]))


def asymptotic_check(kind: RootFunctionKind, radius: float, samples: int = 64) -> float:
    """Largest ``|phi(g)/|g| - 1|`` over ``samples`` points on ``|g| = radius``."""
    if radius <= 0:
        raise UsageError("radius must be positive")
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    g = radius * np.exp(1j * theta)
    return float(np.max(np.abs(np.asarray(kind.phi(g)) / np.abs(g) - 1.0)))


def root_bound(kind: RootFunctionKind, xi: float) -> float:
    """Radius of a disk containing ``{g : phi(g) <= xi}``."""
    if kind.variant == "mahler":
        return float(xi)
    if kind.variant == "reciprocal":
        return float(xi) + 1.0
    if kind.variant == "treciprocal":
        return float(xi) + float(kind.t)
    return max(kind.R0, float(xi) / kind.kappa)
