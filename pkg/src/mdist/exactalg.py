"""Exact rational arithmetic, rational functions of ``s`` and generic
determinant / Pfaffian routines.

Scalars are :class:`fractions.Fraction` (Python integers are arbitrary
precision, so ``Fraction`` already is a canonical big rational).  Matrices
are plain nested sequences; the algorithms only need ``+ - * /`` and a
comparison with zero, so they run unchanged on integers, fractions,
:class:`RationalFunction` entries, or floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DivisionByZeroFunction,
    NonIntegerPole,
    NotAntisymmetric,
    OddSize,
    PatternViolation,
    RepeatedPole,
)

BigRational = Fraction


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions or decimal strings such as ``"3/7"`` exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


# ---------------------------------------------------------------------------
# univariate polynomials over Q (coefficients stored lowest degree first)


class Poly:
    """Polynomial in ``s`` with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def _raw(cls, c: list) -> Poly:
        while c and c[-1] == 0:
            c.pop()
        p = object.__new__(cls)
        p.c = tuple(c)
        return p

    @classmethod
    def monomial(cls, k: int, coeff=1) -> Poly:
        return cls([0] * k + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Poly:
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1  # -1 for the zero polynomial

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly([other]).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-x for x in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            k = as_fraction(other)
            return Poly._raw([k * x for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        d = other.c
        dl = d[-1]
        q = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
        for i in range(len(r) - len(d), -1, -1):
            coef = r[i + len(d) - 1] / dl
            q[i] = coef
            if coef:
                for j, y in enumerate(d):
                    r[i + j] -= coef * y
        return Poly._raw(q), Poly._raw(r[: len(d) - 1])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> Poly:
        if not self.c:
            return self
        return self * (1 / self.lead)

    def primitive(self) -> Poly:
        """Integer coefficients, content one, positive leading coefficient."""
        if not self.c:
            return self
        den = math.lcm(*(x.denominator for x in self.c))
        ints = [int(x * den) for x in self.c]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Poly._raw([Fraction(x // g) for x in ints])

    def gcd(self, other: Poly) -> Poly:
        """Monic greatest common divisor (1 when both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b.monic(), a.divmod(b)[1]
        return Poly([1]) if a.is_zero() else a.monic()

    def deriv(self) -> Poly:
        return Poly._raw([i * x for i, x in enumerate(self.c)][1:])

    def __call__(self, x):
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def eval_float(self, x):
        acc = 0.0
        for coef in reversed(self.c):
            acc = acc * x + float(coef)
        return acc

    def compose_neg(self) -> Poly:
        """p(-s)."""
        return Poly._raw([x if i % 2 == 0 else -x for i, x in enumerate(self.c)])

    def int_coeffs(self) -> list[int]:
        if any(x.denominator != 1 for x in self.c):
            raise ValueError("polynomial has non-integer coefficients")
        return [int(x) for x in self.c]

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _poly_str(self.c, "s")


def _poly_str(c: Sequence[Fraction], var: str) -> str:
    if not c:
        return "0"
    terms = []
    for k in range(len(c) - 1, -1, -1):
        x = c[k]
        if x == 0:
            continue
        mag = abs(x)
        if k == 0:
            body = str(mag)
        else:
            pw = var if k == 1 else f"{var}^{k}"
            body = pw if mag == 1 else f"{mag}*{pw}"
        sign = "-" if x < 0 else "+"
        terms.append((sign, body))
    s0, b0 = terms[0]
    out = ("-" if s0 == "-" else "") + b0
    for sg, b in terms[1:]:
        out += f" {sg} {b}"
    return out


S_POLY = Poly([0, 1])


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Canonical ratio of integer polynomials in ``s``.

    Canonical form: numerator and denominator coprime with integer
    coefficients, no common integer content, denominator leading
    coefficient positive.  Two rational functions are equal iff their
    canonical forms agree coefficientwise.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Poly) else Poly([num])
        den = den if isinstance(den, Poly) else Poly([den])
        if den.is_zero():
            raise DivisionByZeroFunction("zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _trusted(cls, num: Poly, den: Poly) -> RationalFunction:
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def s(cls) -> RationalFunction:
        return cls(S_POLY)

    @classmethod
    def const(cls, c) -> RationalFunction:
        return cls(Poly([c]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, np.integer)):
            return RationalFunction(Poly([other]))
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction(Poly())
        # cross-cancel first to keep degrees small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num // g1) * (o.num // g2)
        d = (self.den // g2) * (o.den // g1)
        return RationalFunction._trusted(*_normalize_scale(n, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZeroFunction("division by the zero rational function")
        return self * RationalFunction._trusted(o.den, o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(1) / (self ** (-n))
        return RationalFunction._trusted(*_normalize_scale(self.num ** n, self.den ** n))

    def __call__(self, x):
        """Evaluate; exact for ints/Fractions, floating for floats/complex."""
        if isinstance(x, (int, Fraction, np.integer)):
            x = as_fraction(x)
            d = self.den(x)
            if d == 0:
                raise ZeroDivisionError(f"pole at s = {x}")
            return self.num(x) / d
        d = self.den.eval_float(x)
        return self.num.eval_float(x) / d

    def evaluate(self, x):
        return self(x)

    def neg_arg(self) -> RationalFunction:
        """f(-s)."""
        return RationalFunction(self.num.compose_neg(), self.den.compose_neg())

    def is_even(self) -> bool:
        return self == self.neg_arg()

    def is_odd(self) -> bool:
        return self == -self.neg_arg()

    def limit_at_infinity(self):
        """Limit as s -> oo: a rational, 0, or ``math.inf`` (sign of growth)."""
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero() or dn < dd:
            return Fraction(0)
        if dn == dd:
            return self.num.lead / self.den.lead
        return math.inf if self.num.lead > 0 else -math.inf

    def numerator_coeffs(self) -> list[int]:
        return self.num.int_coeffs()

    def denominator_coeffs(self) -> list[int]:
        return self.den.int_coeffs()

    def __repr__(self):
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den == Poly([1]):
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _normalize_scale(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly(), Poly([1])
    # integer coefficients with joint content one
    den_l = math.lcm(*(x.denominator for x in num.c + den.c))
    ni = [int(x * den_l) for x in num.c]
    di = [int(x * den_l) for x in den.c]
    g = math.gcd(*ni, *di)
    if di[-1] < 0:
        g = -g
    return (Poly._raw([Fraction(x // g) for x in ni]),
            Poly._raw([Fraction(x // g) for x in di]))


def _canonical(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly(), Poly([1])
    g = num.gcd(den)
    if g.degree > 0:
        num, den = num // g, den // g
    return _normalize_scale(num, den)


S = RationalFunction.s()


@dataclass(frozen=True)
class ScaledRationalFunction:
    """``pi**pi_power * body(s)``."""

    pi_power: int
    body: RationalFunction

    def __call__(self, s):
        return math.pi ** self.pi_power * float(self.body(s)) if not isinstance(s, complex) \
            else math.pi ** self.pi_power * self.body(s)

    def exact_value(self, s) -> tuple[Fraction, int]:
        """Exact rational coefficient of ``pi**pi_power`` at rational ``s``."""
        return self.body(as_fraction(s)), self.pi_power

    def __mul__(self, other):
        if isinstance(other, ScaledRationalFunction):
            return ScaledRationalFunction(self.pi_power + other.pi_power, self.body * other.body)
        return ScaledRationalFunction(self.pi_power, self.body * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ScaledRationalFunction):
            return NotImplemented
        return self.pi_power == other.pi_power and self.body == other.body

    def __hash__(self):
        return hash((self.pi_power, self.body))

    def __str__(self):
        if self.pi_power == 0:
            return str(self.body)
        pw = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        return f"{pw} * [{self.body}]"


# ---------------------------------------------------------------------------
# partial fractions


def _integer_roots(p: Poly) -> list[int]:
    """Integer roots of ``p`` (simple factors only), certified exactly."""
    ints = p.primitive().int_coeffs()
    roots = []
    # strip roots at zero
    while ints and ints[0] == 0:
        roots.append(0)
        ints = ints[1:]
    if len(ints) > 1:
        approx = np.roots(np.array(ints[::-1], dtype=float))
        q = Poly(ints)
        for r in approx:
            k = int(round(r.real))
            if abs(r.imag) < 1e-6 * max(1.0, abs(r)) and q(k) == 0 and k not in roots:
                roots.append(k)
    return roots


def partial_fractions(f: RationalFunction) -> tuple[Poly, list[tuple[int, Fraction]]]:
    """Split ``f`` as ``poly(s) + sum c_k / (s - k)`` over distinct integer poles."""
    den = f.den
    if den.degree <= 0:
        return f.num * (1 / den.lead), []
    if den.gcd(den.deriv()).degree > 0:
        raise RepeatedPole("denominator has a repeated factor")
    poles = _integer_roots(den)
    if len(poles) != den.degree:
        raise NonIntegerPole("denominator does not split into integer linear factors")
    quotient, rem = f.num.divmod(den)
    dprime = den.deriv()
    residues = [(k, rem(Fraction(k)) / dprime(Fraction(k))) for k in sorted(poles)]
    return quotient, residues


# ---------------------------------------------------------------------------
# matrices


def _is_float_scalar(x) -> bool:
    return isinstance(x, (float, complex, np.floating, np.complexfloating))


def _is_floating(M) -> bool:
    if isinstance(M, np.ndarray) and M.dtype != object:
        return True
    return any(_is_float_scalar(x) for row in M for x in row)


def _rows(M) -> list[list]:
    return [list(r) for r in M]


def _exact_div(a, b):
    if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
        q, r = divmod(int(a), int(b))
        if r == 0:
            return q
        return Fraction(int(a), int(b))
    return a / b


def determinant(M):
    """Determinant: fraction-free Bareiss for exact scalars, LU for floats."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    if _is_floating(M):
        return np.linalg.det(np.array(M, dtype=complex if _has_complex(M) else float))
    A = _rows(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0 * A[0][0] if not isinstance(A[0][0], int) else 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_div(row_i[j] * akk - aik * row_k[j], prev)
        prev = akk
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def _has_complex(M) -> bool:
    arr = np.asarray(M)
    if arr.dtype != object:
        return np.iscomplexobj(arr)
    return any(isinstance(x, (complex, np.complexfloating)) for row in M for x in row)


def check_antisymmetric(M, tol: float | None = None) -> None:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    floating = _is_floating(M)
    if floating:
        arr = np.asarray(M)
        scale = float(np.max(np.abs(arr))) if arr.size else 0.0
        thr = tol if tol is not None else 1e3 * np.finfo(float).eps * max(scale, 1e-300)
        if np.max(np.abs(arr + arr.T), initial=0.0) > thr:
            raise NotAntisymmetric("matrix is not antisymmetric")
        return
    for j in range(n):
        if M[j][j] != 0:
            raise NotAntisymmetric("nonzero diagonal entry")
        for k in range(j + 1, n):
            if M[j][k] != -M[k][j]:
                raise NotAntisymmetric(f"entry ({j},{k}) breaks antisymmetry")


def pfaffian(M, check: bool = True):
    """Pfaffian of an even antisymmetric matrix.

    Exact scalars: perfect-matching expansion up to size 8, skew Gaussian
    elimination above that.  Floats: elimination with partial pivoting.
    """
    n = len(M)
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    if check:
        check_antisymmetric(M)
    if n == 0:
        return 1
    if _is_floating(M):
        return _pfaffian_float(np.array(M))
    if n <= 8:
        return pfaffian_matching(M)
    return pfaffian_elimination(M)


def pfaffian_matching(M):
    """Expansion along the first row: sum over perfect matchings."""
    idx = tuple(range(len(M)))
    cache: dict[tuple, object] = {}

    def rec(rem: tuple):
        if not rem:
            return 1
        if rem in cache:
            return cache[rem]
        i = rem[0]
        total = 0
        for pos in range(1, len(rem)):
            j = rem[pos]
            a = M[i][j]
            if a == 0:
                continue
            sub = rec(rem[1:pos] + rem[pos + 1:])
            term = a * sub
            total = total + term if pos % 2 else total - term
        cache[rem] = total
        return total

    return rec(idx)


def pfaffian_elimination(M):
    """Skew-symmetric Gaussian elimination over an exact field."""
    A = _rows(M)
    n = len(A)
    pf = 1
    for k in range(0, n, 2):
        piv = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
        if piv is None:
            return 0 * pf if not isinstance(pf, int) else 0
        if piv != k + 1:
            _swap_sym(A, k + 1, piv)
            pf = -pf
        a = A[k][k + 1]
        pf = pf * a
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                upd = _exact_div(A[i][k + 1] * A[k][j] - A[i][k] * A[k + 1][j], a)
                A[i][j] = A[i][j] - upd
                A[j][i] = -A[i][j]
    return pf


def _swap_sym(A, p: int, q: int) -> None:
    A[p], A[q] = A[q], A[p]
    for row in A:
        row[p], row[q] = row[q], row[p]


def _pfaffian_float(A: np.ndarray):
    A = A.astype(complex if np.iscomplexobj(A) else float, copy=True)
    n = A.shape[0]
    pf = 1.0
    for k in range(0, n, 2):
        piv = k + 1 + int(np.argmax(np.abs(A[k, k + 1:])))
        if A[k, piv] == 0:
            return 0.0 * pf
        if piv != k + 1:
            A[[k + 1, piv], :] = A[[piv, k + 1], :]
            A[:, [k + 1, piv]] = A[:, [piv, k + 1]]
            pf = -pf
        a = A[k, k + 1]
        pf *= a
        if k + 2 < n:
            u = A[k + 2:, k + 1]  # column entries A[i, k+1]
            v = A[k + 2:, k]
            ak = A[k, k + 2:]
            ak1 = A[k + 1, k + 2:]
            A[k + 2:, k + 2:] -= (np.outer(u, ak) - np.outer(v, ak1)) / a
    return pf


def pfaffian_definition(M):
    """Pfaffian as ``1/(2^J J!) sum over S_{2J}`` (reference formula)."""
    n = len(M)
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    J = n // 2
    total = 0
    for perm in itertools.permutations(range(n)):
        term = _perm_sign(perm)
        for j in range(J):
            term = term * M[perm[2 * j]][perm[2 * j + 1]]
        total = total + term
    return _exact_div(total, 2 ** J * math.factorial(J))


def pfaffian_restricted(M):
    """``1/J!`` times the sum over permutations with ``tau(2j) > tau(2j-1)``."""
    n = len(M)
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    J = n // 2
    total = 0
    for perm in itertools.permutations(range(n)):
        if any(perm[2 * j + 1] < perm[2 * j] for j in range(J)):
            continue
        term = _perm_sign(perm)
        for j in range(J):
            term = term * M[perm[2 * j]][perm[2 * j + 1]]
        total = total + term
    return _exact_div(total, math.factorial(J))


def pfaffian_wedge(M):
    """Coefficient of the volume form in ``omega^J / J!``, with
    ``omega = sum_{j<k} M[j][k] e_j ^ e_k``."""
    n = len(M)
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    J = n // 2
    omega = {(j, k): M[j][k] for j in range(n) for k in range(j + 1, n) if M[j][k] != 0}
    power: dict[tuple, object] = {(): 1}
    for _ in range(J):
        nxt: dict[tuple, object] = {}
        for basis, c in power.items():
            for (j, k), w in omega.items():
                if j in basis or k in basis:
                    continue
                # moving e_j then e_k to their sorted slots
                sgn = (-1) ** (sum(1 for b in basis if b > j) + sum(1 for b in basis if b > k))
                key = tuple(sorted(basis + (j, k)))
                nxt[key] = nxt.get(key, 0) + sgn * c * w
        power = nxt
    top = power.get(tuple(range(n)), 0)
    return _exact_div(top, math.factorial(J))


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def submatrix(M, rows: Sequence[int], cols: Sequence[int] | None = None):
    cols = rows if cols is None else cols
    return [[M[r][c] for c in cols] for r in rows]


# ---------------------------------------------------------------------------
# increasing maps and the Pfaffian-of-a-sum expansion


@dataclass(frozen=True)
class IncreasingMap:
    """Strictly increasing map {1..K} -> {1..N}, stored by its image."""

    K: int
    N: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.K or any(
            not 1 <= a <= self.N for a in self.image
        ) or any(a >= b for a, b in zip(self.image, self.image[1:])):
            raise ValueError("image must be strictly increasing inside 1..N")

    def complement(self) -> IncreasingMap:
        rest = tuple(i for i in range(1, self.N + 1) if i not in self.image)
        return IncreasingMap(self.N - self.K, self.N, rest)

    def induced_permutation(self) -> tuple[int, ...]:
        return self.image + self.complement().image

    def sign(self) -> int:
        return _perm_sign(self.induced_permutation())


def increasing_maps(K: int, N: int) -> list[IncreasingMap]:
    return [IncreasingMap(K, N, c) for c in itertools.combinations(range(1, N + 1), K)]


def map_sign(u: IncreasingMap) -> int:
    return u.sign()


def pfaffian_sum_expansion(R, C):
    """``Pf(R + C)`` expanded as a signed sum over complementary minors."""
    n = len(R)
    if len(C) != n:
        raise ValueError("R and C must have equal size")
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    check_antisymmetric(R)
    check_antisymmetric(C)
    total = 0
    for M in range(n // 2 + 1):
        for u in increasing_maps(2 * M, n):
            rest = [i - 1 for i in u.complement().image]
            sel = [i - 1 for i in u.image]
            pr = pfaffian(submatrix(R, rest), check=False)
            pc = pfaffian(submatrix(C, sel), check=False)
            total = total + u.sign() * pr * pc
    return total


def checkerboard_pfaffian(U):
    """Pfaffian of a matrix vanishing whenever row and column share parity,
    via the determinant of its odd-row / even-column block."""
    n = len(U)
    if n % 2:
        raise OddSize("Pfaffian needs an even-sized matrix")
    check_antisymmetric(U)
    for j in range(n):
        for k in range(n):
            if (j - k) % 2 == 0 and U[j][k] != 0:
                raise PatternViolation(f"entry ({j + 1},{k + 1}) should vanish")
    A = [[U[2 * j][2 * k + 1] for k in range(n // 2)] for j in range(n // 2)]
    return determinant(A)


# ---------------------------------------------------------------------------
# sign products, Vandermonde and Cauchy matrices


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_product_matrix(alpha: Sequence) -> list[list[int]]:
    """Antisymmetric sign matrix whose Pfaffian equals the ordering sign
    ``prod_{j<k} sgn(alpha_k - alpha_j)``; bordered when ``len(alpha)`` is odd."""
    L = len(alpha)
    size = 2 * ((L + 1) // 2)
    T = [[0] * size for _ in range(size)]
    for j in range(size):
        for k in range(size):
            if j < L and k < L:
                T[j][k] = _sgn(alpha[k] - alpha[j])
            else:
                T[j][k] = _sgn(k - j)
    return T


def sign_product(alpha: Sequence) -> int:
    out = 1
    for j in range(len(alpha)):
        for k in range(j + 1, len(alpha)):
            out *= _sgn(alpha[k] - alpha[j])
    return out


def vandermonde(nodes: Sequence) -> list[list]:
    """``V[j][k] = nodes[k] ** j``."""
    n = len(nodes)
    return [[nodes[k] ** j for k in range(n)] for j in range(n)]


def vandermonde_product(nodes: Sequence):
    out = 1
    for m in range(len(nodes)):
        for n in range(m + 1, len(nodes)):
            out = out * (nodes[n] - nodes[m])
    return out


def cauchy_matrix(x: Sequence, y: Sequence) -> list[list[Fraction]]:
    """``1 / (x_j + y_k)``."""
    return [[1 / as_fraction(a + b) for b in y] for a in x]


def cauchy_determinant(x: Sequence, y: Sequence) -> Fraction:
    """Closed product form of ``det[1/(x_j + y_k)]``."""
    num = Fraction(1)
    n = len(x)
    for j in range(n):
        for k in range(j + 1, n):
            num *= (as_fraction(x[k]) - x[j]) * (as_fraction(y[k]) - y[j])
    den = Fraction(1)
    for a in x:
        for b in y:
            den *= as_fraction(a + b)
    return num / den


def is_number(x) -> bool:
    return isinstance(x, Number)
