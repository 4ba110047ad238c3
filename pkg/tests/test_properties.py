"""Property-based checks with hypothesis."""

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from mdist.distfun import MAHLER, RECIPROCAL, distance, treciprocal
from mdist.exactalg import RationalFunction, S, Poly, determinant, pfaffian
from mdist.polyroots import Polynomial, from_roots, recover_g, roots, substitute_laurent

ints = st.integers(-20, 20)


@st.composite
def antisymmetric(draw, max_half=4):
    n = 2 * draw(st.integers(1, max_half))
    M = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            M[j][k] = draw(ints)
            M[k][j] = -M[j][k]
    return M


@given(antisymmetric())
def test_pf_squared_is_det(M):
    assert pfaffian(M) ** 2 == determinant(M)


@given(st.lists(ints, min_size=2, max_size=6).filter(lambda c: c[0] != 0))
def test_laurent_round_trip(c):
    g = Polynomial(c)
    assert recover_g(substitute_laurent(g, 1)).coeffs == tuple(c)


@settings(deadline=None)
# four decimals keeps the coefficient products clear of underflow
@given(st.lists(st.floats(-5, 5).map(lambda x: round(x, 4)), min_size=1, max_size=8), st.floats(0.5, 3))
def test_roots_round_trip(rs, lead):
    p = from_roots(lead, rs)
    back = from_roots(lead, roots(p).roots)
    scale = max(abs(x) for x in p.coeffs)
    assert np.allclose(np.asarray(back.coeffs, dtype=complex), p.coeffs, rtol=0, atol=1e-7 * scale)


@settings(deadline=None)
@given(st.lists(ints, min_size=1, max_size=5).filter(lambda c: c[0] != 0),
       st.lists(ints, min_size=1, max_size=5).filter(lambda c: c[0] != 0),
       st.sampled_from([MAHLER, RECIPROCAL, treciprocal(Fraction(1, 3))]))
def test_multiplicative(f, g, kind):
    fg = np.convolve(f, g).tolist()
    assert np.isclose(distance(kind, fg), distance(kind, f) * distance(kind, g), rtol=1e-7)


@given(st.lists(ints, min_size=1, max_size=4), st.lists(ints, min_size=1, max_size=4).filter(any))
def test_ratfun_field_laws(a, b):
    x = RationalFunction(Poly(a), Poly([1, 1]))
    y = RationalFunction(Poly(b), Poly([-3, 0, 1]))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * (y + S) == x * y + x * S
