"""
Mahler measure and its reciprocal cousins
=========================================

"""

from fractions import Fraction

import mdist

# Lehmer's polynomial has the smallest known measure above 1
lehmer = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]
print("mu(Lehmer) =", mdist.distance(mdist.MAHLER, lehmer))

# reciprocal f of degree 2d comes from g of degree d, with rho(g) = mu(f)
g = mdist.recover_g(mdist.Polynomial(lehmer))
print("g =", g)
print("rho(g) =", mdist.distance(mdist.RECIPROCAL, g))

# the t-reciprocal family slides from mu (t = 0) to rho (t = 1)
for t in (Fraction(0), Fraction(1, 2), Fraction(1)):
    kind = mdist.treciprocal(t) if 0 < t < 1 else (mdist.MAHLER if t == 0 else mdist.RECIPROCAL)
    print(t, mdist.distance(kind, [1, -3, 1]))

# repeated roots on the unit circle: integer input takes the exact squarefree route
print(mdist.distance(mdist.MAHLER, [1, 3, 3, 1]))
