"""
Moment functions: closed forms against quadrature
=================================================

"""

import mdist

# exact rational functions in s, scaled by a power of pi for H
for N in (1, 2, 3):
    print(mdist.closed_form("F", mdist.RECIPROCAL, N))
print(mdist.closed_form("H", mdist.MAHLER, 2))

# Pfaffian route, determinant route and the root-space oracle at s = N + 1
N, s = 3, 4.0
exact = float(mdist.closed_form("F", mdist.RECIPROCAL, N)(s))
print("closed     ", exact)
print("pfaffian   ", mdist.F_numeric(mdist.RECIPROCAL, s, N))
print("determinant", mdist.F_numeric_det_route(mdist.RECIPROCAL, s, N))
print("oracle     ", mdist.rootspace_oracle_F(mdist.RECIPROCAL, s, N))

# star-body volumes are the moments at s = N + 1, divided by N + 1
print(mdist.star_volume_real(mdist.RECIPROCAL, 2))
