"""
Zeros of the moment functions as t varies
=========================================

"""

from fractions import Fraction

import mdist

# zeros of H_N(mu_t; s) move toward the poles at -n as t shrinks
ts = [Fraction(k, 10) for k in range(1, 10)]
for p in mdist.trajectory_H(3, ts):
    if p.feature == "zero" and p.index > 0:
        print(p.t, p.index, round(p.location.real, 6))

# F_2 has one negative zero per t, found from a fitted numerator
for p in mdist.trajectory_F(2, ts):
    if p.feature == "zero" and p.index == 1:
        print(p.t, round(p.location.real, 6))
