"""
Counting reciprocal integer polynomials
=======================================

"""

import mdist

# leading constants c_N of the count of reciprocal f with deg f <= N, mu(f) <= T
for N, c in mdist.table_coefficients().items():
    print(N, c)

# exact enumeration drifts toward c_N T^(N//2 + 1) as T grows
for N in (2, 3):
    for T in (10, 20, 40):
        rep = mdist.enumerate_reciprocal(N, T)
        print(N, T, rep.exact_count, round(rep.exact_count / rep.predicted, 4))

# Monte Carlo volume of the reciprocal star body at N = 1 (exactly 16/3)
est = mdist.mc_star_volume(mdist.RECIPROCAL, 1, samples=200_000, seed=3)
print(est.value, "+-", est.std_error)
