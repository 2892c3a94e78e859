"""Two su(1,1) realizations on Gauss-Laguerre functions.

Both realizations carry the discrete series with lowest weight 1/2. Their
basis functions, rescaled by powers of a, are the circle eigenvalues up to
the sign (-1)^n.
"""

from wignerqpi import glbasis

for realization, params in ((glbasis.Realization.PI, glbasis.CIRCLE_PI), (glbasis.Realization.SIGMA, glbasis.CIRCLE_SIGMA)):
    worst = {}
    for n in range(9):
        for key, val in glbasis.eigen_residuals(realization, params, n).items():
            worst[key] = max(worst.get(key, 0.0), val)
    print(realization.value, {k: f"{v:.1e}" for k, v in worst.items()})

print(" n   lambda_n^C(1.3)   a^1.5 e_n        sqrt(a) u_n")
for n in range(6):
    lam, via_e, via_u = glbasis.identify_circle_spectrum(n, 1.3)
    print(f"{n:2d}  {lam: .12f}  {via_e: .12f}  {via_u: .12f}")
