"""Spectra at radius xi*a from spectra at radius a.

The coefficients are Meixner polynomials. The scaling direction and the
2F1 argument are fixed by comparing all candidate conventions with
closed-form circle eigenvalues.
"""

import numpy as np

from wignerqpi import circle_eigenvalue, disk_eigenvalue, resolve_conventions
from wignerqpi.scaling import scaled_spectra

conv = resolve_conventions()
print(conv.report())

a, xi = 1.0, 2.0
for kind, direct in (("circle", circle_eigenvalue), ("disk", disk_eigenvalue)):
    series, truncs, tails = scaled_spectra(kind, 6, a, xi)
    exact = np.array([direct(m, xi * a) for m in range(7)])
    print(kind)
    for m in range(7):
        print(f"  m={m}  series {series[m]: .12f}  direct {exact[m]: .12f}  |diff| {abs(series[m] - exact[m]):.1e}  N={truncs[m]}")
