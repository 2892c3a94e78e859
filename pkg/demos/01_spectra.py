"""Disk and circle spectra at a few radii.

The eigenvalues oscillate in sign and decay slowly with n. The disk
values tend to 1 as the radius grows, one Fock state at a time.
"""

import numpy as np

from wignerqpi import spectrum

np.set_printoptions(precision=5, suppress=True, linewidth=100)

for a in (0.5, 1.0, 2.0):
    disk = spectrum("disk", a, 10)
    circle = spectrum("circle", a, 10)
    print(f"a = {a}")
    print("  disk   ", disk.values)
    print("  circle ", circle.values)
    print("  largest quadrature error estimate", disk.errors.max())

# lambda_0^D = 1 - e^{-a^2} and lambda_1^D = 1 - (1 + 2a^2) e^{-a^2}
a = 1.0
sp = spectrum("disk", a, 1)
print("closed forms at a = 1:", sp[0] - (1 - np.exp(-1)), sp[1] - (1 - 3 * np.exp(-1)))

# large radius: every low eigenvalue approaches 1
print("a = 8:", spectrum("disk", 8.0, 10).values - 1)
