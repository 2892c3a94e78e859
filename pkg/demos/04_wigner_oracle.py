"""The disk QPI computed directly from the Wigner function.

Integrating W over the disk by 2-d quadrature reproduces the spectral
sum sum_n |c_n|^2 lambda_n for any state. The cross terms between Fock
states integrate to zero over a centred disk.
"""

import numpy as np

from wignerqpi import HermiteState, qpi, qpi_oracle_disk, spectrum, wigner
from wignerqpi.wigner import bound_scan, pure_state_wigner

state = HermiteState.normalized([0.3, -0.5, 0.8, 0.1])

# two routes to W(q, p)
for q, p in [(0.0, 0.0), (0.7, -0.4), (1.5, 1.0)]:
    print(f"W({q}, {p}): series {wigner(state, q, p): .15f}  integral {pure_state_wigner(state, q, p): .15f}")

for a in (0.5, 1.0, 2.0):
    sp = spectrum("disk", a, state.max_degree)
    print(f"a = {a}: oracle {qpi_oracle_disk(state, a):.12f}  spectral {qpi(state.populations(), sp):.12f}")

lo, hi = bound_scan(state, (-5, 5), (-5, 5), 0.05)
print(f"W on the grid spans [{lo * np.pi:.4f}, {hi * np.pi:.4f}] / pi")
