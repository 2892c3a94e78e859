"""QPI bounds from the extremal eigenvalues.

Any state's QPI over the disk lies between the smallest and the largest
disk eigenvalue. At a = 1 the lower end is negative, so the QPI of a
suitable state is negative too.
"""

import math

import numpy as np

from wignerqpi import FockWeights, bounds, qpi, spectrum

rep = bounds("disk", 1.0, 200)
print(f"lower {rep.lower:.12f} at n = {rep.arg_lower}  (1 - 3/e = {1 - 3 / math.e:.12f})")
print(f"upper {rep.upper:.12f} at n = {rep.arg_upper}  (1 - 1/e = {1 - 1 / math.e:.12f})")
print(f"certified {rep.certified}, tail bound {rep.tail_bound:.3f}, largest |lambda| in the last quarter {rep.empirical_tail:.2e}")

# the first Fock state attains the lower bound
sp = spectrum("disk", 1.0, 5)
print("QPI of Fock state 1:", qpi(FockWeights.fock(1), sp))

# random mixtures stay inside [lower, upper]
rng = np.random.default_rng(7)
vals = [qpi(FockWeights(p), sp) for p in rng.dirichlet(np.ones(6), size=1000)]
print("1000 random mixtures span", min(vals), max(vals))

for a in (0.5, 1.5, 3.0):
    r = bounds("circle", a, 128)
    print(f"circle a = {a}: [{r.lower:.5f}, {r.upper:.5f}] at n = {r.arg_lower}, {r.arg_upper}")
