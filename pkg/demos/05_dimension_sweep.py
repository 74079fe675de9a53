#!/usr/bin/env python3
"""Emulating unboundedness with a dimension sweep.

The Dirichlet second-difference matrix scaled by dim^2 has norm ~ 4 dim^2,
so a sweep over dimensions stands in for an operator that is unbounded in
the limit.  The truncation profile ||A E(n) x|| shows how smooth vectors
are captured by low spectral cutoffs at every size, while oscillatory
vectors need cutoffs that grow with the dimension — the desk-scale shadow
of a domain condition.
"""

import numpy as np

import specfam as sf

print(f"{'dim':>5s} {'||A||_2':>12s} {'cut at 100':>12s} {'smooth frac':>12s} {'rough frac':>12s}")
for d in (8, 16, 32, 64):
    a = sf.laplacian1d(d)
    fam = sf.build_positive(a)
    top = float(fam.jump_points[-1])
    grid = np.arange(1, d + 1)
    smooth = np.sin(np.pi * grid / (d + 1))
    smooth /= np.linalg.norm(smooth)
    rough = np.sin(np.pi * d * grid / (d + 1))
    rough /= np.linalg.norm(rough)
    cuts = np.unique([100.0, top / 4.0, top / 2.0, top + 1.0])
    i100 = int(np.searchsorted(cuts, 100.0))
    ihalf = int(np.searchsorted(cuts, top / 2.0))
    prof_smooth = sf.domain_profile(a, fam, smooth, cuts)
    prof_rough = sf.domain_profile(a, fam, rough, cuts)
    print(f"{d:5d} {top:12.1f} "
          f"{prof_smooth.norms[i100] / prof_smooth.norms[-1]:12.4f} "
          f"{prof_smooth.norms[ihalf] / prof_smooth.norms[-1]:12.4f} "
          f"{prof_rough.norms[ihalf] / prof_rough.norms[-1]:12.4f}")

print()
print("The smooth profile saturates at a fixed cut as the dimension grows;")
print("the oscillatory one only saturates once the cut passes ~ 4 dim^2.")
print()

print("=== every vector still lies in some growth subspace ===")
for d in (8, 16, 32):
    print(f"dim {d:3d}: density check:", sf.density_check(sf.laplacian1d(d)))
