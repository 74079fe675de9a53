#!/usr/bin/env python3
"""Growth subspaces of a self-adjoint matrix, two ways.

A vector x belongs to the growth subspace of A at level lam when the
iterated norms stay bounded: ||A^m x|| <= lam^m ||x|| for every power m.
For a matrix that is simply the span of the eigenvectors with
|eigenvalue| <= lam, and the demo shows the two independent routes the
package keeps for it: eigensolver classification and the iterative
growth-rate test.
"""

import numpy as np

import specfam as sf

rng = np.random.default_rng(1)

print("=== a diagonal warm-up ===")
a = np.diag([1.0, 2.0, 3.0])
for x, label in [
    (np.array([1.0, 1.0, 0.0]), "e1 + e2"),
    (np.array([0.0, 0.0, 1.0]), "e3"),
]:
    v = sf.membership(a, 2.0, x)
    print(f"x = {label:8s} level 2: member={v.member}  "
          f"growth rate ~ {v.growth_rate_estimate:.6f} "
          f"({v.iterations_used} iterations)")

print()
print("=== eigensolver route vs growth-rate route ===")
a = sf.random_hermitian(8, seed=7)
w = np.linalg.eigvalsh(a)
lam = float((np.abs(w)[3] + np.abs(w)[4]) / 2)  # between two magnitudes
gs = sf.subspace(a, lam)  # every basis vector is re-validated iteratively
print(f"|eigenvalues| = {np.sort(np.abs(w)).round(4)}")
print(f"level {lam:.4f}: subspace rank {gs.rank} of dimension {gs.dim}")
print(f"projector idempotence defect: {sf.frobenius(gs.projector @ gs.projector - gs.projector):.2e}")

print()
print("=== the inclusion and inequality checks ===")
delta, eps = 0.4, 0.9
print(f"shift inclusion (delta={delta}, eps={eps}):",
      sf.check_inclusion_shift(a, delta, eps))
print(f"square identity at eps={lam:.4f}:", sf.check_square_identity(a, lam))
shifted = a + (1.0 - w[0]) * np.eye(8)  # make it >= 1
print("inverse-complement inclusion:", sf.check_inverse_inclusion(shifted, 2.0))
print("chain through A^2 + 1 at eps=1.3:", sf.check_S_chain(a, 1.3))
print(f"strict growth outside level {lam:.4f}:",
      sf.check_strict_lower(a, lam, trials=25, rng=rng))
mu = float(np.abs(w).max() + 0.5)
print(f"sandwich bounds on the shell ({lam:.4f}, {mu:.4f}]:",
      sf.check_sandwich(a, lam, mu, trials=25, rng=rng))
