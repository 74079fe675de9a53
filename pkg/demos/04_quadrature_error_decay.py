#!/usr/bin/env python3
"""Stieltjes sums and their explicit error bounds.

Splitting a vector across the dyadic grid lam_i = i/k gives weighted sums
that approximate <Ax, x> and ||Ax||^2.  The approximation error is bounded
by ||x||^2 / k and 2n ||x||^2 / k respectively, where n is the level that
caps the vector; the table shows both errors tracking their bounds as the
grid refines.
"""

import numpy as np

import specfam as sf

rng = np.random.default_rng(5)
a = sf.random_hermitian(10, seed=8)
a = a + (1.0 + np.abs(np.linalg.eigvalsh(a)).max()) * np.eye(10)  # make positive
fam = sf.build_positive(a)

x = rng.standard_normal(10)
x /= np.linalg.norm(x)
n = sf.smallest_cap(fam, x)
qa = float(np.dot(a @ x, x))
print(f"cap n = {n},  <Ax,x> = {qa:.6f},  ||Ax||^2 = {np.linalg.norm(a @ x) ** 2:.6f}")
print()
print(f"{'k':>4s} {'err1':>12s} {'bound1':>12s} {'err2':>12s} {'bound2':>12s}")
for k in (1, 2, 4, 8, 16, 32, 64, 128):
    ps = sf.partition_sum(a, fam, x, n, k)
    print(f"{k:4d} {ps.err1:12.3e} {ps.bound1:12.3e} {ps.err2:12.3e} {ps.bound2:12.3e}")
    assert sf.per_cell_bounds(a, fam, x, n, k)

print()
print("=== the same measure evaluated exactly against the jumps ===")
s1, s2 = sf.integral_form(a, fam, x)
print(f"sum_j lam_j   <dE_j x, x> = {s1:.12f}   (vs <Ax,x>)")
print(f"sum_j lam_j^2 <dE_j x, x> = {s2:.12f}   (vs ||Ax||^2)")

y = rng.standard_normal(10)
y /= np.linalg.norm(y)
val = sf.bilinear_form(a, fam, x, y)
print(f"polarized sum vs <Ax,y>: {abs(val - np.dot(a @ x, y)):.2e}")
