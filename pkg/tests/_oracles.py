"""Shared reference machinery for the test suite.

Everything here goes through ``numpy.linalg.eigh`` so that expected values
are computed by a route independent of both the package's Jacobi solver
and its iterative membership test.
"""

import numpy as np


def random_hermitian(d, rng, mode="real", eigenvalues=None):
    """Random self-adjoint matrix with a prescribed or uniform spectrum."""
    g = rng.standard_normal((d, d))
    if mode == "complex":
        g = g + 1j * rng.standard_normal((d, d))
    q, _ = np.linalg.qr(g)
    if eigenvalues is None:
        eigenvalues = rng.uniform(-1.0, 1.0, d)
    eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
    m = (q * eigenvalues) @ q.conj().T
    return (m + m.conj().T) / 2.0


def random_psd(d, rng, mode="real", low=0.05, high=3.0):
    return random_hermitian(d, rng, mode, eigenvalues=rng.uniform(low, high, d))


def random_indefinite(d, rng, mode="real", hole=1e-8):
    """Indefinite spectrum with no eigenvalue in (-hole, 0)."""
    while True:
        u = rng.uniform(-1.0, 1.0, d)
        u = u[(u <= -hole) | (u >= 0.0)]
        if u.size == d and (u < 0).any() and (u > 0).any():
            return random_hermitian(d, rng, mode, eigenvalues=u)


def eigh_projector(a, predicate):
    """Spectral projector onto the eigenvalues selected by ``predicate``."""
    w, q = np.linalg.eigh(a)
    cols = q[:, predicate(w)]
    p = cols @ cols.conj().T
    return (p + p.conj().T) / 2.0


def level_projector(a, lam):
    """Projector onto the eigenvectors with ``|eigenvalue| <= lam``."""
    return eigh_projector(a, lambda w: np.abs(w) <= lam)


def gap_midpoints(values, min_gap):
    """Midpoints between consecutive distinct magnitudes, gap-filtered."""
    vals = np.unique(np.abs(np.asarray(values)))
    return [
        float((a + b) / 2.0)
        for a, b in zip(vals, vals[1:])
        if b - a >= min_gap
    ]


def random_unit(d, rng, mode="real"):
    x = rng.standard_normal(d)
    if mode == "complex":
        x = x + 1j * rng.standard_normal(d)
    return x / np.linalg.norm(x)


def between_cluster_points(points, scale):
    """Probe levels strictly between clusters of jump positions."""
    points = np.sort(np.asarray(points))
    tol = 1e-9 * max(scale, 1.0)
    keep = [float(points[0])]
    for v in points[1:]:
        if v - keep[-1] > tol:
            keep.append(float(v))
    mids = [(a + b) / 2.0 for a, b in zip(keep, keep[1:])]
    return [keep[0] - 1.0] + mids + [keep[-1] + 1.0]
