"""Dense self-adjoint linear algebra substrate.

Scalar products, Gram-Schmidt orthonormalization, projector construction,
and a dependency-free cyclic Jacobi eigensolver that referees every other
construction in the package.

Real and complex modes are genuinely distinct: real-symmetric data stays in
float64 end to end, complex-Hermitian data in complex128.  Every function
preserves the scalar mode of its input.  All returned values are fresh
arrays; nothing is mutated in place, so results may be shared freely
between threads.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "EigenDecomposition",
    "as_hermitian",
    "eigen_oracle",
    "frobenius",
    "hermitian_defect",
    "hermitize",
    "inner",
    "norm",
    "orthonormalize",
    "projector_from_basis",
    "spectral_scale",
]


class ConvergenceError(RuntimeError):
    """Jacobi sweep limit reached before the off-diagonal mass target."""


def _float_dtype(dtype):
    return np.complex128 if np.issubdtype(dtype, np.complexfloating) else np.float64


def inner(x, y):
    """Scalar product ``<x, y>``, linear in the first argument.

    Computes ``sum_i x[i] * conj(y[i])``.  Raises ``ValueError`` on a
    length mismatch.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"inner product needs equal-length vectors, got {x.shape} and {y.shape}")
    out = np.vdot(y, x)  # vdot conjugates its first argument
    return complex(out) if np.iscomplexobj(out) else float(out)


def norm(x):
    """Euclidean norm ``sqrt(<x, x>)``."""
    return float(np.linalg.norm(x))


def frobenius(m):
    """Frobenius norm of a matrix."""
    return float(np.linalg.norm(m))


def hermitian_defect(m):
    """Frobenius distance ``||M - M*||_F`` from the self-adjoint cone."""
    m = np.asarray(m)
    return float(np.linalg.norm(m - m.conj().T))


def hermitize(m):
    """Symmetrize ``(M + M*) / 2``.

    The two mirror entries of the output are built from the same pair of
    summands, so the result is exactly self-adjoint in floating point, with
    an exactly real diagonal.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return (m + m.conj().T) / 2.0


def as_hermitian(a):
    """Ingest an operator: cast to float64/complex128 and symmetrize."""
    a = np.asarray(a)
    return hermitize(a.astype(_float_dtype(a.dtype), copy=False))


def orthonormalize(vectors, drop_tol=1e-12):
    """Orthonormal basis of the span of the input vectors.

    Modified Gram-Schmidt with one re-orthogonalization pass.  Accepts a
    sequence of 1-d vectors or a 2-d array whose columns are the vectors.
    Vectors whose residual norm falls below ``drop_tol`` times the largest
    input norm are dropped, so rank-deficient input is fine.

    Returns a ``(d, r)`` array with orthonormal columns (``r`` may be 0).
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        cols = vectors
    else:
        vs = [np.asarray(v) for v in vectors]
        if not vs:
            return np.zeros((0, 0))
        cols = np.column_stack(vs)
    cols = cols.astype(_float_dtype(cols.dtype), copy=False)
    d, m = cols.shape
    if m == 0:
        return np.zeros((d, 0), dtype=cols.dtype)
    scale = max((float(np.linalg.norm(cols[:, j])) for j in range(m)), default=0.0)
    basis = []
    for j in range(m):
        v = cols[:, j].copy()
        for _ in range(2):
            for q in basis:
                v -= np.vdot(q, v) * q
        nv = float(np.linalg.norm(v))
        if nv > drop_tol * scale:
            basis.append(v / nv)
    if not basis:
        return np.zeros((d, 0), dtype=cols.dtype)
    return np.column_stack(basis)


def projector_from_basis(basis):
    """Orthogonal projector ``V V*`` onto the span of an orthonormal basis.

    An empty basis gives the zero matrix.  The output is exactly
    self-adjoint.
    """
    v = np.asarray(basis)
    if v.ndim != 2:
        raise ValueError("basis must be a (d, r) array of columns")
    d = v.shape[0]
    if v.shape[1] == 0:
        return np.zeros((d, d), dtype=_float_dtype(v.dtype))
    return hermitize(v @ v.conj().T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (real, ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray


def spectral_scale(eigenvalues):
    """Largest eigenvalue magnitude; 0 for an empty spectrum."""
    eigenvalues = np.asarray(eigenvalues)
    return float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0


def _offdiag_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eigen_oracle(a, max_sweeps=100, target=1e-14):
    """Cyclic Jacobi eigendecomposition of a self-adjoint matrix.

    Row-cyclic Givens sweeps (with a phase factor in complex mode) run until
    the off-diagonal Frobenius mass drops below ``target * ||A||_F``.
    Unconditionally convergent for self-adjoint input; raises
    ``ConvergenceError`` with the remaining residual if the sweep budget is
    exhausted.

    Deliberately implemented from scratch so it can serve as an independent
    referee for the iterative and solve-based routes elsewhere in the
    package.
    """
    work = as_hermitian(a).copy()
    d = work.shape[0]
    v = np.eye(d, dtype=work.dtype)
    if d <= 1:
        return EigenDecomposition(np.diag(work).real.copy(), v)
    norm_a = frobenius(work)
    goal = target * norm_a
    skip = goal / (4.0 * d * d)
    sweeps = 0
    while _offdiag_norm(work) > goal:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"jacobi: off-diagonal residual {_offdiag_norm(work):.3e} above "
                f"target {goal:.3e} after {max_sweeps} sweeps"
            )
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = work[p, q]
                absa = abs(apq)
                if absa <= skip:
                    continue
                phase = apq / absa  # +-1.0 in real mode, modulus 1 in complex mode
                tau = (work[q, q].real - work[p, p].real) / (2.0 * absa)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                colp = work[:, p].copy()
                colq = work[:, q] * np.conj(phase)
                work[:, p] = c * colp - s * colq
                work[:, q] = s * colp + c * colq
                rowp = work[p, :].copy()
                rowq = work[q, :] * phase
                work[p, :] = c * rowp - s * rowq
                work[q, :] = s * rowp + c * rowq
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q] * np.conj(phase)
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
    eigenvalues = np.diag(work).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(eigenvalues[order], v[:, order])
