"""Splitting a self-adjoint matrix into nonpositive and nonnegative parts.

The bounded transform ``B = A (1 + A^2)^{-1}`` has norm at most 1/2 and
preserves eigenvalue signs, so the growth subspace of ``B + beta`` at level
``beta`` (with ``beta >= 1 + ||B||``) collects exactly the modes of ``A``
with nonpositive eigenvalues.  Compressing ``A`` onto that subspace and its
complement yields ``A = A_minus (+) A_plus`` with ``A_minus <= 0 <= A_plus``.

``B`` is computed by positive-definite linear solves against ``1 + A^2``,
not through the eigensolver, so the splitting route stays independent of
the oracle it is tested against.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    as_hermitian,
    eigen_oracle,
    frobenius,
    hermitize,
    inner,
    norm,
)
from .subspace import _level_mask, subspace

__all__ = [
    "SplitDecomposition",
    "bounded_transform",
    "check_form_identity",
    "check_sign_inequalities",
    "split",
]


def _frozen(arr):
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


def bounded_transform(a):
    """The transform ``B = A (1 + A^2)^{-1}``.

    Solves the Hermitian positive-definite system ``(1 + A^2) B = A``
    column-wise and symmetrizes the result.  The scalar map
    ``t -> t / (1 + t^2)`` peaks at 1/2 for ``t = 1``, so ``||B|| <= 1/2``
    always; the spectral norm is asserted against that bound.
    """
    a = as_hermitian(a)
    d = a.shape[0]
    if d == 0:
        return a
    m = hermitize(np.eye(d, dtype=a.dtype) + a @ a)
    b = hermitize(scipy.linalg.solve(m, a, assume_a="pos"))
    nb = float(np.linalg.norm(b, 2))
    if nb > 0.5 + 1e-12:
        raise RuntimeError(f"bounded transform norm {nb!r} exceeds 1/2")
    return b


@dataclass(frozen=True)
class SplitDecomposition:
    """Splitting data: the transform, the splitting projector, the two
    orthonormal bases, and the compressed operators on each summand."""

    beta: float
    A: np.ndarray
    B: np.ndarray
    E: np.ndarray
    basis_minus: np.ndarray
    basis_plus: np.ndarray
    A_minus: np.ndarray
    A_plus: np.ndarray

    @property
    def rank_minus(self):
        return self.basis_minus.shape[1]

    @property
    def rank_plus(self):
        return self.basis_plus.shape[1]


def split(a, beta=1.5):
    """Split ``A`` into nonpositive and nonnegative parts.

    ``beta`` defaults to 3/2, the smallest round value with
    ``B + beta >= 1`` for every ``A``; any override must keep that bound.
    A zero eigenvalue of ``A`` maps to a ``B + beta`` eigenvalue exactly at
    the level and therefore lands in the nonpositive summand.

    The returned decomposition is checked on construction: the projector
    commutes with ``A``, the compressions carry the right signs, and the
    two lifted compressions reassemble ``A``.
    """
    a = as_hermitian(a)
    d = a.shape[0]
    b = bounded_transform(a)
    if beta - float(np.linalg.norm(b, 2)) < 1.0 - 1e-12:
        raise ValueError(f"beta = {beta} does not dominate 1 + ||B||")
    bshift = hermitize(b + beta * np.eye(d, dtype=b.dtype))
    gs = subspace(bshift, beta)
    e = gs.projector
    basis_minus = gs.basis
    # complement eigenvector block of the same (deterministic) decomposition
    eig = eigen_oracle(bshift)
    basis_plus = eig.vectors[:, ~_level_mask(eig.eigenvalues, beta)]
    if basis_minus.shape[1] + basis_plus.shape[1] != d:
        raise RuntimeError("splitting bases do not span the space")
    a_minus = hermitize(basis_minus.conj().T @ a @ basis_minus)
    a_plus = hermitize(basis_plus.conj().T @ a @ basis_plus)

    scale = frobenius(a)
    commute = frobenius(e @ a - a @ e)
    if commute > 1e-9 * max(scale, 1e-300):
        raise RuntimeError(f"splitting projector does not commute with A: {commute:.3e}")
    if a_minus.shape[0] and eigen_oracle(a_minus).eigenvalues[-1] > 1e-9 * scale:
        raise RuntimeError("nonpositive compression has a positive eigenvalue")
    if a_plus.shape[0] and eigen_oracle(a_plus).eigenvalues[0] < -1e-9 * scale:
        raise RuntimeError("nonnegative compression has a negative eigenvalue")
    assemble = (
        basis_minus @ a_minus @ basis_minus.conj().T
        + basis_plus @ a_plus @ basis_plus.conj().T
    )
    if frobenius(assemble - a) > 1e-9 * max(scale, 1e-300):
        raise RuntimeError("compressions do not reassemble the operator")

    return SplitDecomposition(
        beta=float(beta),
        A=_frozen(a),
        B=_frozen(b),
        E=_frozen(e),
        basis_minus=_frozen(basis_minus),
        basis_plus=_frozen(basis_plus),
        A_minus=_frozen(a_minus),
        A_plus=_frozen(a_plus),
    )


def check_form_identity(a, x):
    """Residual of ``<Ax, x> = <Bx, x> + <B Ax, Ax>``.

    Returns ``|<Ax,x> - <Bx,x> - <B Ax, Ax>|``, which must stay below
    ``1e-9 (1 + ||A||_F^2) ||x||^2``.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    b = bounded_transform(a)
    ax = a @ x
    lhs = inner(ax, x).real
    rhs = inner(b @ x, x).real + inner(b @ ax, ax).real
    return abs(lhs - rhs)


def check_sign_inequalities(deco, trials=50, rng=None):
    """Sign of the quadratic forms on each summand.

    For random unit vectors in the nonpositive summand both ``<Bx, x>`` and
    ``<Ax, x>`` must be nonpositive (within 1e-10 and ``1e-9 ||A||``); on
    the nonnegative summand both must be nonnegative within the same
    slack.  True iff every trial passes.
    """
    rng = np.random.default_rng(rng)
    scale = frobenius(deco.A)
    for basis, sign in ((deco.basis_minus, -1.0), (deco.basis_plus, 1.0)):
        r = basis.shape[1]
        if r == 0:
            continue
        for _ in range(trials):
            coeffs = rng.standard_normal(r)
            if np.iscomplexobj(basis):
                coeffs = coeffs + 1j * rng.standard_normal(r)
            x = basis @ coeffs
            x = x / norm(x)
            qb = sign * inner(deco.B @ x, x).real
            qa = sign * inner(deco.A @ x, x).real
            if qb < -1e-10 or qa < -1e-9 * scale:
                return False
    return True
