"""Growth subspaces of a self-adjoint matrix.

For a self-adjoint ``A`` and a level ``lam >= 0`` the growth subspace
collects the vectors whose iterated images stay polynomially bounded:
``||A^m x|| <= lam^m ||x||`` for every power ``m``.  Equivalently it is the
span of the eigenvectors with ``|eigenvalue| <= lam``.

Two independent routes to that set live here: an eigensolver-backed
classification (used to build bases and projectors) and an iterative
growth-rate estimate (used to test membership vector by vector).  Keeping
both routes separate gives every construction a built-in cross-check.
The ``check_*`` functions turn the inclusion and inequality relations
between growth subspaces into executable predicates.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    as_hermitian,
    eigen_oracle,
    frobenius,
    inner,
    norm,
    projector_from_basis,
    spectral_scale,
)

__all__ = [
    "GeometricSubspace",
    "MembershipVerdict",
    "check_S_chain",
    "check_inclusion_shift",
    "check_inverse_inclusion",
    "check_sandwich",
    "check_square_identity",
    "check_strict_lower",
    "membership",
    "projector_order_defect",
    "sandwich_holds",
    "subspace",
]

# Eigenvalues within this relative factor of the level count as inside; the
# absolute term covers kernel classification under floating-point rounding.
_LEVEL_REL = 1e-10
_LEVEL_ABS = 1e-12


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of the iterative growth-rate membership test."""

    member: bool
    growth_rate_estimate: float
    iterations_used: int
    margin: float


# A rate refinement is believed only while its worst-case rounding bias is
# below this fraction of the decision scale; suites keep their levels much
# further than this from the spectrum.
_TRUST_FRACTION = 1e-3


def membership(a, lam, x, rel_tol=1e-8, m_max=200):
    """Test whether ``x`` lies in the growth subspace at level ``lam``.

    Iterates ``y <- A^2 y`` with per-step normalization and tracks the
    ratio ``r = ||A y|| / ||y||``, which increases monotonically to the
    largest eigenvalue magnitude carried by ``x``.  Membership requires
    both the converged rate and the raw inequalities
    ``||A^m x|| <= (lam (1 + rel_tol))^m ||x||`` for every tracked power
    (accumulated in log space, so large operators cannot overflow).

    Every matrix application injects rounding noise of order
    ``d eps ||A||_F`` which the largest eigenvalues amplify, so the
    iteration carries an explicit contamination bound and stops refining
    once the possible bias reaches a small fraction of the decision scale;
    the verdict then rests on the powers resolved before that point.
    ``lam = 0`` degenerates to an exact kernel test:
    ``||A x|| <= 1e-12 ||A||_F ||x||``.

    Raises ``ValueError`` for ``x = 0`` (the test direction is undefined).
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    nx = norm(x)
    if nx == 0.0:
        raise ValueError("membership is undefined for the zero vector")
    if lam < 0:
        raise ValueError("level must be nonnegative")
    na = frobenius(a)
    if lam == 0.0 or na == 0.0:
        rate = norm(a @ x) / nx
        member = rate <= max(lam, 1e-12 * na)
        return MembershipVerdict(member, rate, 1, lam - rate)

    lam_tol = lam * (1.0 + rel_tol)
    log_cap = math.log(lam_tol)
    gamma = 4.0 * a.shape[0] * np.finfo(np.float64).eps  # per-matvec noise
    # sound upper bound on ||A||_2; tightness decides how long refinements
    # near the top of the spectrum stay believable
    upper = min(
        na,
        float(np.linalg.norm(a, 1)),
        math.sqrt(float(np.linalg.norm(a @ a, 1))),
    )
    y = x / nx
    log_norm = 0.0  # log(||A^m x|| / ||x||) at the current even power m
    eta = 0.0  # contamination amplitude bound of the normalized iterate
    raw_ok = True
    rate = 0.0
    iterations = 0
    for it in range(1, m_max + 1):
        w = a @ y
        r = float(np.linalg.norm(w))
        if r == 0.0:
            rate = 0.0
            iterations = it
            break
        if it > 1 and (eta + gamma) * upper > _TRUST_FRACTION * max(r, lam):
            break  # rounding debris would dominate this refinement
        if log_norm + math.log(r) > (2 * it - 1) * log_cap:
            raw_ok = False
        z = a @ w
        nz = float(np.linalg.norm(z))
        if nz == 0.0:
            rate = r
            iterations = it
            break
        log_norm += math.log(nz)
        if log_norm > (2 * it) * log_cap:
            raw_ok = False
        converged = it > 1 and abs(r - rate) <= 1e-12 * max(r, rate, 1e-300)
        rate = r
        iterations = it
        if converged or not raw_ok:
            break
        eta = (eta + 2.0 * gamma) * upper * upper / nz
        y = z / nz
    member = raw_ok and rate <= lam_tol
    return MembershipVerdict(member, rate, iterations, lam - rate)


@dataclass(frozen=True)
class GeometricSubspace:
    """A growth subspace: its level, an orthonormal basis, and the projector."""

    lam: float
    basis: np.ndarray
    projector: np.ndarray

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]


def _level_mask(eigenvalues, lam):
    scale = spectral_scale(eigenvalues)
    return np.abs(eigenvalues) <= lam * (1.0 + _LEVEL_REL) + _LEVEL_ABS * scale


def subspace(a, lam, validate=True):
    """Construct the growth subspace at level ``lam`` from the eigensolver.

    The basis collects the oracle eigenvectors with ``|eigenvalue|`` at or
    below the level.  Each basis vector is re-validated through the
    independent iterative ``membership`` test (at the effective
    classification threshold, so the two admission rules agree on
    borderline eigenvalues), and the subspace is checked to be invariant
    under ``A`` (``||(I - P) A P||_F <= 1e-9 ||A||_F``); pass
    ``validate=False`` to skip the cross-checks.

    A level below every eigenvalue magnitude yields the zero subspace.
    """
    if lam < 0:
        raise ValueError("level must be nonnegative")
    a = as_hermitian(a)
    eig = eigen_oracle(a)
    keep = _level_mask(eig.eigenvalues, lam)
    basis = eig.vectors[:, keep]
    projector = projector_from_basis(basis)
    if validate:
        level_eff = lam * (1.0 + _LEVEL_REL) + _LEVEL_ABS * spectral_scale(eig.eigenvalues)
        for j in range(basis.shape[1]):
            verdict = membership(a, level_eff, basis[:, j])
            if not verdict.member:
                raise RuntimeError(
                    f"growth-rate test rejects a classified basis vector at level "
                    f"{lam} (estimate {verdict.growth_rate_estimate:.6e})"
                )
        ap = a @ projector
        invariance = frobenius(ap - projector @ ap)
        if invariance > 1e-9 * max(frobenius(a), 1e-300):
            raise RuntimeError(f"subspace not A-invariant: defect {invariance:.3e}")
    return GeometricSubspace(float(lam), basis, projector)


def projector_order_defect(p_small, p_big):
    """Defect ``||P_big P_small - P_small||_F`` of the inclusion ``P_small <= P_big``."""
    return frobenius(p_big @ p_small - p_small)


def check_inclusion_shift(a, delta, eps, tol=1e-8):
    """Shifting the operator by ``delta`` widens the level to ``delta + eps``.

    True iff the subspace at level ``eps`` of ``A + delta`` sits inside the
    subspace at level ``delta + eps`` of ``A``.
    """
    if delta < 0 or eps < 0:
        raise ValueError("shift and level must be nonnegative")
    a = as_hermitian(a)
    d = a.shape[0]
    shifted = subspace(a + delta * np.eye(d, dtype=a.dtype), eps)
    wide = subspace(a, delta + eps)
    return projector_order_defect(shifted.projector, wide.projector) <= tol


def check_square_identity(a, eps, tol=1e-8):
    """The subspace of ``A^2`` at level ``eps^2`` equals that of ``A`` at ``eps``."""
    if eps < 0:
        raise ValueError("level must be nonnegative")
    a = as_hermitian(a)
    squared = subspace(as_hermitian(a @ a), eps * eps)
    direct = subspace(a, eps)
    return frobenius(squared.projector - direct.projector) <= tol


def check_inverse_inclusion(a, eps, tol=1e-8):
    """For ``A >= 1``: the complement of the inverse's subspace at ``1/eps``
    sits inside the subspace of ``A`` at ``eps``.
    """
    if eps <= 0:
        raise ValueError("level must be positive")
    a = as_hermitian(a)
    eig = eigen_oracle(a)
    if eig.eigenvalues.size == 0 or eig.eigenvalues[0] < 1.0 - 1e-12:
        raise ValueError(
            f"operator must be bounded below by 1, smallest eigenvalue "
            f"{eig.eigenvalues[0] if eig.eigenvalues.size else None}"
        )
    inv = as_hermitian(
        (eig.vectors * (1.0 / eig.eigenvalues)) @ eig.vectors.conj().T
    )
    p_inv = subspace(inv, 1.0 / eps).projector
    complement = np.eye(a.shape[0], dtype=a.dtype) - p_inv
    p_a = subspace(a, eps).projector
    return projector_order_defect(complement, p_a) <= tol


def check_S_chain(a, eps, tol=1e-8):
    """Chain through ``S = A^2 + 1``: the subspace of ``S`` at ``eps`` sits in
    that of ``A^2`` at ``eps + 1``, which sits in that of ``A`` at
    ``sqrt(eps + 1)``.
    """
    if eps <= 0:
        raise ValueError("level must be positive")
    a = as_hermitian(a)
    d = a.shape[0]
    a2 = as_hermitian(a @ a)
    s = a2 + np.eye(d, dtype=a2.dtype)
    p_s = subspace(s, eps).projector
    p_a2 = subspace(a2, eps + 1.0).projector
    p_a = subspace(a, math.sqrt(eps + 1.0)).projector
    return (
        projector_order_defect(p_s, p_a2) <= tol
        and projector_order_defect(p_a2, p_a) <= tol
    )


def _draw_in_span(basis, rng):
    coeffs = rng.standard_normal(basis.shape[1])
    if np.iscomplexobj(basis):
        coeffs = coeffs + 1j * rng.standard_normal(basis.shape[1])
    x = basis @ coeffs
    n = norm(x)
    if n == 0.0:  # pragma: no cover - zero-probability draw
        return _draw_in_span(basis, rng)
    return x / n


def check_strict_lower(a, lam, trials=20, rng=None):
    """Strict growth outside the subspace: ``||A x|| > lam ||x||``.

    Draws random vectors from the orthogonal complement of the subspace at
    level ``lam``.  When ``A >= 0`` the quadratic form is also required to
    be strictly above ``lam <x, x>``.  Requires a nonempty complement with
    an eigenvalue gap of at least 1e-6 above the level.
    """
    if lam < 0:
        raise ValueError("level must be nonnegative")
    rng = np.random.default_rng(rng)
    a = as_hermitian(a)
    eig = eigen_oracle(a)
    outside = ~_level_mask(eig.eigenvalues, lam)
    if not outside.any():
        raise ValueError("complement of the growth subspace is zero")
    gap = float(np.min(np.abs(eig.eigenvalues[outside]))) - lam
    if gap < 1e-6:
        raise ValueError(f"eigenvalue gap above the level is {gap:.3e} < 1e-6")
    complement = eig.vectors[:, outside]
    psd = eig.eigenvalues[0] >= -1e-12 * spectral_scale(eig.eigenvalues)
    for _ in range(trials):
        x = _draw_in_span(complement, rng)
        if not norm(a @ x) > lam * norm(x):
            return False
        if psd and not inner(a @ x, x).real > lam * inner(x, x).real:
            return False
    return True


def sandwich_holds(a, lam, mu, x, rel_slack=1e-10):
    """Two-sided growth bounds for a single vector.

    Checks ``lam ||x|| <= ||A x|| <= mu ||x||`` and the squared form
    ``lam^2 <x,x> <= <A^2 x, x> <= mu^2 <x,x>`` with the given relative
    slack.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    nx = norm(x)
    ax = a @ x
    nax = norm(ax)
    q2 = inner(a @ ax, x).real
    # absolute term absorbs cancellation noise when the form is ~0
    slack2 = rel_slack * (1.0 + frobenius(a) ** 2 * nx * nx)
    ok_norm = lam * nx <= nax * (1.0 + rel_slack) and nax <= mu * nx * (1.0 + rel_slack)
    ok_sq = (
        lam * lam * nx * nx <= q2 * (1.0 + rel_slack) + slack2
        and q2 <= mu * mu * nx * nx * (1.0 + rel_slack) + slack2
    )
    return ok_norm and ok_sq


def check_sandwich(a, lam, mu, trials=20, rng=None, rel_slack=1e-10):
    """Sandwich bounds on the shell between two levels.

    Draws random vectors from the intersection of the subspace at level
    ``mu`` with the complement of the one at level ``lam`` and checks
    ``sandwich_holds``; when ``A >= 0`` the first-order form bounds
    ``lam <x,x> <= <A x, x> <= mu <x,x>`` are required as well.  Raises
    ``ValueError`` when the shell is empty.
    """
    if lam > mu:
        raise ValueError("need lam <= mu")
    rng = np.random.default_rng(rng)
    a = as_hermitian(a)
    eig = eigen_oracle(a)
    shell = _level_mask(eig.eigenvalues, mu) & ~_level_mask(eig.eigenvalues, lam)
    if not shell.any():
        raise ValueError("the shell between the two levels is empty")
    basis = eig.vectors[:, shell]
    psd = eig.eigenvalues[0] >= -1e-12 * spectral_scale(eig.eigenvalues)
    for _ in range(trials):
        x = _draw_in_span(basis, rng)
        if not sandwich_holds(a, lam, mu, x, rel_slack):
            return False
        if psd:
            qa = inner(a @ x, x).real
            qx = inner(x, x).real
            slack = rel_slack * (1.0 + frobenius(a) * qx)
            if not (lam * qx <= qa + slack and qa <= mu * qx + slack):
                return False
    return True
