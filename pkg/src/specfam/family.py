"""Resolutions of the identity for self-adjoint matrices.

A finite-dimensional spectral family is piecewise constant, so it is stored
exactly as a sorted jump list ``(lam_j, increment_j)`` of eigenvalue
positions and pairwise-orthogonal increment projectors.  Evaluation sums
the increments with ``lam_j <= lam``, which makes the family
right-continuous by construction and keeps left/right limits trivial.

Two independent construction routes are provided for a general operator:
shifting it until it is positive, or splitting it into a nonpositive and a
nonnegative part first.  Agreement of the two routes is the
finite-dimensional face of the uniqueness of the spectral representation.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import (
    as_hermitian,
    eigen_oracle,
    frobenius,
    hermitize,
    norm,
    projector_from_basis,
    spectral_scale,
)

__all__ = [
    "DomainProfile",
    "SpectralFamily",
    "build_general",
    "build_positive",
    "density_check",
    "domain_profile",
    "family_defects",
    "merge_families",
    "negate_family",
    "shift_family",
]

_CLUSTER_REL = 1e-9


def _frozen(arr):
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SpectralFamily:
    """Exact jump-list representation of a projector-valued family.

    ``jumps`` is an ascending tuple of ``(position, increment)`` pairs whose
    increments are mutually orthogonal projectors summing to the identity.
    ``bases`` carries an orthonormal column basis of each increment's range
    (used for fast validation and rank reporting).
    """

    dim: int
    jumps: tuple
    bases: tuple = field(repr=False, compare=False, default=())

    @property
    def jump_points(self):
        return np.array([lam for lam, _ in self.jumps])

    @property
    def increments(self):
        return tuple(inc for _, inc in self.jumps)

    @property
    def increment_ranks(self):
        return tuple(b.shape[1] for b in self.bases)

    @property
    def dtype(self):
        return self.jumps[0][1].dtype if self.jumps else np.float64

    def evaluate(self, lam):
        """Projector ``E(lam)``: the sum of increments at positions ``<= lam``.

        Right-continuous by the jump-list convention; the zero matrix below
        the first jump and the identity above the last.
        """
        out = np.zeros((self.dim, self.dim), dtype=self.dtype)
        for pos, inc in self.jumps:
            if pos <= lam:
                out = out + inc
            else:
                break
        return out

    def to_report_dict(self, include_dense=False):
        """Summary used by the report writer: positions, ranks, optional entries."""
        doc = {
            "jump_points": [float(lam) for lam, _ in self.jumps],
            "increment_ranks": [int(r) for r in self.increment_ranks],
            "dimension": int(self.dim),
        }
        if include_dense:
            doc["dense_increments"] = [
                _matrix_to_lists(inc) for _, inc in self.jumps
            ]
        return doc


def _matrix_to_lists(m):
    if np.iscomplexobj(m):
        return [[[float(v.real), float(v.imag)] for v in row] for row in m]
    return [[float(v) for v in row] for row in m]


def _validated(dim, jumps, bases):
    """Assemble a family after checking its structural invariants."""
    positions = [lam for lam, _ in jumps]
    if any(b <= a for a, b in zip(positions, positions[1:])):
        raise RuntimeError("jump positions must be strictly ascending")
    # mutual orthogonality via the range bases: ||inc_i inc_j||_F equals
    # ||V_i* V_j||_F because the bases are orthonormal
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            cross = frobenius(bases[i].conj().T @ bases[j])
            if cross > 1e-10:
                raise RuntimeError(
                    f"increments {i} and {j} are not orthogonal (defect {cross:.3e})"
                )
    total = np.zeros((dim, dim), dtype=jumps[0][1].dtype if jumps else np.float64)
    for _, inc in jumps:
        total = total + inc
    completeness = frobenius(total - np.eye(dim, dtype=total.dtype))
    if completeness > 1e-9:
        raise RuntimeError(f"increments do not sum to the identity (defect {completeness:.3e})")
    frozen_jumps = tuple((float(lam), _frozen(inc)) for lam, inc in jumps)
    frozen_bases = tuple(_frozen(b) for b in bases)
    return SpectralFamily(dim, frozen_jumps, frozen_bases)


def _cluster_slices(values, tol):
    """Slices of consecutive entries of an ascending array closer than tol."""
    slices = []
    start = 0
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > tol:
            slices.append(slice(start, i))
            start = i
    if len(values):
        slices.append(slice(start, len(values)))
    return slices


def build_positive(a):
    """Spectral family of a positive semidefinite operator.

    Jump positions are the distinct eigenvalues (clustered at relative
    tolerance 1e-9); each increment projects onto the corresponding
    eigenvector block, so the partial sums are exactly the projectors onto
    the growth subspaces at the jump levels.  Eigenvalues that are negative
    by no more than ``1e-10 * ||A||`` are clamped to 0; anything lower is a
    precondition error.
    """
    a = as_hermitian(a)
    d = a.shape[0]
    if d == 0:
        return SpectralFamily(0, (), ())
    eig = eigen_oracle(a)
    scale = spectral_scale(eig.eigenvalues)
    smallest = float(eig.eigenvalues[0])
    if smallest < -1e-10 * scale:
        raise ValueError(f"operator is not positive: eigenvalue {smallest:.6e} < 0")
    values = np.maximum(eig.eigenvalues, 0.0)
    jumps = []
    bases = []
    for block in _cluster_slices(values, _CLUSTER_REL * scale):
        basis = eig.vectors[:, block]
        jumps.append((float(values[block][-1]), projector_from_basis(basis)))
        bases.append(basis)
    return _validated(d, jumps, bases)


def shift_family(fam, c):
    """Family of ``A + c``: every jump position translated by ``c``."""
    jumps = tuple((lam + c, inc) for lam, inc in fam.jumps)
    return SpectralFamily(fam.dim, jumps, fam.bases)


def negate_family(fam):
    """Family of ``-A``: reversed jump list at negated positions.

    Because evaluation includes a jump at its own position, the reflected
    list is already the right-continuous regularization of
    ``I - E((-lam)-)``; negating twice restores the original exactly.
    """
    jumps = tuple((-lam + 0.0, inc) for lam, inc in reversed(fam.jumps))
    bases = tuple(reversed(fam.bases))
    return SpectralFamily(fam.dim, jumps, bases)


def merge_families(fam_minus, fam_plus, embed_minus, embed_plus):
    """Direct sum of two families living on complementary subspaces.

    Each increment is lifted through its embedding (``V inc V*``) and the
    jump lists are merged by position (positions closer than
    ``1e-12 * (1 + |lam|)`` are coalesced).  The embeddings must be
    orthonormal, mutually orthogonal, and jointly spanning.
    """
    vm = np.asarray(embed_minus)
    vp = np.asarray(embed_plus)
    if vm.ndim != 2 or vp.ndim != 2:
        raise ValueError("embeddings must be (d, r) column bases")
    d = vm.shape[0]
    if vp.shape[0] != d:
        raise ValueError("embeddings act on different spaces")
    if vm.shape[1] != fam_minus.dim or vp.shape[1] != fam_plus.dim:
        raise ValueError("embedding width must match the family dimension")
    if vm.shape[1] + vp.shape[1] != d:
        raise ValueError("embeddings do not jointly span the space")
    for v in (vm, vp):
        if v.shape[1]:
            defect = np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1])))
            if defect > 1e-10:
                raise ValueError(f"embedding is not orthonormal (defect {defect:.3e})")
    if vm.shape[1] and vp.shape[1]:
        cross = np.max(np.abs(vm.conj().T @ vp))
        if cross > 1e-10:
            raise ValueError(f"embeddings are not orthogonal (defect {cross:.3e})")

    lifted = []
    for fam, v in ((fam_minus, vm), (fam_plus, vp)):
        for (lam, inc), basis in zip(fam.jumps, fam.bases):
            w = v @ basis
            lifted.append((lam, hermitize(v @ inc @ v.conj().T), w))
    lifted.sort(key=lambda item: item[0])

    jumps = []
    bases = []
    for lam, inc, basis in lifted:
        if jumps and lam - jumps[-1][0] <= 1e-12 * (1.0 + abs(lam)):
            prev_lam, prev_inc = jumps[-1]
            jumps[-1] = (prev_lam, prev_inc + inc)
            bases[-1] = np.hstack([bases[-1], basis])
        else:
            jumps.append((lam, inc))
            bases.append(basis)
    return _validated(d, jumps, bases)


def build_general(a, route="shift"):
    """Spectral family of an arbitrary self-adjoint matrix.

    ``route="shift"``: translate by ``c = ||A||_F + 1`` so the operator is
    positive, build directly, and translate the family back.

    ``route="split"``: separate nonpositive and nonnegative parts first,
    build the nonnegative side directly and the nonpositive side through
    negation, then merge across the splitting.
    """
    from .splitting import split  # local import to keep module layering acyclic

    a = as_hermitian(a)
    d = a.shape[0]
    if route == "shift":
        c = frobenius(a) + 1.0
        fam = build_positive(hermitize(a + c * np.eye(d, dtype=a.dtype)))
        return shift_family(fam, -c)
    if route == "split":
        deco = split(a)
        if deco.basis_minus.shape[1]:
            fam_minus = negate_family(build_positive(as_hermitian(-deco.A_minus)))
        else:
            fam_minus = SpectralFamily(0, (), ())
        if deco.basis_plus.shape[1]:
            fam_plus = build_positive(deco.A_plus)
        else:
            fam_plus = SpectralFamily(0, (), ())
        return merge_families(fam_minus, fam_plus, deco.basis_minus, deco.basis_plus)
    raise ValueError(f"unknown route {route!r}, expected 'shift' or 'split'")


def family_defects(fam):
    """Direct dense measurements of the family axioms.

    Returns the worst pairwise increment product norm, the completeness
    defect of the increment sum, the largest idempotence defect of the
    partial sums, and the largest monotonicity defect ``||E(s)E(t)-E(s)||``
    over consecutive jump positions.
    """
    incs = fam.increments
    orth = 0.0
    for i in range(len(incs)):
        for j in range(i + 1, len(incs)):
            orth = max(orth, frobenius(incs[i] @ incs[j]))
    total = np.zeros((fam.dim, fam.dim), dtype=fam.dtype)
    idem = 0.0
    mono = 0.0
    prev = None
    for _, inc in fam.jumps:
        total = total + inc
        idem = max(idem, frobenius(total @ total - total))
        if prev is not None:
            mono = max(mono, frobenius(total @ prev - prev))
        prev = total
    complete = frobenius(total - np.eye(fam.dim, dtype=fam.dtype))
    return {
        "orthogonality": orth,
        "completeness": complete,
        "idempotence": idem,
        "monotonicity": mono,
    }


@dataclass(frozen=True)
class DomainProfile:
    """Truncation profile ``||A E(n) x||`` along increasing cut points."""

    cut_points: np.ndarray
    norms: np.ndarray


def domain_profile(a, fam, x, cuts):
    """How much of ``A x`` the truncations ``A E(n) x`` have captured.

    The squared profile accumulates ``lam_j^2`` times the jump masses of
    ``x``, so it is nondecreasing in the cut and reaches ``||A x||`` once
    the cuts cover the whole spectrum; both facts are verified before the
    profile is returned.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    cuts = np.asarray(cuts, dtype=np.float64)
    if cuts.ndim != 1 or cuts.size == 0:
        raise ValueError("need a nonempty 1-d sequence of cuts")
    if np.any(np.diff(cuts) <= 0):
        raise ValueError("cuts must be strictly increasing")
    norms = []
    px = np.zeros_like(x, dtype=np.result_type(x.dtype, fam.dtype))
    jump_iter = iter(fam.jumps)
    pending = next(jump_iter, None)
    for n in cuts:
        while pending is not None and pending[0] <= n:
            px = px + pending[1] @ x
            pending = next(jump_iter, None)
        norms.append(norm(a @ px))
    norms = np.array(norms)
    slack = 1e-12 * max(1.0, float(norms[-1]))
    if np.any(np.diff(norms) < -slack):
        raise RuntimeError("truncation profile is not monotone")
    if pending is None:  # final cut covers every jump: E(n) = I
        nax = norm(a @ x)
        if abs(norms[-1] - nax) > 1e-9 * max(nax, 1e-300):
            raise RuntimeError(
                f"saturated profile {norms[-1]:.6e} differs from ||A x|| = {nax:.6e}"
            )
    return DomainProfile(_frozen(cuts), _frozen(norms))


def density_check(a):
    """Every vector lies in some growth subspace: at a level just above the
    largest eigenvalue magnitude the subspace projector is the identity.
    """
    from .subspace import subspace

    a = as_hermitian(a)
    eig = eigen_oracle(a)
    eps_star = spectral_scale(eig.eigenvalues) * (1.0 + 1e-9)
    p = subspace(a, eps_star).projector
    return frobenius(p - np.eye(a.shape[0], dtype=p.dtype)) <= 1e-9
