"""Stieltjes sums against a spectral family, with explicit error bounds.

For a positive operator, a cap ``n`` with ``E(n) x = x``, and a refinement
``k``, the grid ``lam_i = i/k`` (``i = 0 .. n k``) splits ``x`` into
orthogonal increments ``x_i = (E(lam_i) - E(lam_{i-1})) x``.  The weighted
sums ``sum_i lam_i ||x_i||^2`` and ``sum_i lam_i^2 ||x_i||^2`` approximate
``<Ax, x>`` and ``||Ax||^2`` with errors at most ``||x||^2 / k`` and
``2 n ||x||^2 / k``; both bounds are enforced on every construction.

Because the family is a jump list, only cells containing a jump carry a
nonzero increment, so the work is independent of ``k``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .core import as_hermitian, frobenius, inner, norm


def _frozen(arr):
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out

__all__ = [
    "PartitionSum",
    "bilinear_form",
    "integral_form",
    "partition_sum",
    "per_cell_bounds",
    "reconstruct_operator",
    "smallest_cap",
]


def smallest_cap(fam, x, rel_tol=1e-9):
    """Smallest integer cap ``n`` with ``E(n) x = x`` up to relative mass ``rel_tol``.

    The cap is the ceiling of the largest jump position at which ``x``
    still carries mass; at least 1.
    """
    x = np.asarray(x)
    nx = norm(x)
    top = 0.0
    for lam, inc in fam.jumps:
        if norm(inc @ x) > rel_tol * nx:
            top = max(top, lam)
    return max(1, int(math.ceil(top)))


def _cell_index(lam, k):
    """Smallest i with ``lam <= i/k`` (cells are half-open on the left)."""
    i = int(math.floor(lam * k))
    while i > 0 and lam <= (i - 1) / k:
        i -= 1
    while lam > i / k:
        i += 1
    return i


def _partition_cells(fam, x, n, k):
    """Nonzero partition increments, as ascending ``(cell_index, vector)`` pairs."""
    groups = {}
    for lam, inc in fam.jumps:
        if lam <= 0.0 or lam > n:
            continue
        groups.setdefault(_cell_index(lam, k), []).append(inc)
    cells = []
    for i in sorted(groups):
        xi = np.zeros_like(x, dtype=np.result_type(x.dtype, fam.dtype))
        for inc in groups[i]:
            xi = xi + inc @ x
        cells.append((i, xi))
    return cells


def _check_preconditions(fam, x, n, k):
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("cap n must be a positive integer")
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("refinement k must be a positive integer")
    points = fam.jump_points
    if points.size and points.min() < -1e-10 * max(abs(points).max(), 1e-300):
        raise ValueError("partition sums need a positive operator (negative jump found)")
    nx = norm(x)
    if nx == 0.0:
        return
    defect = norm(fam.evaluate(float(n)) @ x - x)
    if defect > 1e-9 * nx:
        raise ValueError(
            f"x is not in the growth subspace at level {n} "
            f"(defect {defect:.3e}); smallest valid cap is {smallest_cap(fam, x)}"
        )
    for lam, inc in fam.jumps:
        if lam <= 0.0 and norm(inc @ x) > 1e-9 * nx:
            raise ValueError(
                "x carries mass at level 0, which the half-open grid excludes; "
                "remove the kernel component first"
            )


@dataclass(frozen=True)
class PartitionSum:
    """Weighted partition sums of one vector against a family.

    ``cells`` holds the nonzero increments as ``(cell_index, vector)``
    pairs; cell ``i`` covers ``((i-1)/k, i/k]`` and every omitted cell is
    exactly zero.  ``err1``/``err2`` are the distances of the first and
    second weighted moments from ``<Ax, x>`` and ``||Ax||^2``; they are
    bounded by ``bound1 = ||x||^2/k`` and ``bound2 = 2n||x||^2/k``.
    """

    n: int
    k: int
    dim: int
    cells: tuple
    sum1: float
    sum2: float
    err1: float
    err2: float
    x_norm_sq: float
    _slack: float = field(default=1e-9, repr=False, compare=False)

    @property
    def bound1(self):
        return self.x_norm_sq / self.k

    @property
    def bound2(self):
        return 2.0 * self.n / self.k * self.x_norm_sq

    @property
    def lambda_points(self):
        return np.arange(self.n * self.k + 1) / self.k

    def increment(self, i):
        """Dense increment of cell ``i`` (zero for cells without a jump)."""
        for j, xi in self.cells:
            if j == i:
                return xi.copy()
        dtype = self.cells[0][1].dtype if self.cells else np.float64
        return np.zeros(self.dim, dtype=dtype)


def partition_sum(a, fam, x, n, k, slack=1e-9):
    """Build the partition sums of ``x`` at cap ``n`` and refinement ``k``.

    Requires a positive operator and ``E(n) x = x``; on violation the error
    names the smallest valid cap.  The orthogonality and completeness of
    the increments and the two moment error bounds (within ``slack``) are
    verified before the result is returned.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    _check_preconditions(fam, x, n, k)
    cells = _partition_cells(fam, x, n, k)
    nx2 = norm(x) ** 2

    recon = np.zeros_like(x, dtype=np.result_type(x.dtype, fam.dtype))
    mass = 0.0
    sum1 = 0.0
    sum2 = 0.0
    for i, xi in cells:
        lam_i = i / k
        m = norm(xi) ** 2
        recon = recon + xi
        mass += m
        sum1 += lam_i * m
        sum2 += lam_i * lam_i * m
    ax = a @ x
    qa = inner(ax, x).real if x.size else 0.0
    qa2 = norm(ax) ** 2
    err1 = abs(qa - sum1)
    err2 = abs(qa2 - sum2)

    if nx2 > 0.0:
        if norm(recon - x) > 1e-9 * math.sqrt(nx2):
            raise RuntimeError("partition increments do not reassemble x")
        if abs(mass - nx2) > 1e-9 * nx2:
            raise RuntimeError("partition masses do not sum to ||x||^2")
        for ii in range(len(cells)):
            for jj in range(ii + 1, len(cells)):
                if abs(inner(cells[ii][1], cells[jj][1])) > 1e-10 * nx2:
                    raise RuntimeError("partition increments are not orthogonal")
    if err1 > nx2 / k + slack:
        raise RuntimeError(f"first-moment error {err1:.3e} above ||x||^2/k = {nx2 / k:.3e}")
    if err2 > 2.0 * n / k * nx2 + slack:
        raise RuntimeError(
            f"second-moment error {err2:.3e} above 2n||x||^2/k = {2.0 * n / k * nx2:.3e}"
        )
    return PartitionSum(
        n=int(n), k=int(k), dim=x.shape[0],
        cells=tuple((i, _frozen(xi)) for i, xi in cells),
        sum1=sum1, sum2=sum2, err1=err1, err2=err2, x_norm_sq=nx2, _slack=slack,
    )


# cells whose relative mass is below this are rounding debris of the
# projections (double precision leaves ~1e-28 ||x||^2) and carry no signal
_CELL_MASS_FLOOR = 1e-24


def per_cell_bounds(a, fam, x, n, k, slack=1e-10):
    """Cell-by-cell Rayleigh bounds of the partition.

    For every nonzero increment ``x_i`` the quadratic forms must satisfy
    ``lam_{i-1} <= <A x_i, x_i>/||x_i||^2 <= lam_i`` together with the
    squared version, and the centered forms must obey the ``1/k`` and
    ``2n/k`` cell bounds.  True iff all four families of inequalities hold
    within ``slack``; cells carrying only rounding debris are skipped.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    _check_preconditions(fam, x, n, k)
    nx2 = norm(x) ** 2
    for i, xi in _partition_cells(fam, x, n, k):
        lam_i = i / k
        lam_prev = (i - 1) / k
        m = norm(xi) ** 2
        if m <= _CELL_MASS_FLOOR * nx2:
            continue
        axi = a @ xi
        qa = inner(axi, xi).real
        qa2 = norm(axi) ** 2
        s1 = slack * m * max(1.0, lam_i)
        s2 = slack * m * max(1.0, lam_i * lam_i)
        if not (lam_prev * m <= qa + s1 and qa <= lam_i * m + s1):
            return False
        if not (lam_prev * lam_prev * m <= qa2 + s2 and qa2 <= lam_i * lam_i * m + s2):
            return False
        if not abs(qa - lam_i * m) <= (1.0 / k) * m + s1:
            return False
        if not abs(qa2 - lam_i * lam_i * m) <= (2.0 * n / k) * m + s2:
            return False
    return True


def _jump_masses(fam, x):
    return [(lam, inner(inc @ x, x).real) for lam, inc in fam.jumps]


def integral_form(a, fam, x, rel_tol=1e-9):
    """Exact first and second moments of ``x`` against the jump measure.

    Returns ``(sum_j lam_j <inc_j x, x>, sum_j lam_j^2 <inc_j x, x>)``,
    which must equal ``<Ax, x>`` and ``||Ax||^2`` within ``rel_tol``
    relative to the natural scales ``||A||_F ||x||^2`` and
    ``||A||_F^2 ||x||^2``.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    s1 = 0.0
    s2 = 0.0
    for lam, m in _jump_masses(fam, x):
        s1 += lam * m
        s2 += lam * lam * m
    ax = a @ x
    qa = inner(ax, x).real if x.size else 0.0
    qa2 = norm(ax) ** 2
    na = frobenius(a)
    nx2 = norm(x) ** 2
    if abs(s1 - qa) > rel_tol * max(na * nx2, 1e-300):
        raise RuntimeError(f"first moment {s1!r} does not match <Ax,x> = {qa!r}")
    if abs(s2 - qa2) > rel_tol * max(na * na * nx2, 1e-300):
        raise RuntimeError(f"second moment {s2!r} does not match ||Ax||^2 = {qa2!r}")
    return s1, s2


def bilinear_form(a, fam, x, y, rel_tol=1e-9):
    """Off-diagonal Stieltjes sum ``sum_j lam_j <inc_j x, y>`` via polarization.

    The diagonal form ``S(z) = sum_j lam_j <inc_j z, z>`` is combined over
    ``x + i^k y`` (four terms in complex mode, two in real mode) to recover
    the bilinear value, which must match ``<Ax, y>`` within ``rel_tol``
    relative to ``||A||_F ||x|| ||y||``.
    """
    a = as_hermitian(a)
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError("vectors must have equal length")

    def diag_sum(z):
        return math.fsum(lam * m for lam, m in _jump_masses(fam, z))

    complex_mode = any(np.iscomplexobj(v) for v in (a, x, y))
    if complex_mode:
        val = 0.0 + 0.0j
        for kk in range(4):
            ik = 1j ** kk
            val += ik * diag_sum(x + ik * y)
        val /= 4.0
    else:
        val = (diag_sum(x + y) - diag_sum(x - y)) / 4.0
    ref = inner(a @ x, y)
    scale = max(frobenius(a) * norm(x) * norm(y), 1e-300)
    if abs(val - ref) > rel_tol * scale:
        raise RuntimeError(f"polarized sum {val!r} does not match <Ax,y> = {ref!r}")
    return val if complex_mode else float(val)


def reconstruct_operator(fam):
    """Reassemble the operator as ``sum_j lam_j inc_j``."""
    out = np.zeros((fam.dim, fam.dim), dtype=fam.dtype)
    for lam, inc in fam.jumps:
        out = out + lam * inc
    return out
