"""Built-in operator generators.

Desk-scale stand-ins for operators of growing norm: a Dirichlet
second-difference matrix scaled by ``dim^2`` (norm ~ ``4 dim^2``, so a
dimension sweep emulates unboundedness), a discrete oscillator, seeded
random Hermitian matrices, explicit diagonals, and Matrix Market files.
Generation is deterministic: the same spec yields a bit-identical matrix.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import hermitize, orthonormalize
from .mmio import read_matrix_market

__all__ = [
    "OperatorSpec",
    "diagonal",
    "generate",
    "laplacian1d",
    "oscillator",
    "random_hermitian",
]

KINDS = ("laplacian1d", "oscillator", "random", "diagonal", "file")
MODES = ("real", "complex")


@dataclass(frozen=True)
class OperatorSpec:
    """Recipe for one operator: the generator kind and its parameters."""

    kind: str
    dim: int = 0
    seed: int = 0
    spectrum: tuple = field(default=())
    path: str = ""
    mode: str = "real"

    def to_dict(self):
        return {
            "kind": self.kind,
            "dim": int(self.dim),
            "seed": int(self.seed),
            "spectrum": [float(v) for v in self.spectrum],
            "path": self.path,
            "mode": self.mode,
        }


def laplacian1d(dim):
    """Dirichlet second-difference matrix ``dim^2 * tridiag(-1, 2, -1)``."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    a = 2.0 * np.eye(dim) - np.eye(dim, k=1) - np.eye(dim, k=-1)
    return dim * dim * a


def oscillator(dim):
    """Second-difference matrix plus the squared grid potential
    ``((i - dim/2) / sqrt(dim))^2``."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    grid = (np.arange(dim) - dim / 2.0) / np.sqrt(dim)
    return laplacian1d(dim) + np.diag(grid * grid)


def random_hermitian(dim, seed=0, mode="real"):
    """Seeded random Hermitian matrix ``Q diag(u) Q*``.

    ``u`` is uniform in [-1, 1] and ``Q`` comes from orthonormalized
    Gaussian columns, so the eigenvalue distribution is explicit and the
    output is deterministic for a fixed seed.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim))
    if mode == "complex":
        g = g + 1j * rng.standard_normal((dim, dim))
    q = orthonormalize(g)
    if q.shape[1] != dim:  # pragma: no cover - zero-probability degeneracy
        raise RuntimeError("random columns were rank deficient")
    u = rng.uniform(-1.0, 1.0, dim)
    return hermitize((q * u) @ q.conj().T)


def diagonal(spectrum, mode="real"):
    """Diagonal matrix with the given real spectrum."""
    values = np.asarray(spectrum, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("spectrum must be a nonempty 1-d real sequence")
    out = np.diag(values)
    return out.astype(np.complex128) if mode == "complex" else out


def generate(spec):
    """Materialize an operator from its spec.  Deterministic per spec."""
    if spec.mode not in MODES:
        raise ValueError(f"unknown mode {spec.mode!r}")
    if spec.kind == "laplacian1d":
        out = laplacian1d(spec.dim)
    elif spec.kind == "oscillator":
        out = oscillator(spec.dim)
    elif spec.kind == "random":
        out = random_hermitian(spec.dim, spec.seed, spec.mode)
    elif spec.kind == "diagonal":
        out = diagonal(spec.spectrum, spec.mode)
    elif spec.kind == "file":
        out = read_matrix_market(spec.path)
    else:
        raise ValueError(f"unknown operator kind {spec.kind!r}, expected one of {KINDS}")
    if spec.mode == "complex" and not np.iscomplexobj(out):
        out = out.astype(np.complex128)
    return out
