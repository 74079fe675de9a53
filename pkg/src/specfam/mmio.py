"""Matrix Market ingestion and emission for self-adjoint matrices.

Accepted headers: ``%%MatrixMarket matrix coordinate|array real|complex
symmetric|hermitian|general``.  Symmetric/hermitian coordinate files list
one triangle and are mirrored on read; ``general`` (and complex
``symmetric``) data is symmetrized, and a relative asymmetry defect above
1e-6 is an error.  Writing uses 17 significant digits so a write/read
round trip reproduces the matrix exactly.
"""

import numpy as np
import scipy.io
import scipy.sparse

from .core import hermitian_defect, hermitize

__all__ = ["read_matrix_market", "write_matrix_market"]

_FORMATS = ("coordinate", "array")
_FIELDS = ("real", "complex")
_SYMMETRIES = ("symmetric", "hermitian", "general")


def _parse_header(path):
    with open(path, "rb") as fh:
        first = fh.readline().decode("latin1").strip()
    parts = first.split()
    if len(parts) != 5 or parts[0].lower() != "%%matrixmarket":
        raise ValueError(f"malformed Matrix Market banner: {first!r}")
    obj, fmt, fld, symm = (p.lower() for p in parts[1:])
    if obj != "matrix":
        raise ValueError(f"unsupported Matrix Market object {obj!r}")
    if fmt not in _FORMATS:
        raise ValueError(f"unsupported Matrix Market format {fmt!r}")
    if fld not in _FIELDS:
        raise ValueError(f"unsupported Matrix Market field {fld!r}")
    if symm not in _SYMMETRIES:
        raise ValueError(f"unsupported Matrix Market symmetry {symm!r}")
    return fmt, fld, symm


def read_matrix_market(path, max_defect=1e-6, return_defect=False):
    """Read a square self-adjoint matrix from a Matrix Market file.

    Returns the symmetrized dense matrix; with ``return_defect=True`` also
    returns the relative asymmetry ``||M - M*||_F / ||M||_F`` measured
    before symmetrization.  Raises ``ValueError`` for malformed headers,
    out-of-range indices, non-square shapes, or a defect above
    ``max_defect``.
    """
    _parse_header(path)
    data = scipy.io.mmread(path)
    if scipy.sparse.issparse(data):
        data = data.toarray()
    data = np.asarray(data)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {data.shape}")
    scale = float(np.linalg.norm(data))
    defect = hermitian_defect(data) / scale if scale > 0.0 else 0.0
    if defect > max_defect:
        raise ValueError(
            f"matrix is not self-adjoint: relative defect {defect:.3e} > {max_defect:.1e}"
        )
    out = hermitize(data)
    return (out, defect) if return_defect else out


def write_matrix_market(path, m, comment="", precision=17):
    """Write a matrix in Matrix Market format.

    Symmetry is detected automatically (symmetric/hermitian matrices store
    one triangle); the default precision makes the decimal round trip
    exact.
    """
    scipy.io.mmwrite(path, np.asarray(m), comment=comment, precision=precision)
