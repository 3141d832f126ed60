"""Dense complex linear algebra with explicit tolerance contracts.

Matrices are plain numpy arrays with dtype complex128.  Every tolerance
gate in this module scales by the Frobenius norm of its input, except the
eigenvalue floors which scale by the spectral norm (available for free
once the spectrum is computed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePencil, NotHermitian

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "kron",
    "hermitize",
    "hermitian_eig",
    "svd_rank",
    "min_gen_eig",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical cutoffs shared across the package.

    rank_rel: singular values below ``rank_rel * sigma_max`` do not count
        towards a rank.
    psd_abs: eigenvalue floor; scaled by the matrix norm wherever it is used.
    ineq_abs: slack for scalar inequality checks, applied on the favorable
        side so exact boundary cases pass.
    """

    rank_rel: float = 1e-9
    psd_abs: float = 1e-9
    ineq_abs: float = 1e-9

    def __post_init__(self):
        if not (self.rank_rel > 0 and self.psd_abs > 0 and self.ineq_abs > 0):
            raise ValueError("all tolerances must be positive")


DEFAULT_TOL = Tolerance()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, row-major convention (second factor varies fastest)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitize(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Check that ``m`` is Hermitian within tolerance and return (m + m*)/2.

    Symmetrizing after the gate removes round-off asymmetry deterministically.
    Raises NotHermitian when the defect exceeds ``psd_abs * ||m||_F``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
    scale = np.linalg.norm(m)
    defect = np.linalg.norm(m - m.conj().T)
    if defect > tol.psd_abs * scale:
        raise NotHermitian(
            f"Hermiticity defect {defect:.3e} exceeds {tol.psd_abs:.1e} * ||m|| = {tol.psd_abs * scale:.3e}"
        )
    return (m + m.conj().T) / 2.0


def hermitian_eig(m: np.ndarray, tol: Tolerance = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors in
    the columns of ``v``, so that ``m == v @ diag(w) @ v.conj().T`` within
    ``10 * psd_abs * ||m||``.
    """
    w, v = np.linalg.eigh(hermitize(m, tol))
    return w, v


def svd_rank(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel * sigma_max``; 0 for a zero matrix."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * s[0]))


def min_gen_eig(a: np.ndarray, b: np.ndarray, tol: Tolerance = DEFAULT_TOL):
    """Minimize the generalized Rayleigh quotient x*ax / x*bx.

    ``a`` must be Hermitian and ``b`` Hermitian positive semidefinite.  The
    quotient is minimized over the numerical range of ``b``: eigenvectors of
    ``b`` with eigenvalue at most ``psd_abs * ||b||_2`` are projected out and
    the reduced standard problem is solved on the rest.  Returns
    ``(value, x)`` where the minimizer satisfies ``x* b x == 1``.

    Raises DegeneratePencil when ``b`` is numerically zero.
    """
    a = hermitize(a, tol)
    b = hermitize(b, tol)
    bw, bv = np.linalg.eigh(b)
    spectral = max(abs(bw[0]), abs(bw[-1]))
    if spectral <= tol.psd_abs:
        raise DegeneratePencil("right-hand matrix is numerically zero")
    keep = bw > tol.psd_abs * spectral
    if not np.any(keep):
        raise DegeneratePencil("right-hand matrix has no numerically positive eigenvalue")
    whiten = bv[:, keep] / np.sqrt(bw[keep])
    aw, av = np.linalg.eigh(whiten.conj().T @ a @ whiten)
    x = whiten @ av[:, 0]
    return float(aw[0]), x
