"""Bi-linear maps M_a x M_b -> M_c represented canonically by Choi matrices.

The Choi matrix collects the values of the map on matrix-unit pairs: the
entry at row (i, k, m), column (j, l, n) is the (m, n) entry of the value
on (|i><j|, |k><l|).  It is the single source of truth here; evaluation,
Kraus forms, the duality pairing, permutation duals and the two derived
linear maps are all read off of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimMismatch, NotHermitian, NotPSD
from .linalg import DEFAULT_TOL, Tolerance, hermitian_eig
from .tensor import Permutation3, TriDims, TriOperator, flip

KrausSet = list  # of c x (ab) numpy arrays


@dataclass(frozen=True)
class BiLinearMap:
    dims: TriDims
    choi: TriOperator

    def __post_init__(self):
        if self.choi.dims != self.dims:
            raise DimMismatch("Choi matrix dimensions do not match the map dimensions")


def from_choi(mat: np.ndarray, dims: TriDims) -> BiLinearMap:
    """Wrap an (abc) x (abc) matrix as a bi-linear map."""
    return BiLinearMap(dims, TriOperator(dims, mat))


def from_function(f: Callable[[np.ndarray, np.ndarray], np.ndarray], dims: TriDims) -> BiLinearMap:
    """Populate the Choi matrix from a callback evaluated on matrix-unit pairs."""
    a, b, c = dims.as_tuple()
    choi = np.zeros((dims.total, dims.total), dtype=complex)
    for i in range(a):
        for j in range(a):
            eij = np.zeros((a, a), dtype=complex)
            eij[i, j] = 1.0
            for k in range(b):
                for l in range(b):
                    ekl = np.zeros((b, b), dtype=complex)
                    ekl[k, l] = 1.0
                    val = np.asarray(f(eij, ekl), dtype=complex)
                    if val.shape != (c, c):
                        raise DimMismatch(f"callback returned shape {val.shape}, expected {(c, c)}")
                    rows = slice((i * b + k) * c, (i * b + k) * c + c)
                    cols = slice((j * b + l) * c, (j * b + l) * c + c)
                    choi[rows, cols] = val
    return from_choi(choi, dims)


def _check_arg(x, n: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (n, n):
        raise DimMismatch(f"{what}: expected shape {(n, n)}, got {x.shape}")
    return x


def apply(phi: BiLinearMap, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Evaluate the map on a pair of matrices."""
    a, b, c = phi.dims.as_tuple()
    x = _check_arg(x, a, "first argument")
    y = _check_arg(y, b, "second argument")
    c6 = phi.choi.mat.reshape(a, b, c, a, b, c)
    return np.einsum("ij,kl,ikmjln->mn", x, y, c6)


def elementary(v: np.ndarray, dims: TriDims) -> BiLinearMap:
    """The map (x, y) -> V (x kron y) V* for a c x (ab) matrix V.

    Its Choi matrix is the rank-one positive matrix onto the vector whose
    flat (i, k, m) entry is V[m, (i, k)].
    """
    a, b, c = dims.as_tuple()
    v = np.asarray(v, dtype=complex)
    if v.shape != (c, a * b):
        raise DimMismatch(f"elementary: expected shape {(c, a * b)}, got {v.shape}")
    vec = v.T.reshape(-1)
    return from_choi(np.outer(vec, vec.conj()), dims)


def kraus_decompose(phi: BiLinearMap, tol: Tolerance = DEFAULT_TOL) -> KrausSet:
    """Factor a PSD Choi matrix into elementary-map factors.

    Factor i is ``sqrt(lambda_i)`` times the i-th eigenvector reshaped from
    flat (i, k, m) order to a c x (ab) matrix.  Factors are ordered by
    descending eigenvalue and each eigenvector's phase is fixed so its
    first significant component is real nonnegative, making the output
    deterministic.  Raises NotPSD with the most negative eigenvalue as
    evidence.
    """
    a, b, c = phi.dims.as_tuple()
    w, vecs = hermitian_eig(phi.choi.mat, tol)
    spectral = max(abs(w[0]), abs(w[-1]))
    if w[0] < -tol.psd_abs * spectral:
        raise NotPSD(w[0])
    factors = []
    for idx in range(w.size - 1, -1, -1):
        lam = w[idx]
        if lam <= tol.psd_abs * spectral:
            break
        vec = vecs[:, idx]
        pivots = np.flatnonzero(np.abs(vec) > 1e-12 * np.abs(vec).max())
        phase = vec[pivots[0]] / abs(vec[pivots[0]])
        vec = vec * phase.conjugate()
        factors.append(np.sqrt(lam) * vec.reshape(a * b, c).T)
    if not factors:
        factors.append(np.zeros((c, a * b), dtype=complex))
    return factors


def is_completely_positive(phi: BiLinearMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the Choi matrix is Hermitian PSD within tolerance."""
    try:
        w, _ = hermitian_eig(phi.choi.mat, tol)
    except NotHermitian:
        return False
    spectral = max(abs(w[0]), abs(w[-1]))
    return bool(w[0] >= -tol.psd_abs * spectral)


def pair(rho: TriOperator, phi: BiLinearMap) -> complex:
    """Duality pairing: the trace of the Choi matrix against the transposed state.

    Equals ``sum_ij C[i, j] * rho[i, j]`` (no conjugation).  Real for
    Hermitian inputs; complex in general, with the imaginary part useful as
    a diagnostic.
    """
    if rho.dims != phi.dims:
        raise DimMismatch(f"state dims {rho.dims} do not match map dims {phi.dims}")
    return complex(np.einsum("ij,ij->", phi.choi.mat, rho.mat))


def permute_dual(phi: BiLinearMap, sigma: Permutation3) -> BiLinearMap:
    """The dual map under a permutation of the parties.

    The Choi matrix is conjugated by the permutation unitary (rows and
    columns reordered together) and the dimensions move along.
    """
    flipped = flip(phi.choi, sigma)
    return BiLinearMap(flipped.dims, flipped)


def contract_a(phi: BiLinearMap, x: np.ndarray) -> np.ndarray:
    """Contract the first-party slot of the Choi matrix against ``x``.

    Returns the (bc) x (bc) matrix ``sum_ij x[i, j] C_{i,j}`` where the
    ``C_{i,j}`` are the first-party blocks of the Choi matrix.
    """
    a, b, c = phi.dims.as_tuple()
    x = _check_arg(x, a, "contract_a argument")
    c4 = phi.choi.mat.reshape(a, b * c, a, b * c)
    return np.einsum("ij,ikjl->kl", x, c4)


def contract_ab(phi: BiLinearMap, z: np.ndarray) -> np.ndarray:
    """Evaluate the linearization on a joint (ab) x (ab) matrix.

    Returns ``sum z[(ik),(jl)] C_{(ik),(jl)}``; on a product input
    ``z = x kron y`` this coincides with :func:`apply`.
    """
    a, b, c = phi.dims.as_tuple()
    z = _check_arg(z, a * b, "contract_ab argument")
    c4 = phi.choi.mat.reshape(a * b, c, a * b, c)
    return np.einsum("uv,umvn->mn", z, c4)
