"""Dense complex linear algebra over small dimensions.

Everything in this package works with explicit complex vectors and matrices
of dimension at most a few hundred, so plain numpy arrays are the carrier
type throughout.  The helpers here add the tolerance discipline that the
rank and positivity certificates rely on: every "is this zero" question is
answered relative to an explicit threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerances",
    "TOLERANCES",
    "tensor_product",
    "gram_matrix",
    "hermitian_eigenvalues",
    "nullspace",
    "determinant",
    "fourier_matrix",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every certificate.

    rank_tol decides which singular values count as zero (relative to the
    largest one), unit_tol bounds the acceptable deviation from unitarity or
    Hermiticity, and psd_tol is the slack allowed below zero for eigenvalues
    of nominally positive semidefinite operators.
    """

    rank_tol: float = 1e-10
    unit_tol: float = 1e-12
    psd_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("rank_tol", "unit_tol", "psd_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1e-3:
                raise ValueError(
                    f"{name} must lie strictly between 0 and 1e-3, got {value}"
                )


TOLERANCES = Tolerances()


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    return arr


def _as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two kets; component i*dim(b)+j is a[i]*b[j]."""
    return np.kron(_as_vector(a), _as_vector(b))


def gram_matrix(vectors) -> np.ndarray:
    """Matrix of pairwise inner products, conjugate-linear in the first slot.

    G[a, b] = <v_a | v_b>, so the result is Hermitian and positive
    semidefinite for any family of equal-dimension vectors.
    """
    vs = [_as_vector(v) for v in vectors]
    if not vs:
        return np.zeros((0, 0), dtype=complex)
    dim = vs[0].shape[0]
    if any(v.shape[0] != dim for v in vs):
        raise ValueError("gram_matrix requires vectors of equal dimension")
    stacked = np.stack(vs)
    return stacked.conj() @ stacked.T


def hermitian_eigenvalues(
    matrix, tol: Tolerances = TOLERANCES
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as columns).  The input
    must be square and Hermitian within unit_tol relative to its scale; the
    reconstruction Q diag(w) Q^dagger is accurate to 1e-9 * ||matrix||.
    """
    m = _as_matrix(matrix)
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"eigendecomposition needs a square matrix, got {rows}x{cols}")
    scale = max(1.0, float(np.linalg.norm(m)))
    if float(np.linalg.norm(m - m.conj().T)) > tol.unit_tol * scale:
        raise ValueError("matrix is not Hermitian within unit_tol")
    w, q = np.linalg.eigh(m)
    return w, q


def nullspace(matrix, tol: Tolerances = TOLERANCES) -> tuple[int, np.ndarray]:
    """Orthonormal basis of the numerical kernel.

    Singular values below rank_tol times the largest singular value count as
    zero.  Returns (kernel dimension, array whose columns are the basis
    vectors); ``matrix @ column`` stays below rank_tol * ||matrix|| for every
    returned column, and kernel dimension plus numerical rank equals the
    number of columns.
    """
    m = _as_matrix(matrix)
    if m.size == 0:
        dim = m.shape[1]
        return dim, np.eye(dim, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    cutoff = tol.rank_tol * (float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    basis = vh[rank:].conj().T
    return m.shape[1] - rank, basis


def determinant(matrix) -> complex:
    """Determinant of a square complex matrix."""
    m = _as_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"determinant needs a square matrix, got {m.shape}")
    return complex(np.linalg.det(m))


def fourier_matrix(d: int) -> np.ndarray:
    """Phase matrix F[k, p] = exp(2 pi i k p / d), without 1/sqrt(d)."""
    if d < 1:
        raise ValueError("dimension must be positive")
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d)
