"""Generalized Pauli (phase and shift) operators on one qudit.

The d^2 unitaries U_{n,m} = sum_k exp(2 pi i n k / d) |k+m mod d><k| form a
complete operator basis; n indexes the phase, m the cyclic shift.  A
subspace variant acts the same way inside the first d-1 levels and
annihilates the last one.  Linear combinations over either family are first
class citizens because the extendability certificates quantify over them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jsonio import matrix_from_json, matrix_to_json
from .linalg import TOLERANCES, Tolerances

__all__ = [
    "WEYL",
    "SUBSPACE_WEYL",
    "COMBINATION",
    "LocalOperator",
    "OperatorCombination",
    "weyl",
    "subspace_weyl",
    "combination",
    "combine",
    "apply_local",
    "hs_inner",
    "is_unitary",
    "operator_from_json",
]

WEYL = "weyl"
SUBSPACE_WEYL = "subspace_weyl"
COMBINATION = "combination"


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """A d x d matrix acting on one side of a bipartite system.

    kind records how the matrix was produced (single phase-shift label,
    subspace variant, or linear combination); label carries (n, m) when the
    operator is a single basis element.
    """

    d: int
    matrix: np.ndarray
    kind: str
    label: tuple[int, int] | None = None

    def to_json(self) -> dict:
        label = "combination" if self.label is None else [self.label[0], self.label[1]]
        return {
            "d": self.d,
            "label": label,
            "kind": self.kind,
            "entries": matrix_to_json(self.matrix),
        }


def operator_from_json(data: dict) -> LocalOperator:
    d = int(data["d"])
    matrix = matrix_from_json(data["entries"], d, d)
    label = data["label"]
    if label == "combination":
        return LocalOperator(d=d, matrix=matrix, kind=data.get("kind", COMBINATION))
    n, m = int(label[0]), int(label[1])
    kind = data.get("kind", WEYL)
    return LocalOperator(d=d, matrix=matrix, kind=kind, label=(n, m))


def weyl(n: int, m: int, d: int) -> LocalOperator:
    """The phase-shift unitary with phase index n and shift index m."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"labels (n={n}, m={m}) out of range for dimension {d}")
    mat = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    mat[(k + m) % d, k] = np.exp(2j * np.pi * n * k / d)
    mat.setflags(write=False)
    return LocalOperator(d=d, matrix=mat, kind=WEYL, label=(n, m))


def subspace_weyl(n: int, m: int, d: int) -> LocalOperator:
    """Phase-shift operator confined to the first d-1 levels.

    Acts as sum_{k<d-1} exp(2 pi i n k / (d-1)) |k+m mod d-1><k| and is zero
    on row and column d-1; the shift wraps modulo d-1 inside the retained
    block, so the block itself is unitary.
    """
    if d < 3:
        raise ValueError(f"subspace operators need dimension >= 3, got {d}")
    if not (0 <= n < d - 1 and 0 <= m < d - 1):
        raise ValueError(
            f"labels (n={n}, m={m}) out of range for subspace of dimension {d - 1}"
        )
    mat = np.zeros((d, d), dtype=complex)
    k = np.arange(d - 1)
    mat[(k + m) % (d - 1), k] = np.exp(2j * np.pi * n * k / (d - 1))
    mat.setflags(write=False)
    return LocalOperator(d=d, matrix=mat, kind=SUBSPACE_WEYL, label=(n, m))


@dataclass(frozen=True, eq=False)
class OperatorCombination:
    """Coefficients f[p, q] weighting one operator family.

    basis selects the family; f has shape (d, d) for the full family and
    (d-1, d-1) for the subspace one.  Nothing here enforces unitarity of the
    realized matrix, is_unitary answers that question separately.
    """

    d: int
    f: np.ndarray
    basis: str = WEYL

    @property
    def weight(self) -> float:
        return float(np.sum(np.abs(self.f) ** 2))

    @property
    def normalized(self) -> bool:
        return abs(self.weight - 1.0) <= 1e-12


def combination(d: int, f, basis: str = WEYL) -> OperatorCombination:
    arr = np.asarray(f, dtype=complex)
    side = d if basis == WEYL else d - 1
    if basis not in (WEYL, SUBSPACE_WEYL):
        raise ValueError(f"unknown operator basis {basis!r}")
    if arr.shape != (side, side):
        raise ValueError(f"expected coefficients of shape {(side, side)}, got {arr.shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("coefficients must be finite")
    arr.setflags(write=False)
    return OperatorCombination(d=d, f=arr, basis=basis)


def combine(fc: OperatorCombination) -> LocalOperator:
    """Realize sum_{p,q} f[p,q] U_{p,q} as a single matrix."""
    generator = weyl if fc.basis == WEYL else subspace_weyl
    side = fc.f.shape[0]
    mat = np.zeros((fc.d, fc.d), dtype=complex)
    for p in range(side):
        for q in range(side):
            coeff = fc.f[p, q]
            if coeff != 0:
                mat += coeff * generator(p, q, fc.d).matrix
    return LocalOperator(d=fc.d, matrix=mat, kind=COMBINATION)


def apply_local(op: LocalOperator, vec, side: str = "A") -> np.ndarray:
    """Apply (op x I) for side "A" or (I x op) for side "B" to a d^2 ket."""
    v = np.asarray(vec, dtype=complex)
    if v.ndim != 1 or v.shape[0] != op.d * op.d:
        raise ValueError(
            f"expected a vector of dimension {op.d * op.d}, got shape {v.shape}"
        )
    block = v.reshape(op.d, op.d)
    if side == "A":
        out = op.matrix @ block
    elif side == "B":
        out = block @ op.matrix.T
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return out.reshape(-1)


def hs_inner(a: LocalOperator, b: LocalOperator) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dagger b)."""
    if a.d != b.d:
        raise ValueError(f"operator dimensions differ: {a.d} vs {b.d}")
    return complex(np.sum(a.matrix.conj() * b.matrix))


def is_unitary(op: LocalOperator, tol: Tolerances = TOLERANCES) -> bool:
    """Whether U^dagger U is the identity within unit_tol (Frobenius norm)."""
    residual = op.matrix.conj().T @ op.matrix - np.eye(op.d)
    return float(np.linalg.norm(residual)) <= tol.unit_tol
