"""Orthogonal basis families generated by one-sided operators, with
certificates for whether any further operator can extend them.

Applying the d^2 phase-shift unitaries to one side of a Schmidt-form seed
yields d classes of d vectors each; within a class (fixed phase index n) the
vectors are exactly orthonormal because distinct shifts have disjoint
supports.  The extendability certificate asks a linear-algebra question:
does any operator in the span of the chosen operator family map the seed to
a vector orthogonal to every member of a supplied family?  For a full-rank
seed the d^2 vectors together span the whole bipartite space, so the system
only has the trivial solution.  A single class does not span, and the
certificate then reports the (generally non-unitary) combinations that do
produce orthogonal vectors; rank-deficient seeds admit unitary extensions
and the certificate surfaces a witness combination.

Because a nonzero kernel element can still realize the zero vector (the
degenerate-seed case), the certificate carries both the kernel dimension
and the largest norm producible from a unit-weight combination in the
kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jsonio import matrix_from_json, matrix_to_json
from .linalg import (
    TOLERANCES,
    Tolerances,
    determinant,
    fourier_matrix,
    gram_matrix,
    hermitian_eigenvalues,
    nullspace,
)
from .operators import (
    SUBSPACE_WEYL,
    WEYL,
    OperatorCombination,
    apply_local,
    combination,
    combine,
    subspace_weyl,
    weyl,
)
from .states import SchmidtState, subspace_max_entangled, to_vector

__all__ = [
    "OrthoClass",
    "SubspaceBasis",
    "ExtendabilityCertificate",
    "build_class",
    "build_all_classes",
    "flatten_classes",
    "cross_class_orthogonality",
    "operator_labels",
    "extension_system_matrix",
    "class_matrix_closed_form",
    "extendability_check",
    "fourier_unextendibility",
    "build_subspace_basis",
    "check_class_family",
    "certificate_from_json",
]


@dataclass(frozen=True, eq=False)
class OrthoClass:
    """The d vectors (U_{n,m} x I)|seed> for one phase index n, indexed by m."""

    d: int
    n: int
    seed: SchmidtState
    vectors: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """The (d-1)^2 orthonormal vectors grown from the subspace-maximal seed.

    vectors is ordered row-major over (n, m) with n, m in [0, d-1).
    """

    d: int
    vectors: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class ExtendabilityCertificate:
    """Outcome of the orthogonal-extension linear system.

    nullspace_dim counts independent coefficient solutions,
    max_orthogonal_norm is the largest produced-vector norm over unit-weight
    solutions, and witness is a combination achieving it when that norm is
    resolvable from zero.
    """

    nullspace_dim: int
    max_orthogonal_norm: float
    witness: OperatorCombination | None = None

    def to_json(self) -> dict:
        witness = None
        if self.witness is not None:
            realized = combine(self.witness)
            witness = {
                "d": self.witness.d,
                "label": "combination",
                "basis": self.witness.basis,
                "entries": matrix_to_json(realized.matrix),
                "coefficients": matrix_to_json(self.witness.f),
            }
        return {
            "nullspace_dim": self.nullspace_dim,
            "max_orthogonal_norm": self.max_orthogonal_norm,
            "witness": witness,
        }


def certificate_from_json(data: dict) -> ExtendabilityCertificate:
    witness = None
    raw = data.get("witness")
    if raw is not None:
        d = int(raw["d"])
        basis = raw.get("basis", WEYL)
        side = d if basis == WEYL else d - 1
        witness = combination(d, matrix_from_json(raw["coefficients"], side, side), basis)
    return ExtendabilityCertificate(
        nullspace_dim=int(data["nullspace_dim"]),
        max_orthogonal_norm=float(data["max_orthogonal_norm"]),
        witness=witness,
    )


def build_class(seed: SchmidtState, n: int) -> OrthoClass:
    """All d shifts of the seed at phase index n."""
    d = seed.d
    if not (0 <= n < d):
        raise ValueError(f"class label {n} out of range for dimension {d}")
    seed_vec = to_vector(seed)
    vectors = tuple(apply_local(weyl(n, m, d), seed_vec, "A") for m in range(d))
    return OrthoClass(d=d, n=n, seed=seed, vectors=vectors)


def build_all_classes(seed: SchmidtState) -> list[OrthoClass]:
    """The full d^2 vector family, one class per phase index."""
    return [build_class(seed, n) for n in range(seed.d)]


def flatten_classes(classes) -> tuple[list[tuple[int, int]], list[np.ndarray]]:
    """Row labels (n, m) and vectors of a class list, in row-major order."""
    labels = []
    vectors = []
    for cls in classes:
        for m, vec in enumerate(cls.vectors):
            labels.append((cls.n, m))
            vectors.append(vec)
    return labels, vectors


def cross_class_orthogonality(seed: SchmidtState, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """Boolean d^2 x d^2 table: which pairs of family vectors are orthogonal.

    Rows and columns are ordered row-major over (n, m).  For a generic
    full-rank seed the pattern is exactly "the shifts differ"; seeds with
    extra structure (equal amplitudes) show more orthogonality and the table
    reports whatever is found.
    """
    _, vectors = flatten_classes(build_all_classes(seed))
    gram = gram_matrix(vectors)
    return np.abs(gram) <= tol.rank_tol


def operator_labels(d: int, basis: str = WEYL) -> list[tuple[int, int]]:
    """Row-major (phase, shift) labels of the chosen operator family."""
    if basis == WEYL:
        side = d
    elif basis == SUBSPACE_WEYL:
        side = d - 1
    else:
        raise ValueError(f"unknown operator basis {basis!r}")
    return [(p, q) for p in range(side) for q in range(side)]


def _applied_family(seed: SchmidtState, basis: str) -> np.ndarray:
    """Stack of (U_{p,q} x I)|seed> for every label, one row per label."""
    d = seed.d
    generator = weyl if basis == WEYL else subspace_weyl
    seed_vec = to_vector(seed)
    return np.stack(
        [apply_local(generator(p, q, d), seed_vec, "A") for p, q in operator_labels(d, basis)]
    )


def extension_system_matrix(vectors, seed: SchmidtState, basis: str = WEYL) -> np.ndarray:
    """The inner-product system behind the certificate.

    Row a, column (p, q) holds <v_a | (U_{p,q} x I) | seed>; a coefficient
    vector in its kernel describes an operator combination whose output is
    orthogonal to every supplied vector.
    """
    d = seed.d
    applied = _applied_family(seed, basis)
    vs = np.stack([np.asarray(v, dtype=complex) for v in vectors])
    if vs.shape[1] != d * d:
        raise ValueError(f"expected vectors of dimension {d * d}, got {vs.shape[1]}")
    return vs.conj() @ applied.T


def class_matrix_closed_form(
    seed: SchmidtState, row_labels, basis: str = WEYL
) -> np.ndarray:
    """Phase-sum form of the same system, valid for operator-generated rows.

    When row (n, m) is itself (U_{n,m} x I)|seed>, the inner product against
    column (p, q) collapses to delta_{q,m} * sum_k p_k exp(2 pi i k (p-n)/b)
    with b the family's modulus.  The numeric path must reproduce this
    entrywise; tests assert the agreement.
    """
    d = seed.d
    base = d if basis == WEYL else d - 1
    probs = seed.probs[:base]
    cols = operator_labels(d, basis)
    out = np.zeros((len(row_labels), len(cols)), dtype=complex)
    k = np.arange(base)
    for row, (n, m) in enumerate(row_labels):
        for col, (p, q) in enumerate(cols):
            if q != m:
                continue
            out[row, col] = np.sum(probs * np.exp(2j * np.pi * k * (p - n) / base))
    return out


def extendability_check(
    vectors,
    seed: SchmidtState,
    basis: str = WEYL,
    tol: Tolerances = TOLERANCES,
) -> ExtendabilityCertificate:
    """Certify whether the supplied family admits an orthogonal extension.

    Solves the inner-product system over the chosen operator family,
    measures the largest vector norm producible from a unit-weight kernel
    combination (via the Gram matrix of the produced vectors), and returns a
    witness combination when that norm clears rank_tol.
    """
    d = seed.d
    applied = _applied_family(seed, basis)
    system = extension_system_matrix(vectors, seed, basis)
    kernel_dim, kernel = nullspace(system, tol)
    if kernel_dim == 0:
        return ExtendabilityCertificate(nullspace_dim=0, max_orthogonal_norm=0.0)

    produced = applied.T @ kernel
    gram = produced.conj().T @ produced
    evals, evecs = hermitian_eigenvalues(gram, tol)
    top = float(max(evals[-1].real, 0.0))
    max_norm = math.sqrt(top)

    witness = None
    if max_norm > tol.rank_tol:
        coeff = kernel @ evecs[:, -1]
        side = d if basis == WEYL else d - 1
        witness = combination(d, coeff.reshape(side, side), basis)
    return ExtendabilityCertificate(
        nullspace_dim=kernel_dim, max_orthogonal_norm=max_norm, witness=witness
    )


def fourier_unextendibility(d: int, tol: Tolerances = TOLERANCES) -> tuple[int, float]:
    """Kernel dimension and determinant magnitude of the phase matrix.

    The coefficient system that forces the trivial solution decouples into
    copies of the d x d phase matrix; its determinant magnitude d^(d/2) is
    the closed-form reason the kernel is empty.  Both quantities are
    computed through independent code paths so they can be cross-checked.
    """
    f = fourier_matrix(d)
    dim, _ = nullspace(f, tol)
    return dim, abs(determinant(f))


def build_subspace_basis(d: int) -> SubspaceBasis:
    """The (d-1)^2 orthonormal vectors from the subspace-maximal seed."""
    seed = subspace_max_entangled(d)
    seed_vec = to_vector(seed)
    vectors = tuple(
        apply_local(subspace_weyl(n, m, d), seed_vec, "A")
        for n in range(d - 1)
        for m in range(d - 1)
    )
    return SubspaceBasis(d=d, vectors=vectors)


def check_class_family(members, tol: Tolerances = TOLERANCES) -> bool:
    """Whether coefficient lists with equal shift labels are orthonormal.

    Pairs with different shift labels are orthogonal for free (disjoint
    supports) and are skipped; within a shared label the weighted overlap
    N_a N_b <c_a|c_b> must match delta on the phase labels within rank_tol.
    """
    members = list(members)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a.d != b.d:
                raise ValueError(f"family members differ in dimension: {a.d} vs {b.d}")
            if a.m != b.m:
                continue
            value = a.N * b.N * complex(np.vdot(a.c, b.c))
            target = 1.0 if a.n == b.n else 0.0
            if abs(value - target) > tol.rank_tol:
                return False
    return True
