"""Unambiguous discrimination of the d non-orthogonal class representatives.

Taking the shift-zero vector from each class gives d states that differ only
by phase patterns and are not mutually orthogonal for a genuinely
non-maximally entangled seed.  For each representative there is a companion
vector orthogonal to it alone; scaling the companion projectors by a
constant A and topping the set up with an inconclusive element yields a
measurement whose outcome l certainly excludes state l.

Two phase conventions for the companions are kept side by side: "dual"
(default) places the zero of outcome l on state l itself, which is what the
exclusion property needs; "literal" flips the phase signs, moving the zero
to state (d - l) mod d.  Positivity of the inconclusive element is always
certified numerically, never assumed: the fixed-ratio constant
p0 / (d (d-1) N^2) is feasible only at d = 2, while the "max" choice picks
the largest feasible constant, which reproduces the success probability
p0 d / (d - 1) at every dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jsonio import matrix_from_json, matrix_to_json
from .linalg import TOLERANCES, Tolerances, hermitian_eigenvalues
from .states import SchmidtState

__all__ = [
    "DUAL",
    "LITERAL",
    "PAPER",
    "MAX",
    "Representatives",
    "DualFamily",
    "PovmSet",
    "InvalidPovmError",
    "build_representatives",
    "build_duals",
    "paper_A",
    "max_feasible_A",
    "build_povm",
    "outcome_probabilities",
    "paper_success_error",
    "unambiguity_matrix",
    "success_comparison",
    "povm_from_json",
]

DUAL = "dual"
LITERAL = "literal"

PAPER = "paper"
MAX = "max"


class InvalidPovmError(Exception):
    """Raised when the chosen scaling constant breaks positivity.

    min_eigenvalue carries the offending eigenvalue of the inconclusive
    element.
    """

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True, eq=False)
class Representatives:
    """One vector per class: sum_k sqrt(p_k) exp(2 pi i l k / d) |kk>."""

    d: int
    state: SchmidtState
    vectors: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class DualFamily:
    """Companion vectors, one per representative, under a phase convention.

    The common normalization is N = 1/sqrt((d-1)^2/p_0 + sum_{k>=1} 1/p_k);
    the heavy negative weight sits on level zero, so inputs are expected
    with the smallest squared amplitude first.
    """

    d: int
    state: SchmidtState
    duals: tuple[np.ndarray, ...]
    N: float
    convention: str


@dataclass(frozen=True, eq=False)
class PovmSet:
    """Scaled companion projectors plus the inconclusive element.

    Carries its own validity evidence: the completeness residual and the
    minimal eigenvalue of every element.
    """

    d: int
    elements: tuple[np.ndarray, ...]
    p_e: np.ndarray
    a: float
    a_choice: str
    convention: str
    completeness_residual: float
    min_eigenvalues: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a": self.a,
            "a_choice": self.a_choice,
            "convention": self.convention,
            "elements": [matrix_to_json(p) for p in self.elements],
            "p_e": matrix_to_json(self.p_e),
            "completeness_residual": self.completeness_residual,
            "min_eigenvalues": list(self.min_eigenvalues),
        }


def povm_from_json(data: dict) -> PovmSet:
    d = int(data["d"])
    dim = d * d
    return PovmSet(
        d=d,
        elements=tuple(matrix_from_json(m, dim, dim) for m in data["elements"]),
        p_e=matrix_from_json(data["p_e"], dim, dim),
        a=float(data["a"]),
        a_choice=data["a_choice"],
        convention=data["convention"],
        completeness_residual=float(data["completeness_residual"]),
        min_eigenvalues=tuple(float(x) for x in data["min_eigenvalues"]),
    )


def build_representatives(state: SchmidtState) -> Representatives:
    """The d phase-patterned diagonal states; index 0 is the seed itself."""
    if not state.full_rank:
        raise ValueError(
            "representatives need a full-rank state; a zero Schmidt coefficient "
            "would be divided by downstream"
        )
    d = state.d
    diag = np.arange(d) * (d + 1)
    vectors = []
    for label in range(d):
        vec = np.zeros(d * d, dtype=complex)
        vec[diag] = state.coeffs * np.exp(2j * np.pi * label * np.arange(d) / d)
        vectors.append(vec)
    return Representatives(d=d, state=state, vectors=tuple(vectors))


def build_duals(reps: Representatives, convention: str = DUAL) -> DualFamily:
    """Companion vectors under the chosen phase convention.

    "dual" uses ket phases exp(+2 pi i l k / d), making companion l
    orthogonal to representative l and equally overlapping (magnitude d N)
    with the rest.  "literal" uses exp(-2 pi i l k / d), which moves the
    orthogonality to representative (d - l) mod d.  At d = 2 the two agree.
    """
    if convention not in (DUAL, LITERAL):
        raise ValueError(f"unknown convention {convention!r}")
    state = reps.state
    p = state.probs
    if np.any(p == 0.0):
        raise ValueError("dual construction requires every p_k > 0")
    d = state.d
    norm = 1.0 / math.sqrt((d - 1) ** 2 / p[0] + np.sum(1.0 / p[1:]))
    sign = +1.0 if convention == DUAL else -1.0
    diag = np.arange(d) * (d + 1)
    k = np.arange(d)
    weights = 1.0 / np.sqrt(p)
    weights[0] = -(d - 1) / math.sqrt(p[0])
    duals = []
    for label in range(d):
        vec = np.zeros(d * d, dtype=complex)
        vec[diag] = norm * weights * np.exp(sign * 2j * np.pi * label * k / d)
        duals.append(vec)
    return DualFamily(d=d, state=state, duals=tuple(duals), N=norm, convention=convention)


def paper_A(state: SchmidtState, norm: float) -> float:
    """The fixed-ratio scaling constant p0 / (d (d-1) N^2)."""
    if state.p0 <= 0.0:
        raise ValueError("scaling constant needs p0 > 0")
    return state.p0 / (state.d * (state.d - 1) * norm**2)


def max_feasible_A(duals: DualFamily, tol: Tolerances = TOLERANCES) -> float:
    """Largest scaling that keeps the inconclusive element positive.

    Equals 1 over the top eigenvalue of the companion projector sum; with
    this choice the smallest eigenvalue of the inconclusive element is zero
    up to roundoff.
    """
    dim = duals.d * duals.d
    total = np.zeros((dim, dim), dtype=complex)
    for vec in duals.duals:
        total += np.outer(vec, vec.conj())
    evals, _ = hermitian_eigenvalues(total, tol)
    return 1.0 / float(evals[-1].real)


def build_povm(
    duals: DualFamily, a_choice: str = PAPER, tol: Tolerances = TOLERANCES
) -> PovmSet:
    """Assemble and certify the measurement for one scaling choice.

    Raises InvalidPovmError when any element dips below -psd_tol; the error
    carries the offending eigenvalue so the failure is inspectable rather
    than silent.
    """
    if a_choice == PAPER:
        a = paper_A(duals.state, duals.N)
    elif a_choice == MAX:
        a = max_feasible_A(duals, tol)
    else:
        raise ValueError(f"unknown scaling choice {a_choice!r}")

    dim = duals.d * duals.d
    elements = tuple(a * np.outer(vec, vec.conj()) for vec in duals.duals)
    p_e = np.eye(dim, dtype=complex) - sum(elements)

    min_eigs = []
    for mat in (*elements, p_e):
        evals, _ = hermitian_eigenvalues(mat, tol)
        min_eigs.append(float(evals[0].real))
    completeness = float(np.abs(sum(elements) + p_e - np.eye(dim)).max())

    worst = min(min_eigs)
    if worst < -tol.psd_tol:
        raise InvalidPovmError(
            f"scaling constant {a} breaks positivity "
            f"(minimal eigenvalue {worst})",
            min_eigenvalue=worst,
        )
    return PovmSet(
        d=duals.d,
        elements=elements,
        p_e=p_e,
        a=a,
        a_choice=a_choice,
        convention=duals.convention,
        completeness_residual=completeness,
        min_eigenvalues=tuple(min_eigs),
    )


def outcome_probabilities(povm: PovmSet, vec, tol: Tolerances = TOLERANCES) -> np.ndarray:
    """Born-rule outcome distribution; the last slot is inconclusive."""
    v = np.asarray(vec, dtype=complex)
    if v.ndim != 1 or v.shape[0] != povm.d * povm.d:
        raise ValueError(f"expected a vector of dimension {povm.d * povm.d}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state must be normalized, got norm {norm}")
    probs = [float(np.vdot(v, mat @ v).real) for mat in (*povm.elements, povm.p_e)]
    return np.array(probs)


def paper_success_error(d: int, p0: float) -> tuple[float, float]:
    """Closed-form success probability p0 d/(d-1) and its complement."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if not 0.0 < p0 <= 1.0 / d + 1e-12:
        raise ValueError(f"p0 must lie in (0, 1/{d}], got {p0}")
    success = p0 * d / (d - 1)
    return success, 1.0 - success


def unambiguity_matrix(duals: DualFamily, reps: Representatives) -> np.ndarray:
    """Overlap magnitudes |<companion_l | representative_m>| as a d x d table."""
    if duals.d != reps.d:
        raise ValueError("dual family and representatives differ in dimension")
    out = np.zeros((duals.d, duals.d))
    for l, dual in enumerate(duals.duals):
        for m, rep in enumerate(reps.vectors):
            out[l, m] = abs(np.vdot(dual, rep))
    return out


def _born_conclusive(duals: DualFamily, reps: Representatives, a: float, j: int = 0) -> float:
    """Conclusive-outcome probability on representative j for scaling a."""
    rep = reps.vectors[j]
    return float(a * sum(abs(np.vdot(dual, rep)) ** 2 for dual in duals.duals))


def success_comparison(
    state: SchmidtState, convention: str = DUAL, tol: Tolerances = TOLERANCES
) -> dict:
    """Side-by-side success probabilities for the two scaling choices.

    Reports the closed form p0 d/(d-1), the Born-rule value under
    the fixed-ratio constant (which equals p0 d and so disagrees beyond
    d = 2), the Born-rule value under the largest feasible constant (which
    matches the closed form), and whether the fixed-ratio constant is
    feasible at all.
    """
    reps = build_representatives(state)
    duals = build_duals(reps, convention)
    a_paper = paper_A(state, duals.N)
    a_max = max_feasible_A(duals, tol)
    formula, _ = paper_success_error(state.d, state.p0)
    born_paper = _born_conclusive(duals, reps, a_paper)
    born_max = _born_conclusive(duals, reps, a_max)
    return {
        "paper_formula": formula,
        "born_paper_a": born_paper,
        "born_max_a": born_max,
        "difference": abs(born_paper - formula),
        "a_paper": a_paper,
        "a_max": a_max,
        "paper_a_feasible": a_paper <= a_max * (1.0 + 1e-12),
    }
