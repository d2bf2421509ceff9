"""Schmidt-form bipartite pure states and their entanglement quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NORMALIZATION_SLACK",
    "SchmidtState",
    "make_schmidt_state",
    "schmidt_state_from_json",
    "to_vector",
    "subspace_max_entangled",
    "entanglement_entropy",
    "GeneralClassVector",
    "general_class_vector",
]

# Maximum deviation of sum(C_k^2) from 1 that is silently renormalized.
NORMALIZATION_SLACK = 1e-6


@dataclass(frozen=True, eq=False)
class SchmidtState:
    """A bipartite pure state sum_k C_k |kk> with nonnegative amplitudes.

    Construct through make_schmidt_state, which validates and normalizes.
    """

    d: int
    coeffs: np.ndarray

    @property
    def probs(self) -> np.ndarray:
        """Squared amplitudes p_k = C_k^2."""
        return self.coeffs**2

    @property
    def p0(self) -> float:
        """Smallest squared amplitude; the discrimination formulas key on it."""
        return float(np.min(self.coeffs) ** 2)

    @property
    def full_rank(self) -> bool:
        """True when every amplitude is strictly positive."""
        return bool(np.all(self.coeffs > 0.0))

    def to_json(self) -> dict:
        return {"d": self.d, "coeffs": [float(c) for c in self.coeffs]}


def make_schmidt_state(d: int, coeffs) -> SchmidtState:
    """Validate amplitudes and return the normalized state.

    Rejects negative or non-finite entries, a length mismatch, and squared
    sums further than NORMALIZATION_SLACK from one; smaller deviations are
    renormalized away.
    """
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    arr = np.asarray(coeffs, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != d:
        raise ValueError(f"expected {d} Schmidt coefficients, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Schmidt coefficients must be finite")
    if np.any(arr < 0.0):
        raise ValueError("Schmidt coefficients must be nonnegative")
    norm_sq = float(np.sum(arr**2))
    if abs(norm_sq - 1.0) > NORMALIZATION_SLACK:
        raise ValueError(
            f"squared coefficients sum to {norm_sq}, "
            f"expected 1 within {NORMALIZATION_SLACK}"
        )
    arr = arr / math.sqrt(norm_sq)
    arr.setflags(write=False)
    return SchmidtState(d=d, coeffs=arr)


def schmidt_state_from_json(data: dict) -> SchmidtState:
    return make_schmidt_state(int(data["d"]), data["coeffs"])


def to_vector(state: SchmidtState) -> np.ndarray:
    """The state as a length d^2 ket, |ab> sitting at index a*d + b."""
    d = state.d
    vec = np.zeros(d * d, dtype=complex)
    vec[np.arange(d) * (d + 1)] = state.coeffs
    return vec


def subspace_max_entangled(d: int) -> SchmidtState:
    """Equal amplitudes on the first d-1 levels, nothing on the last."""
    if d < 3:
        raise ValueError(f"subspace construction needs dimension >= 3, got {d}")
    coeffs = np.full(d, 1.0 / math.sqrt(d - 1))
    coeffs[d - 1] = 0.0
    return make_schmidt_state(d, coeffs)


def entanglement_entropy(state: SchmidtState) -> float:
    """Entropy of either reduced state, in bits; zero terms are dropped."""
    p = state.probs
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True, eq=False)
class GeneralClassVector:
    """A candidate class member, stored by its coefficient list.

    The realized ket is N * sum_j c_j |j+m mod d>|j>, with N the
    normalization 1/sqrt(sum |c_j|^2).
    """

    n: int
    m: int
    c: np.ndarray
    N: float

    @property
    def d(self) -> int:
        return self.c.shape[0]

    @property
    def vector(self) -> np.ndarray:
        d = self.d
        vec = np.zeros(d * d, dtype=complex)
        for j in range(d):
            vec[((j + self.m) % d) * d + j] = self.N * self.c[j]
        return vec


def general_class_vector(n: int, m: int, c) -> GeneralClassVector:
    arr = np.asarray(c, dtype=complex)
    if arr.ndim != 1 or arr.shape[0] < 2:
        raise ValueError(f"expected at least two coefficients, got shape {arr.shape}")
    d = arr.shape[0]
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"labels (n={n}, m={m}) out of range for dimension {d}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("coefficients must be finite")
    weight = float(np.sum(np.abs(arr) ** 2))
    if weight == 0.0:
        raise ValueError("coefficients must not all vanish")
    arr.setflags(write=False)
    return GeneralClassVector(n=n, m=m, c=arr, N=1.0 / math.sqrt(weight))
