"""Request and response models for the service endpoints.

Complex amplitudes travel as [re, im] pairs; matrices as flat row-major
pair lists whose shape follows from the document's dimension field.
"""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..states import SchmidtState, make_schmidt_state

# User-entered coefficients are accepted up to this much squared-norm drift
# (think three-decimal inputs like 0.447) and rescaled before the strict
# core validation runs.
INPUT_NORM_SLACK = 1e-3

VectorJson = list[list[float]]
MatrixJson = list[list[float]]


class StateSpec(BaseModel):
    """Schmidt coefficients, either as amplitudes or as probabilities."""

    d: int | None = Field(default=None, ge=2)
    coeffs: list[float] = Field(min_length=2)
    coeffs_are_probs: bool = False

    def to_state(self) -> SchmidtState:
        values = np.asarray(self.coeffs, dtype=float)
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficients must be finite")
        if np.any(values < 0.0):
            raise ValueError("coefficients must be nonnegative")
        if self.coeffs_are_probs:
            total = float(values.sum())
            if abs(total - 1.0) > INPUT_NORM_SLACK:
                raise ValueError(
                    f"probabilities sum to {total}, expected 1 within {INPUT_NORM_SLACK}"
                )
            values = np.sqrt(values / total)
        else:
            norm_sq = float(np.sum(values**2))
            if abs(norm_sq - 1.0) > INPUT_NORM_SLACK:
                raise ValueError(
                    f"squared amplitudes sum to {norm_sq}, "
                    f"expected 1 within {INPUT_NORM_SLACK}"
                )
            values = values / math.sqrt(norm_sq)
        d = self.d if self.d is not None else len(values)
        if d != len(values):
            raise ValueError(f"dimension {d} does not match {len(values)} coefficients")
        return make_schmidt_state(d, values)


class BasisBuildRequest(BaseModel):
    state: StateSpec


class BasisCheckRequest(BaseModel):
    state: StateSpec
    scope: Literal["all", "class"] = "all"
    class_label: int = Field(default=0, ge=0)


class SubspaceBasisRequest(BaseModel):
    d: int = Field(ge=3)


class PovmBuildRequest(BaseModel):
    state: StateSpec
    convention: Literal["dual", "literal"] = "dual"
    a_choice: Literal["paper", "max"] = "paper"


class PovmCheckRequest(BaseModel):
    state: StateSpec
    convention: Literal["dual", "literal"] = "dual"


class CapacityRequest(BaseModel):
    """Either (d, p0) directly or a state from which p0 is taken."""

    d: int | None = Field(default=None, ge=2)
    p0: float | None = None
    state: StateSpec | None = None

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "CapacityRequest":
        if self.state is None:
            if self.p0 is None or self.d is None:
                raise ValueError("provide either a state or both d and p0")
        elif self.p0 is not None:
            raise ValueError("provide either a state or p0, not both")
        return self


class SimulateRequest(BaseModel):
    state: StateSpec
    trials: int = Field(default=10000, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    a_choice: Literal["paper", "max"] = "paper"
    convention: Literal["dual", "literal"] = "dual"


class FdCurveRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    start: int = Field(alias="from", ge=2)
    end: int = Field(alias="to", ge=2)


class WitnessModel(BaseModel):
    d: int
    label: str = "combination"
    basis: str
    entries: MatrixJson
    coefficients: MatrixJson


class CertificateModel(BaseModel):
    nullspace_dim: int
    max_orthogonal_norm: float
    witness: WitnessModel | None = None


class BasisClassModel(BaseModel):
    n: int
    vectors: list[VectorJson]


class BasisBuildResponse(BaseModel):
    d: int
    coeffs: list[float]
    full_rank: bool
    total_vectors: int
    gram_max_residual: float
    classes: list[BasisClassModel]


class BasisCheckResponse(BaseModel):
    d: int
    coeffs: list[float]
    full_rank: bool
    scope: str
    class_label: int | None
    vector_count: int
    gram_max_residual: float
    nullspace_dim: int
    max_orthogonal_norm: float
    witness: WitnessModel | None = None


class SubspaceBasisResponse(BaseModel):
    d: int
    count: int
    gram_max_residual: float
    vectors: list[VectorJson]
    certificate: CertificateModel
    full_span_certificate: CertificateModel


class PovmBuildResponse(BaseModel):
    d: int
    convention: str
    a_choice: str
    a: float
    dual_normalization: float
    completeness_residual: float
    min_eigenvalues: list[float]
    elements: list[MatrixJson]
    p_e: MatrixJson


class SuccessComparisonModel(BaseModel):
    paper_formula: float
    born_paper_a: float
    born_max_a: float
    difference: float
    a_paper: float
    a_max: float
    paper_a_feasible: bool


class PovmCheckResponse(BaseModel):
    d: int
    convention: str
    a_paper: float
    a_max: float
    paper_min_eigenvalue: float
    max_min_eigenvalue: float
    paper_a_feasible: bool
    completeness_residual: float
    unambiguity: list[list[float]]
    comparison: SuccessComparisonModel


class CapacityResponse(BaseModel):
    d: int
    p0: float
    capacity_nme: float
    capacity_nme_oracle: float
    capacity_subspace: float | None
    capacity_asymptotic: float | None
    f_d: float
    nme_preferred: bool
    crossover_range: list[float] | None


class MessageCountsModel(BaseModel):
    n: int
    m: int
    count: int
    m_correct: int
    conclusive: int
    inconclusive: int


class SimulateResponse(BaseModel):
    d: int
    trials: int
    seed: int
    a_choice: str
    convention: str
    m_correct: int
    conclusive: int
    inconclusive: int
    empirical_conclusive_rate: float
    analytic_conclusive_rate: float
    mutual_information_bits: float
    per_message: list[MessageCountsModel]


class FdPoint(BaseModel):
    d: int
    f_d: float


class FdCurveResponse(BaseModel):
    rows: list[FdPoint]


class HealthResponse(BaseModel):
    status: str
