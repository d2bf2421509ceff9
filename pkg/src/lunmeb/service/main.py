"""FastAPI application exposing the constructions, certificates, and reports.

The route handlers are plain functions over the pydantic models, so the CLI
calls them in process while HTTP clients go through the app.  Domain
validation failures map to 400 and a positivity-certificate failure to 409;
the offending eigenvalue rides along in the body.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bases import (
    ExtendabilityCertificate,
    build_all_classes,
    build_class,
    build_subspace_basis,
    extendability_check,
    flatten_classes,
)
from ..discrimination import (
    InvalidPovmError,
    build_duals,
    build_povm,
    build_representatives,
    max_feasible_A,
    paper_A,
    success_comparison,
    unambiguity_matrix,
)
from ..jsonio import matrix_to_json, vector_to_json
from ..linalg import gram_matrix, hermitian_eigenvalues
from ..operators import SUBSPACE_WEYL, WEYL, combine
from ..sdc import build_capacity_report, capacity_asymptotic, fd_curve, simulate_protocol
from ..states import SchmidtState, subspace_max_entangled
from .schemas import (
    BasisBuildRequest,
    BasisBuildResponse,
    BasisCheckRequest,
    BasisCheckResponse,
    BasisClassModel,
    CapacityRequest,
    CapacityResponse,
    CertificateModel,
    FdCurveRequest,
    FdCurveResponse,
    FdPoint,
    HealthResponse,
    MessageCountsModel,
    PovmBuildRequest,
    PovmBuildResponse,
    PovmCheckRequest,
    PovmCheckResponse,
    SimulateRequest,
    SimulateResponse,
    SubspaceBasisRequest,
    SubspaceBasisResponse,
    SuccessComparisonModel,
    WitnessModel,
)

app = FastAPI(title="lunmeb", version=__version__)


@app.exception_handler(ValueError)
async def _value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(InvalidPovmError)
async def _povm_error_handler(request: Request, exc: InvalidPovmError) -> JSONResponse:
    return JSONResponse(
        status_code=409,
        content={"detail": str(exc), "min_eigenvalue": exc.min_eigenvalue},
    )


def _gram_residual(vectors) -> float:
    gram = gram_matrix(vectors)
    return float(np.abs(gram - np.eye(gram.shape[0])).max())


def _class_gram_residual(classes) -> float:
    return max(_gram_residual(cls.vectors) for cls in classes)


def _witness_model(certificate: ExtendabilityCertificate) -> WitnessModel | None:
    if certificate.witness is None:
        return None
    realized = combine(certificate.witness)
    return WitnessModel(
        d=certificate.witness.d,
        basis=certificate.witness.basis,
        entries=matrix_to_json(realized.matrix),
        coefficients=matrix_to_json(certificate.witness.f),
    )


def _certificate_model(certificate: ExtendabilityCertificate) -> CertificateModel:
    return CertificateModel(
        nullspace_dim=certificate.nullspace_dim,
        max_orthogonal_norm=certificate.max_orthogonal_norm,
        witness=_witness_model(certificate),
    )


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok")


@app.post("/basis/build", response_model=BasisBuildResponse)
def basis_build(request: BasisBuildRequest) -> BasisBuildResponse:
    state = request.state.to_state()
    classes = build_all_classes(state)
    return BasisBuildResponse(
        d=state.d,
        coeffs=[float(c) for c in state.coeffs],
        full_rank=state.full_rank,
        total_vectors=state.d * state.d,
        gram_max_residual=_class_gram_residual(classes),
        classes=[
            BasisClassModel(n=cls.n, vectors=[vector_to_json(v) for v in cls.vectors])
            for cls in classes
        ],
    )


@app.post("/basis/check", response_model=BasisCheckResponse)
def basis_check(request: BasisCheckRequest) -> BasisCheckResponse:
    state = request.state.to_state()
    if request.scope == "class":
        if request.class_label >= state.d:
            raise ValueError(
                f"class label {request.class_label} out of range for dimension {state.d}"
            )
        classes = [build_class(state, request.class_label)]
        class_label = request.class_label
    else:
        classes = build_all_classes(state)
        class_label = None
    _, vectors = flatten_classes(classes)
    certificate = extendability_check(vectors, state, WEYL)
    return BasisCheckResponse(
        d=state.d,
        coeffs=[float(c) for c in state.coeffs],
        full_rank=state.full_rank,
        scope=request.scope,
        class_label=class_label,
        vector_count=len(vectors),
        gram_max_residual=_class_gram_residual(classes),
        nullspace_dim=certificate.nullspace_dim,
        max_orthogonal_norm=certificate.max_orthogonal_norm,
        witness=_witness_model(certificate),
    )


@app.post("/basis/subspace", response_model=SubspaceBasisResponse)
def basis_subspace(request: SubspaceBasisRequest) -> SubspaceBasisResponse:
    basis = build_subspace_basis(request.d)
    seed = subspace_max_entangled(request.d)
    certificate = extendability_check(basis.vectors, seed, SUBSPACE_WEYL)
    # Extendability under the full one-qudit operator span is an open
    # question for this family; the certificate is reported, not asserted.
    full_span = extendability_check(basis.vectors, seed, WEYL)
    return SubspaceBasisResponse(
        d=request.d,
        count=len(basis.vectors),
        gram_max_residual=_gram_residual(basis.vectors),
        vectors=[vector_to_json(v) for v in basis.vectors],
        certificate=_certificate_model(certificate),
        full_span_certificate=_certificate_model(full_span),
    )


@app.post("/povm/build", response_model=PovmBuildResponse)
def povm_build(request: PovmBuildRequest) -> PovmBuildResponse:
    state = request.state.to_state()
    reps = build_representatives(state)
    duals = build_duals(reps, request.convention)
    povm = build_povm(duals, request.a_choice)
    return PovmBuildResponse(
        d=state.d,
        convention=povm.convention,
        a_choice=povm.a_choice,
        a=povm.a,
        dual_normalization=duals.N,
        completeness_residual=povm.completeness_residual,
        min_eigenvalues=list(povm.min_eigenvalues),
        elements=[matrix_to_json(p) for p in povm.elements],
        p_e=matrix_to_json(povm.p_e),
    )


@app.post("/povm/check", response_model=PovmCheckResponse)
def povm_check(request: PovmCheckRequest) -> PovmCheckResponse:
    state = request.state.to_state()
    reps = build_representatives(state)
    duals = build_duals(reps, request.convention)
    a_paper = paper_A(state, duals.N)
    a_max = max_feasible_A(duals)

    dim = state.d * state.d
    projector_sum = np.zeros((dim, dim), dtype=complex)
    for vec in duals.duals:
        projector_sum += np.outer(vec, vec.conj())
    evals, _ = hermitian_eigenvalues(projector_sum)
    top = float(evals[-1].real)

    povm_max = build_povm(duals, "max")
    comparison = success_comparison(state, request.convention)
    return PovmCheckResponse(
        d=state.d,
        convention=request.convention,
        a_paper=a_paper,
        a_max=a_max,
        paper_min_eigenvalue=1.0 - a_paper * top,
        max_min_eigenvalue=1.0 - a_max * top,
        paper_a_feasible=bool(comparison["paper_a_feasible"]),
        completeness_residual=povm_max.completeness_residual,
        unambiguity=unambiguity_matrix(duals, reps).tolist(),
        comparison=SuccessComparisonModel(**comparison),
    )


@app.post("/sdc/capacity", response_model=CapacityResponse)
def sdc_capacity(request: CapacityRequest) -> CapacityResponse:
    asymptotic = None
    state: SchmidtState | None = None
    if request.state is not None:
        state = request.state.to_state()
        d = state.d
        p0 = state.p0
        asymptotic = capacity_asymptotic(state)
    else:
        d = request.d
        p0 = request.p0
    report = build_capacity_report(d, p0)
    return CapacityResponse(
        d=report.d,
        p0=report.p0,
        capacity_nme=report.capacity_nme,
        capacity_nme_oracle=report.capacity_nme_oracle,
        capacity_subspace=report.capacity_subspace,
        capacity_asymptotic=asymptotic,
        f_d=report.f_d,
        nme_preferred=report.nme_preferred,
        crossover_range=None if report.crossover is None else list(report.crossover),
    )


@app.post("/sdc/simulate", response_model=SimulateResponse)
def sdc_simulate(request: SimulateRequest) -> SimulateResponse:
    state = request.state.to_state()
    result = simulate_protocol(
        state,
        trials=request.trials,
        seed=request.seed,
        a_choice=request.a_choice,
        convention=request.convention,
    )
    return SimulateResponse(
        d=result.d,
        trials=result.trials,
        seed=result.seed,
        a_choice=result.a_choice,
        convention=result.convention,
        m_correct=result.m_correct,
        conclusive=result.conclusive,
        inconclusive=result.inconclusive,
        empirical_conclusive_rate=result.empirical_conclusive_rate,
        analytic_conclusive_rate=result.analytic_conclusive_rate,
        mutual_information_bits=result.mutual_information_bits,
        per_message=[
            MessageCountsModel(
                n=row.n,
                m=row.m,
                count=row.count,
                m_correct=row.m_correct,
                conclusive=row.conclusive,
                inconclusive=row.inconclusive,
            )
            for row in result.per_message
        ],
    )


@app.post("/fd/curve", response_model=FdCurveResponse)
def fd_curve_endpoint(request: FdCurveRequest) -> FdCurveResponse:
    rows = fd_curve(request.start, request.end)
    return FdCurveResponse(rows=[FdPoint(d=d, f_d=value) for d, value in rows])
