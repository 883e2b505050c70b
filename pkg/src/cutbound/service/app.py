"""FastAPI service wrapping the core package.

Every endpoint is a pure function of its request body, so responses are
byte-identical for identical inputs once the timings block is disabled.
Domain errors map to status codes the CLI translates back into exit codes:
400 for bad input, 413 for guard refusals.
"""

from __future__ import annotations

import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, c1_formula
from ..bounds import k2n_certificate
from ..cuts import materialize_coordinates
from ..embedding import combine_d1, distortion_report, theta_distortion_target
from ..errors import GuardExceededError, InfiniteDistortionError, InputError
from ..graphs import build_theta
from ..metrics import metric_from_json, shortest_path_metric
from ..oracle import exact_c1
from ..rationals import decimal_approx, format_rational, parse_rational
from ..reduction import embed_weighted_instance, instance_from_json
from . import schemas


def _timings(started: float) -> schemas.Timings:
    return schemas.Timings(total_ms=(time.perf_counter() - started) * 1000.0)


def _pair_rows(base, measure) -> list[schemas.PairRow]:
    from ..cuts import cut_pseudometric

    rows = []
    for x, y in base.pairs():
        d = base.d(x, y)
        e = cut_pseudometric(measure, x, y)
        rows.append(
            schemas.PairRow(
                x=x,
                y=y,
                base=format_rational(d),
                embedded=format_rational(e),
                ratio=format_rational(e / d),
            )
        )
    return rows


app = FastAPI(
    title="cutbound",
    version=__version__,
    description="Exact l1-embedding distortion of two-terminal bipartite metrics",
)


@app.exception_handler(InputError)
async def _input_error(request: Request, exc: InputError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc), "kind": "input"})


@app.exception_handler(GuardExceededError)
async def _guard_error(request: Request, exc: GuardExceededError) -> JSONResponse:
    return JSONResponse(status_code=413, content={"detail": str(exc), "kind": "guard"})


@app.exception_handler(InfiniteDistortionError)
async def _infinite_error(request: Request, exc: InfiniteDistortionError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc), "kind": "input"})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/formula", response_model=schemas.FormulaResponse, response_model_exclude_none=True)
def formula(req: schemas.FormulaRequest) -> schemas.FormulaResponse:
    started = time.perf_counter()
    value = c1_formula(req.n)
    return schemas.FormulaResponse(
        n=req.n,
        k=(req.n + 1) // 2,
        c1=format_rational(value),
        decimal=decimal_approx(value),
        timings=_timings(started),
    )


@app.post("/embed", response_model=schemas.EmbedResponse, response_model_exclude_none=True)
def embed(req: schemas.EmbedRequest) -> schemas.EmbedResponse:
    started = time.perf_counter()
    theta = build_theta(req.k, req.ell)
    measure = combine_d1(req.k, req.ell, max_k=req.guard_cuts)
    base = shortest_path_metric(theta.underlying)
    report = distortion_report(base, measure)
    expected = theta_distortion_target(req.k)
    coords = None
    if req.include_coordinates:
        coords = [
            [format_rational(v) for v in vec] for vec in materialize_coordinates(measure)
        ]
    return schemas.EmbedResponse(
        k=req.k,
        ell=req.ell,
        expected_distortion=format_rational(expected),
        measure=schemas.CutMeasureDoc(**measure.to_json()),
        coordinates=coords,
        report=schemas.DistortionReportDoc(**report.to_json()),
        pairs=_pair_rows(base, measure) if req.include_pairs else None,
        matches_formula=report.distortion == expected
        and report.min_ratio == 1
        and report.max_ratio == expected,
        timings=_timings(started),
    )


@app.post("/certify", response_model=schemas.CertifyResponse, response_model_exclude_none=True)
def certify(req: schemas.CertifyRequest) -> schemas.CertifyResponse:
    started = time.perf_counter()
    if req.n < 3:
        return schemas.CertifyResponse(
            n=req.n,
            effective_k=None,
            certificate=None,
            bound="1",
            note=(
                "these instances embed isometrically in l1; "
                "the hypermetric machinery gives no leverage below n = 3"
            ),
            timings=_timings(started),
        )
    k = (req.n - 1) // 2
    note = None
    if req.n % 2 == 0:
        note = (
            f"even n={req.n}: the certificate lives on the n-1 sub-instance, "
            "whose bound transfers by restriction monotonicity"
        )
    cert = k2n_certificate(k)
    return schemas.CertifyResponse(
        n=req.n,
        effective_k=k,
        certificate=schemas.CertificateDoc(**cert.to_json()),
        bound=format_rational(cert.bound),
        note=note,
        timings=_timings(started),
    )


@app.post("/oracle", response_model=schemas.OracleResponse, response_model_exclude_none=True)
def oracle(req: schemas.OracleRequest) -> schemas.OracleResponse:
    started = time.perf_counter()
    metric = metric_from_json(req.metric.model_dump())
    result = exact_c1(metric, guard_points=req.guard_oracle_points)
    doc = result.to_json()
    return schemas.OracleResponse(
        points=metric.point_count,
        status=doc["status"],
        optimum_D=doc["optimum_D"],
        witness=None if doc["witness"] is None else schemas.CutMeasureDoc(**doc["witness"]),
        timings=_timings(started),
    )


@app.post("/pipeline", response_model=schemas.PipelineResponse, response_model_exclude_none=True)
def pipeline(req: schemas.PipelineRequest) -> schemas.PipelineResponse:
    started = time.perf_counter()
    instance = instance_from_json(req.instance.model_dump())
    epsilon = parse_rational(req.epsilon)
    result = embed_weighted_instance(instance, epsilon=epsilon, max_k=req.guard_cuts)

    oracle_distortion = None
    matches = None
    if req.with_oracle and instance.n + 2 <= req.guard_oracle_points:
        lp = exact_c1(instance.metric(), guard_points=req.guard_oracle_points)
        if lp.status == "optimal":
            oracle_distortion = format_rational(lp.optimum_D)
            matches = lp.optimum_D == result.report.distortion

    return schemas.PipelineResponse(
        n=instance.n,
        scale=result.scale,
        k=result.k,
        ell=result.ell,
        measure=schemas.CutMeasureDoc(**result.measure.to_json()),
        report=schemas.DistortionReportDoc(**result.report.to_json()),
        pairs=_pair_rows(instance.metric(), result.measure) if req.include_pairs else None,
        trace=schemas.TraceDoc(**result.trace.to_json()),
        oracle_distortion=oracle_distortion,
        matches_oracle=matches,
        timings=_timings(started),
    )
