from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from datetime import datetime
from typing import Any, Callable, Dict, Tuple

from api.models import (
    CheckRequest,
    ErrorResponse,
    FamilyResponse,
    LinearizeRequest,
    PDRequest,
    ReportResponse,
    SequenceDocument,
    SpectrumRequest,
    SystemStatus,
    VerifyRequest,
)
from core.config import settings
from core.criteria import (
    PDCertificate,
    build_cn,
    check_lemma3,
    check_lemma_bounds,
    check_s_criterion,
    ms_matrix,
    ms_pairing_report,
    necessary_condition,
    pd_check,
    proof_sequence,
    verify_proof_bounds,
)
from core.exceptions import RWPSError
from core.families import sequence_from_document
from core.linearization import product_row, scan_nonnegativity
from core.logger import logger
from core.performance_monitor import verification_monitor
from core.rationals import format_rational, parse_rational
from core.reports import to_jsonable, verdict_dict
from core.spectrum import eigenvalue_histogram, jacobi_eigenvalues
from core.verification import VerificationSuite

app_start_time = datetime.now()

app = FastAPI(
    title=settings.PROJECT_NAME,
    description="Exact verification of nonnegative linearization for random walk polynomial sequences",
    version=settings.TOOL_VERSION,
    docs_url="/docs",
    redoc_url="/redoc"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _load(document: SequenceDocument):
    return sequence_from_document(document.model_dump())


def _tracked(label: str, compute: Callable[[], Tuple[bool, Dict[str, Any]]]) -> ReportResponse:
    """Run compute() as one monitored check; errors count as failed checks before propagating"""
    start_time = verification_monitor.start_check()
    try:
        passed, report = compute()
    except Exception:
        duration = verification_monitor.end_check(label, start_time, False)
        logger.log_check(label, False, duration)
        raise
    duration = verification_monitor.end_check(label, start_time, passed)
    logger.log_check(label, passed, duration)
    return ReportResponse(passed=passed, report=to_jsonable(report), response_time=duration)


@app.get("/", tags=["Health"])
async def root():
    """Root endpoint with basic info"""
    return {
        "message": settings.PROJECT_NAME,
        "version": settings.TOOL_VERSION,
        "status": "running",
        "docs": "/docs",
        "health": "/health"
    }


@app.get("/health", response_model=SystemStatus, tags=["Health"])
async def health_check():
    """Health check endpoint"""
    stats = verification_monitor.get_current_stats()
    uptime = datetime.now() - app_start_time
    return SystemStatus(
        status="healthy" if stats["memory_percent"] < 95 else "degraded",
        version=settings.TOOL_VERSION,
        total_checks=stats["total_checks"],
        failed_checks=stats["failed_checks"],
        uptime=str(uptime).split('.')[0]
    )


@app.get("/stats", tags=["System"])
async def get_system_stats():
    """Detailed verification statistics"""
    stats = verification_monitor.get_current_stats()
    stats["recent_checks"] = verification_monitor.get_check_history()
    stats["startup_time"] = app_start_time.isoformat()
    return stats


@app.post("/family", response_model=FamilyResponse, tags=["Sequences"])
def resolve_family(document: SequenceDocument, count: int = 6):
    """Resolve a family (including K='auto') and list its first coefficients"""
    s, seq = _load(document)
    return FamilyResponse(
        document=seq.to_document(),
        s=s.to_document() if s is not None else None,
        prefix=[format_rational(value) for value in seq.prefix(count)]
    )


@app.post("/check", response_model=ReportResponse, tags=["Criteria"])
def check(request: CheckRequest):
    """Sufficient criterion, lemma bounds and necessary condition"""
    def compute():
        s, seq = _load(request.sequence)
        reports = []
        if s is not None:
            criterion = check_s_criterion(s, request.N)
            reports.append(criterion)
            if criterion.overall:
                reports.append(check_lemma_bounds(s, request.N))
                reports.append(check_lemma3(build_cn(s, "first"), request.N))
        verdict = necessary_condition(seq, request.N)
        passed = all(report.overall for report in reports) and not verdict.violated
        return passed, {"reports": reports, "necessary_condition": verdict}

    return _tracked("api-check", compute)


@app.post("/linearize", response_model=ReportResponse, tags=["Linearization"])
def linearize(request: LinearizeRequest):
    """Single coefficient g(m,n;k) or a nonnegativity scan up to max_degree"""
    def entry():
        _, seq = _load(request.sequence)
        m, n, k = request.entry
        row = product_row(seq, m, n)
        value = row[k] if 0 <= k < len(row) else 0
        return value >= 0, {"m": m, "n": n, "k": k, "value": value}

    def scan():
        _, seq = _load(request.sequence)
        verdicts = {"P": verdict_dict(scan_nonnegativity(seq, request.max_degree))}
        if request.both_switch:
            verdicts["P~"] = verdict_dict(scan_nonnegativity(seq.switch(), request.max_degree))
        passed = all(verdict["all_nonnegative"] for verdict in verdicts.values())
        return passed, {"verdicts": verdicts}

    if request.entry:
        return _tracked("api-linearize-entry", entry)
    return _tracked("api-linearize-scan", scan)


@app.post("/pd", response_model=ReportResponse, tags=["Criteria"])
def positive_definiteness(request: PDRequest):
    """Certificates for ms_matrix(seq, variant, N') for N' = 1..N"""
    def compute():
        s, seq = _load(request.sequence)
        results = {str(big): pd_check(ms_matrix(seq, request.variant, big))
                   for big in range(1, request.N + 1)}
        passed = all(isinstance(result, PDCertificate) for result in results.values())
        report: Dict[str, Any] = {"certificates": results}
        if request.bounds:
            proof_seq = proof_sequence(s, seq)
            extra = [verify_proof_bounds(proof_seq, variant, request.N) for variant in ("P", "Ptilde")]
            extra.append(ms_pairing_report(proof_seq, request.N))
            report["bounds"] = extra
            passed = passed and all(item.overall for item in extra)
        return passed, report

    return _tracked("api-pd", compute)


@app.post("/spectrum", response_model=ReportResponse, tags=["Spectrum"])
def spectrum(request: SpectrumRequest):
    """Truncated Jacobi spectrum with a cluster histogram"""
    def compute():
        _, seq = _load(request.sequence)
        result = jacobi_eigenvalues(seq, request.N)
        edges, counts = eigenvalue_histogram(result, request.bins)
        return result.symmetric and result.in_range, {
            "spectrum": result.to_dict(),
            "histogram": {"edges": edges, "counts": counts},
        }

    return _tracked("api-spectrum", compute)


@app.post("/verify", response_model=ReportResponse, tags=["Verification"])
def verify(request: VerifyRequest):
    """Run the acceptance suite (or a subset of it)"""
    def compute():
        prefix = [parse_rational(value) for value in request.ks_prefix] or None
        result = VerificationSuite(ks_prefix=prefix).run(request.items)
        items = [{"number": item.number, "title": item.title, "passed": item.passed,
                  "details": item.details} for item in result.items]
        return result.passed, {"items": items}

    return _tracked("api-verify", compute)


@app.exception_handler(RWPSError)
async def domain_exception_handler(request, exc: RWPSError):
    """Invalid documents, parameters and coefficient domains"""
    logger.log_error(exc, f"api {request.url.path}")
    return JSONResponse(
        status_code=422,
        content=ErrorResponse(
            error=str(exc),
            error_type=type(exc).__name__
        ).model_dump(mode="json")
    )


@app.exception_handler(HTTPException)
async def http_exception_handler(request, exc: HTTPException):
    """Custom HTTP exception handler"""
    return JSONResponse(
        status_code=exc.status_code,
        content=ErrorResponse(
            error=str(exc.detail),
            error_type="HTTPException"
        ).model_dump(mode="json")
    )


@app.exception_handler(Exception)
async def general_exception_handler(request, exc: Exception):
    """General exception handler"""
    logger.log_error(exc, f"api {request.url.path}")
    return JSONResponse(
        status_code=500,
        content=ErrorResponse(
            error="Internal server error",
            error_type="InternalServerError"
        ).model_dump(mode="json")
    )


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "api.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=settings.DEBUG
    )
