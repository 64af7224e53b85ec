"""
Bounds API Routes
Closed-form bounds and verification suites
"""

from fastapi import APIRouter, HTTPException

from monores_core.combinatorics import BoundReport
from monores_core.errors import MonoresError
from monores_core.verify import run_suite

from ..models import BoundsRequest, BoundsResponse, VerifyRequest, VerifyResponse

router = APIRouter(prefix="/api", tags=["Bounds"])


@router.post("/bounds", response_model=BoundsResponse)
async def bounds(request: BoundsRequest):
    """Complexity bounds for X^a with critical value c."""
    try:
        report = BoundReport.for_problem(request.exponents, request.critical, toric=request.toric)
    except MonoresError as e:
        raise HTTPException(status_code=400, detail=str(e))
    payload = report.to_json()
    payload.pop("measured")
    return BoundsResponse(**payload)


@router.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest):
    """Run one verification suite synchronously."""
    try:
        report = run_suite(request.suite, request.n_max, request.d_max)
    except MonoresError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return VerifyResponse(**report.to_json())
