"""
Pydantic Models for the monores API
Request and response schemas
"""

from datetime import datetime
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field


# ============================================================================
# Request Models
# ============================================================================


class ResolveRequest(BaseModel):
    """Request to resolve a monomial problem."""

    exponents: List[int] = Field(..., min_length=1, description="Exponents a_1..a_n, each >= 1")
    critical: int = Field(..., ge=1, description="Critical value c")
    exceptional: Union[Literal["none", "all"], List[int]] = Field(
        "none", description="Variables starting as exceptional divisors"
    )
    mode: Literal["resolve", "largest-branch", "principalize", "toric"] = Field(
        "resolve", description="Strategy"
    )
    max_depth: Optional[int] = Field(None, ge=1, le=200, description="Depth guard")

    class Config:
        json_schema_extra = {
            "example": {
                "exponents": [2, 3],
                "critical": 2,
                "exceptional": "none",
                "mode": "resolve",
            }
        }


class BoundsRequest(BaseModel):
    """Request for the closed-form bounds of a problem."""

    exponents: List[int] = Field(..., min_length=1, description="Exponents a_1..a_n")
    critical: int = Field(..., ge=1, description="Critical value c")
    toric: bool = Field(False, description="Read the input as Z^c - x^a")

    class Config:
        json_schema_extra = {
            "example": {
                "exponents": [2, 2, 2],
                "critical": 2,
            }
        }


class VerifyRequest(BaseModel):
    """Request to run a verification suite."""

    suite: Literal["catalan", "bounds", "invariants"]
    n_max: int = Field(3, ge=1, le=30)
    d_max: int = Field(6, ge=1, le=12)


# ============================================================================
# Response Models
# ============================================================================


class BoundsResponse(BaseModel):
    """Bounds, integers as decimal strings."""

    n: int
    d: int
    c: int
    g: int
    bound_exceptional: str
    monomialization_bound: str
    exceptional_order_bound: str
    global_bound: str
    toric: bool = False

    class Config:
        json_schema_extra = {
            "example": {
                "n": 3,
                "d": 6,
                "c": 2,
                "g": 2,
                "bound_exceptional": "3",
                "monomialization_bound": "8",
                "exceptional_order_bound": "1020",
                "global_bound": "1027",
                "toric": False,
            }
        }


class ResolveResponse(BaseModel):
    """A resolution tree, a branch, or a principalization chain."""

    mode: str
    truncated: bool
    sing_empty: bool = False
    result: Dict[str, Any] = Field(default_factory=dict)


class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: int
    failures: List[Dict[str, str]]
    measurements: Dict[str, str]


class HealthResponse(BaseModel):
    """Health check response."""

    status: str
    timestamp: datetime
    version: str
    hard_depth_limit: int
