from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional
from datetime import datetime


class SequenceDocument(BaseModel):
    """Sequence document: family tag, parameters, optional explicit prefix, switch flag"""
    family: str = Field(..., description="Family tag, e.g. 'geometric' or 'ks_counterexample'")
    params: Dict[str, Any] = Field(default_factory=dict, description="Family parameters; rationals as 'p/q'")
    explicit_prefix: List[str] = Field(default_factory=list, description="Override c_1, c_2, ... as 'p/q'")
    switched: bool = Field(default=False, description="Exchange a_n and c_n")

    model_config = {
        "json_schema_extra": {
            "example": {
                "family": "geometric",
                "params": {"C": "1/3", "K": "auto"},
                "explicit_prefix": [],
                "switched": False
            }
        }
    }


class FamilyResponse(BaseModel):
    """Resolved sequence document with its first coefficients"""
    document: Dict[str, Any]
    s: Optional[Dict[str, Any]] = None
    prefix: List[str] = Field(..., description="c_1..c_n as 'p/q'")


class CheckRequest(BaseModel):
    sequence: SequenceDocument
    N: int = Field(default=20, ge=3, le=200)


class LinearizeRequest(BaseModel):
    sequence: SequenceDocument
    max_degree: int = Field(default=10, ge=0, le=40, description="Scan bound M")
    entry: Optional[List[int]] = Field(default=None, min_length=3, max_length=3, description="(m, n, k)")
    both_switch: bool = False

    model_config = {
        "json_schema_extra": {
            "example": {
                "sequence": {"family": "ks_counterexample", "switched": True},
                "entry": [3, 3, 4]
            }
        }
    }


class PDRequest(BaseModel):
    sequence: SequenceDocument
    variant: str = Field(..., pattern="^(even|odd)$")
    N: int = Field(..., ge=1, le=100)
    bounds: bool = False


class SpectrumRequest(BaseModel):
    sequence: SequenceDocument
    N: int = Field(default=200, ge=2, le=2000)
    bins: int = Field(default=20, ge=1, le=200)


class VerifyRequest(BaseModel):
    ks_prefix: List[str] = Field(default_factory=list, description="Override the counterexample's first c_n")
    items: Optional[List[int]] = Field(default=None, description="Acceptance item numbers to run")


class ReportResponse(BaseModel):
    """Any report, JSON-encoded with rationals as 'p/q' strings"""
    passed: bool
    report: Dict[str, Any]
    response_time: float = Field(..., description="Response time in seconds")
    timestamp: datetime = Field(default_factory=datetime.now)


class SystemStatus(BaseModel):
    """System health and status"""
    status: str = Field(..., description="System status: 'healthy' or 'degraded'")
    version: str
    total_checks: int
    failed_checks: int
    uptime: str = Field(..., description="System uptime")


class ErrorResponse(BaseModel):
    """Error response model"""
    error: str = Field(..., description="Error message")
    error_type: str = Field(..., description="Type of error")
    timestamp: datetime = Field(default_factory=datetime.now)
