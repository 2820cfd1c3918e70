"""State definition for the LangGraph certification workflow."""

import operator
from typing import Annotated, List, Optional, TypedDict

from src.schemas import (
    CertificateReport,
    CertifyRequest,
    ConditionReport,
    GabberReport,
    LatticePolytope,
    MonodromyReport,
    PrimalityResult,
    WeightVector,
)


class CertifyState(TypedDict, total=False):
    """State structure for the certify graph."""

    request: CertifyRequest
    polytope: Optional[LatticePolytope]  # None for families above the hull dimension limit
    subject: str
    R: Optional[int]
    R_primality: Optional[PrimalityResult]
    lattice_points: Optional[int]
    weights: Optional[WeightVector]
    weights_source: Optional[str]
    weights_failed: bool
    top_weight: Optional[int]
    conditions: List[ConditionReport]
    monodromy: Optional[MonodromyReport]
    gabber: Optional[GabberReport]
    use_closed_form: bool
    retry_count: int
    needs_retry: bool
    errors: Annotated[List[str], operator.add]  # appended to by parallel branches
    report: Optional[CertificateReport]


def initial_state(request: CertifyRequest) -> CertifyState:
    """Fresh state for one certification request."""
    return {
        "request": request,
        "polytope": None,
        "subject": "",
        "R": None,
        "R_primality": None,
        "lattice_points": None,
        "weights": None,
        "weights_source": None,
        "weights_failed": False,
        "top_weight": None,
        "conditions": [],
        "monodromy": None,
        "gabber": None,
        "use_closed_form": request.use_closed_form,
        "retry_count": 0,
        "needs_retry": False,
        "errors": [],
        "report": None,
    }
