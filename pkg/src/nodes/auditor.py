"""Auditor node: cross-checks the branches and emits the certificate."""

from src.config import Config
from src.nodes.weights import closed_form_weights
from src.schemas import CertificateReport, GabberVerdict, PrimalityResult
from src.state import CertifyState
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)

UNVERIFIED_HYPOTHESES = [
    "coefficients are assumed generic, so the polynomial is nondegenerate for its Newton polytope",
    "irreducibility and translation-invariance of the fiber functor are assumed, not checked",
]


def node(state: CertifyState) -> dict:
    """
    Auditor node: check Σ weights = R, collect findings and decide approval or a retry.

    Args:
        state: Current graph state

    Returns:
        State update dictionary with report, needs_retry, use_closed_form and retry_count
    """
    logger.info("Auditor: Starting certificate review")

    request = state["request"]
    R = state.get("R")
    weights = state.get("weights")
    monodromy = state.get("monodromy")
    gabber = state.get("gabber")
    retry_count = state.get("retry_count", 0)
    findings = []

    if state.get("weights_failed") and not state.get("use_closed_form") and retry_count < Config.MAX_AUDIT_RETRIES:
        if closed_form_weights(request.family) is not None:
            logger.info("Auditor: weight engine failed, retrying with the closed form")
            return {"needs_retry": True, "use_closed_form": True, "retry_count": retry_count + 1}

    consistent = True
    if weights is not None and R is not None and weights.total != R:
        consistent = False
        findings.append(f"weights total {weights.total} differs from R = {R}")
    if weights is not None and R is not None and weights.total == R:
        findings.append(f"weights total matches R = {R}")
    source = state.get("weights_source") or ""
    if "closed form" in source:
        findings.append("weights taken from the closed form after the engine failed" if retry_count
                        else "weights taken from the closed form on request")

    large = bool(monodromy and monodromy.large)
    prime = bool(gabber and gabber.verdict == GabberVerdict.CONTAINS)
    if large:
        findings.append("eigenvalue-partition certificate holds")
    if prime:
        findings.append("prime-dimension certificate holds")
    for condition in state.get("conditions", []):
        findings.append(f"{condition.mode} condition {'holds' if condition.holds else 'fails'}")

    report = CertificateReport(
        subject=state.get("subject", ""),
        dim=state["polytope"].dim if state.get("polytope") is not None else (request.family.dim if request.family else 0),
        R=R or 0,
        R_primality=state.get("R_primality") or PrimalityResult(n=0, prime=False),
        lattice_points=state.get("lattice_points"),
        weights=weights,
        weights_source=state.get("weights_source"),
        top_weight=state.get("top_weight"),
        conditions=state.get("conditions", []),
        monodromy=monodromy,
        gabber=gabber,
        approved=consistent and R is not None and (large or prime),
        findings=findings,
        unverified_hypotheses=UNVERIFIED_HYPOTHESES,
        errors=list(state.get("errors", [])),
    )

    status = "APPROVED" if report.approved else "NOT CERTIFIED"
    logger.info(f"Auditor: {status} ({report.subject})")
    result = {"report": report, "needs_retry": False}
    save_node_io("auditor", state, result)
    return result
