"""Planner node: parses the request and builds the polytope."""

from src.config import Config
from src.errors import ToolkitError
from src.schemas import CertifyRequest
from src.state import CertifyState
from src.tools.polytope_core import build_family, convex_hull, describe
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)


def node(state: CertifyState) -> dict:
    """
    Planner node: turn the request into a polytope (or a closed-form family only).

    Args:
        state: Current graph state

    Returns:
        State update dictionary with polytope and subject
    """
    logger.info("Planner: Starting request parsing")

    request = state["request"]
    if not isinstance(request, CertifyRequest):
        request = CertifyRequest.model_validate(request)

    try:
        if request.family is not None:
            family = request.family
            if family.dim > Config.MAX_HULL_DIMENSION:
                logger.warning(f"Family dimension {family.dim} is above the hull limit; using closed forms only")
                subject = f"{family.family} {list(family.sides)}"
                result = {"request": request, "polytope": None, "subject": subject}
                save_node_io("planner", state, result)
                return result
            P = build_family(family)
        else:
            P = convex_hull(request.vertices)

        result = {"request": request, "polytope": P, "subject": describe(P)}
        logger.info(f"Planner: {result['subject']}")
        save_node_io("planner", state, result)
        return result

    except ToolkitError as e:
        logger.error(f"Error in Planner: {e.name}: {e}")
        return {"request": request, "polytope": None, "subject": "invalid request",
                "errors": [f"planner: {e.name}: {e}"]}
