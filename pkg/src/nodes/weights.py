"""Weights node: fiber-functor weight vector of the polytope."""

from typing import Optional

from src.errors import ToolkitError
from src.schemas import MonomialSupport, PolytopeFamily, WeightVector
from src.state import CertifyState
from src.tools.curve_weights import curve_weights
from src.tools.surface_weights import (
    assemble_surface_weights,
    prism_weights,
    pyramid_weights,
    truncated_prism_top_weight,
)
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)


def closed_form_weights(family: Optional[PolytopeFamily]) -> Optional[WeightVector]:
    """Closed-form weights of a 3-dimensional prism or pyramid, None otherwise."""
    if family is None or family.dim != 3:
        return None
    if family.family == "prism":
        return prism_weights(*family.sides)
    if family.family == "pyramid" and (family.apex or (1, 1)) == (1, 1):
        return pyramid_weights(*family.sides)
    return None


def node(state: CertifyState) -> dict:
    """
    Weights node: curve methods for n = 2, stratum assembly or closed form for n = 3.

    Args:
        state: Current graph state

    Returns:
        State update dictionary with weights, weights_source, weights_failed and top_weight
    """
    logger.info("Weights: Starting weight computation")

    P = state.get("polytope")
    family = state["request"].family
    top_weight = None
    if family is not None and family.family == "truncated_prism":
        top_weight = truncated_prism_top_weight(family.sides)

    if P is None:
        return {"weights": None, "weights_source": None, "weights_failed": False, "top_weight": top_weight}

    try:
        if P.dim == 2:
            support = MonomialSupport.from_terms({v: 1 for v in P.vertices})
            weights = curve_weights(support, "both").slopes
            source = "curve methods (slopes and strata agree)"
        elif P.dim == 3 and state.get("use_closed_form") and closed_form_weights(family) is not None:
            weights = closed_form_weights(family)
            source = f"closed form ({family.family})"
        elif P.dim == 3:
            weights = assemble_surface_weights(P)
            source = "stratum assembly"
        else:
            logger.info(f"Weights: no weight engine for n = {P.dim}")
            return {"weights": None, "weights_source": None, "weights_failed": False, "top_weight": top_weight}

        if top_weight is not None and weights.mult[2 * (P.dim - 1)] != top_weight:
            logger.warning(f"Top weight {weights.mult[2 * (P.dim - 1)]} differs from closed form {top_weight}")

        result = {"weights": weights, "weights_source": source, "weights_failed": False, "top_weight": top_weight}
        logger.info(f"Weights: {weights.descending()} via {source}")
        save_node_io("weights", state, result)
        return result

    except ToolkitError as e:
        logger.error(f"Error in Weights: {e.name}: {e}")
        return {"weights": None, "weights_source": None, "weights_failed": True, "top_weight": top_weight,
                "errors": [f"weights: {e.name}: {e}"]}
