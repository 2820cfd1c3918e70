"""Monodromy node: partition and prime-dimension certificates."""

from src.errors import ToolkitError
from src.state import CertifyState
from src.tools.monodromy import gabber_check, pyramid_monodromy_check, weights_monodromy
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)


def node(state: CertifyState) -> dict:
    """
    Monodromy node: eigenvalue-partition check and prime-dimension check.

    Args:
        state: Current graph state

    Returns:
        State update dictionary with monodromy and gabber
    """
    logger.info("Monodromy: Starting certificate checks")

    R = state.get("R")
    weights = state.get("weights")
    top_weight = state.get("top_weight")
    family = state["request"].family
    if R is None:
        return {"monodromy": None, "gabber": None}

    try:
        monodromy = None
        if family is not None and family.family == "pyramid":
            monodromy = pyramid_monodromy_check(*family.sides)
        elif weights is not None:
            monodromy = weights_monodromy(state.get("subject", ""), weights)

        gabber = None
        if weights is not None:
            gabber = gabber_check(R, weights=weights)
        elif top_weight is not None:
            gabber = gabber_check(R, top_multiplicity=top_weight)

        result = {"monodromy": monodromy, "gabber": gabber}
        logger.info(f"Monodromy: large = {monodromy.large if monodromy else None}, "
                    f"prime test = {gabber.verdict.value if gabber else None}")
        save_node_io("monodromy", state, result)
        return result

    except ToolkitError as e:
        logger.error(f"Error in Monodromy: {e.name}: {e}")
        return {"monodromy": None, "gabber": None, "errors": [f"monodromy: {e.name}: {e}"]}
