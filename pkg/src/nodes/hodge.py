"""Hodge node: numerical conditions for the ideal Eulerian profile at the polytope's dimension."""

from src.config import Config
from src.errors import ToolkitError
from src.schemas import DistributionMode
from src.state import CertifyState
from src.tools.hodge_eulerian import analytic_bound_check, check_conditions, ideal_adjoint
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)


def node(state: CertifyState) -> dict:
    """
    Hodge node: simplified, full and analytic conditions with h^q = A(n,q)·R/n!.

    dim X defaults to the lattice-point count, or R when the count is unavailable.

    Args:
        state: Current graph state

    Returns:
        State update dictionary with conditions
    """
    logger.info("Hodge: Starting numerical conditions")

    R = state.get("R")
    P = state.get("polytope")
    family = state["request"].family
    n = P.dim if P is not None else (family.dim if family is not None else None)
    if R is None or n is None:
        return {"conditions": []}

    try:
        mode = DistributionMode.EXACT if n <= Config.EXACT_EULERIAN_MAX_N else DistributionMode.SCALED
        ha = ideal_adjoint(n, mode, total_dimension=R)
        dim_x = state.get("lattice_points") or R
        conditions = [
            check_conditions(ha, mode="simplified"),
            check_conditions(ha, dim_x, mode="full"),
            analytic_bound_check(n, "GL"),
        ]
        result = {"conditions": conditions}
        logger.info(f"Hodge: conditions {[c.holds for c in conditions]}")
        save_node_io("hodge", state, result)
        return result

    except ToolkitError as e:
        logger.error(f"Error in Hodge: {e.name}: {e}")
        return {"conditions": [], "errors": [f"hodge: {e.name}: {e}"]}
