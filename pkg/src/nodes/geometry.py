"""Geometry node: normalized volume, its primality and the lattice-point count."""

from src.errors import ToolkitError
from src.state import CertifyState
from src.tools.lattice_count import lattice_point_count
from src.tools.monodromy import primality
from src.tools.polytope_core import family_normalized_volume, normalized_volume
from src.utils.logger import get_logger, save_node_io

logger = get_logger(__name__)


def node(state: CertifyState) -> dict:
    """
    Geometry node: compute R, its primality and the default dim X.

    Args:
        state: Current graph state

    Returns:
        State update dictionary with R, R_primality and lattice_points
    """
    logger.info("Geometry: Starting volume computation")

    P = state.get("polytope")
    family = state["request"].family
    errors = []

    if P is None and family is None:
        return {"R": None, "R_primality": None, "lattice_points": None}

    R = normalized_volume(P) if P is not None else family_normalized_volume(family)
    lattice_points = None
    if P is not None:
        try:
            lattice_points = lattice_point_count(P)
        except ToolkitError as e:
            logger.warning(f"Lattice-point count skipped: {e}")
            errors.append(f"geometry: {e.name}: {e}")

    result = {"R": R, "R_primality": primality(R), "lattice_points": lattice_points}
    logger.info(f"Geometry: R = {R}, lattice points = {lattice_points}")
    save_node_io("geometry", state, result)
    if errors:
        result["errors"] = errors
    return result
