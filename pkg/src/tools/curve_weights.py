"""Weight multiplicities (w_0, w_1, w_2) of nondegenerate curves in the 2-torus.

Two independent routes: the slope sequences at 0 and infinity, and the strata counts
of the compactified boundary. They must agree; disagreement is an error.
"""

from typing import Literal, Optional

from src.errors import MethodDisagreement, NegativeMultiplicity
from src.schemas import CurveWeightsReport, LatticePolytope, MonomialSupport, WeightVector
from src.tools.polygon2d import normalize, polygon_invariants, slope_data, stratum_counts
from src.tools.polytope_core import normalized_volume
from src.utils.logger import get_logger

logger = get_logger(__name__)

Method = Literal["slopes", "strata", "both"]

# Supports whose tabulated totals are inconsistent with their hull area.
_REFERENCE_DISCREPANCIES = {
    frozenset({(4, 3), (2, 2), (2, 0), (0, 1)}): (
        "reference tabulation lists total 4 and w_1 = 2 for x^4y^3+3x^2y^2+x^2+y; "
        "the hull has area 4, so the total is 8 and w_1 = 6 (w_0 = 2, w_2 = 0 agree)"
    ),
}


def _assemble(w0: int, w2: int, twice_area: int, method: str) -> WeightVector:
    w1 = twice_area - w0 - w2
    for name, value in (("w_0", w0), ("w_1", w1), ("w_2", w2)):
        if value < 0:
            raise NegativeMultiplicity(
                f"{method}: {name} = {value}; the support violates nondegeneracy or normalization")
    return WeightVector(n=2, mult={0: w0, 1: w1, 2: w2})


def weights_by_slopes(f: MonomialSupport) -> WeightVector:
    """w_0 = n0 + vol(S0) - 1, w_2 = ninf + vol(Sinf) - 1, w_1 = 2·U_2 - w_0 - w_2."""
    f = f if f.normalized else normalize(f)
    data = slope_data(f)
    twice_area = int(2 * polygon_invariants(f).area)
    return _assemble(data.n0 + data.s0_volume - 1, data.ninf + data.sinf_volume - 1, twice_area, "slopes")


def weights_by_strata(f: MonomialSupport) -> WeightVector:
    """w_2 = n1+n2+r1+r2 - 1, w_0 = U_1 - (n1+n2+r1+r2) - 1, w_1 = 2·U_2 - w_0 - w_2."""
    f = f if f.normalized else normalize(f)
    counts = stratum_counts(f)
    inv = polygon_invariants(f)
    return _assemble(inv.boundary - counts.total - 1, counts.total - 1, int(2 * inv.area), "strata")


def reference_discrepancy(f: MonomialSupport) -> Optional[str]:
    """Note for supports whose tabulated weight totals disagree with the computed ones."""
    f = f if f.normalized else normalize(f)
    return _REFERENCE_DISCREPANCIES.get(frozenset(f.exponents))


def curve_weights(f: MonomialSupport, method: Method = "both") -> CurveWeightsReport:
    """
    Run one or both weight methods.

    Raises:
        MethodDisagreement: when both methods run and differ
    """
    f = f if f.normalized else normalize(f)
    slopes = weights_by_slopes(f) if method in ("slopes", "both") else None
    strata = weights_by_strata(f) if method in ("strata", "both") else None
    agree = None
    if slopes is not None and strata is not None:
        agree = slopes.mult == strata.mult
        if not agree:
            raise MethodDisagreement(f"slopes give {slopes.ascending()}, strata give {strata.ascending()}")
    note = reference_discrepancy(f)
    if note:
        logger.warning(f"Known discrepancy: {note}")
    chosen = slopes or strata
    return CurveWeightsReport(
        slopes=slopes,
        strata=strata,
        agree=agree,
        normalized_volume=chosen.total if chosen else int(2 * polygon_invariants(f).area),
        discrepancy=note,
    )


def fiber_dimension(P: LatticePolytope) -> int:
    """Dimension of the fiber functor: the normalized volume of the Newton polytope."""
    return normalized_volume(P)
