"""Fiber-functor weights of surfaces in the 3-torus.

The stratification engine sums signed weights over the boundary strata of the
compactification (G_m ∪ {0, ∞})^3, one coordinate at a time sent to ∞:

* codim 0: the torus itself (face-volume formula)
* codim 1: the face where coordinate i is maximal, contributing a curve block lifted
  by one weight step and negated
* codim 2: the locus where two coordinates are maximal, falling in one of three cases
  (no term, a single term, or a segment of terms)

Strata with a coordinate sent to 0 contribute nothing.
"""

from itertools import product
from math import gcd
from typing import List, Sequence

from src.errors import (
    AssemblyMismatch,
    NegativeAssembledWeight,
    UnsupportedCornerConfiguration,
)
from src.schemas import (
    LatticePolytope,
    SignedWeightVector,
    StratumContribution,
    StratumKind,
    WeightVector,
)
from src.tools.denef_loeser import curve_signed_weights, surface_signed_weights_dl
from src.tools.polytope_core import (
    face_boundary_length,
    face_relative_volume,
    face_volumes,
    max_face,
    normalized_volume,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _signed(f0: int, f1: int, f2: int, f3: int, f4: int) -> SignedWeightVector:
    return SignedWeightVector(n=3, mult={0: f0, 1: f1, 2: f2, 3: f3, 4: f4}, leading_sign=1)


_ZERO = _signed(0, 0, 0, 0, 0)
_GM_LINE = _signed(-1, 0, 2, 0, -1)


def prism_weights(a: int, b: int, c: int) -> WeightVector:
    """Closed form for the box [0,a]x[0,b]x[0,c]."""
    s = a + b + c
    p = a * b + b * c + c * a
    side = 2 * p - 4 * s + 6
    middle = 6 * a * b * c - 4 * p + 6 * s - 8
    return WeightVector(n=3, mult={0: s - 2, 1: side, 2: middle, 3: side, 4: s - 2})


def pyramid_weights(a: int, b: int, c: int) -> WeightVector:
    """Closed form for the pyramid with an a x b rectangular base at height c."""
    return WeightVector(n=3, mult={
        0: 1,
        1: 0,
        2: 2 * a * b * c - 2 * a * b + 2 * a + 2 * b - 3,
        3: 2 * a * b - 2 * a - 2 * b + 2,
        4: 0,
    })


def truncated_prism_top_weight(b: Sequence[int]) -> int:
    """Multiplicity of the top weight 2n-2 for a truncated prism with sides b (independent of the corner)."""
    if len(b) < 2 or any(x < 1 for x in b):
        raise ValueError(f"need n >= 2 positive sides, got {tuple(b)}")
    return sum(b) - len(b) + 1


def _lift_curve(curve: SignedWeightVector) -> SignedWeightVector:
    """Negate a curve block and add it back shifted up by two weights."""
    g = curve.mult
    return _signed(-g[0], -g[1], g[0] - g[2], g[1], g[2])


def _check_corners(P: LatticePolytope, first_axis: int) -> None:
    others = [k for k in range(3) if k != first_axis]
    top = max(v[first_axis] for v in P.vertices)
    extremes = [(min(v[k] for v in P.vertices), max(v[k] for v in P.vertices)) for k in others]
    for choice in product((0, 1), repeat=2):
        target = [extremes[j][choice[j]] for j in range(2)]
        if not any(v[first_axis] == top and v[others[0]] == target[0] and v[others[1]] == target[1]
                   for v in P.vertices):
            labels = ["min" if c == 0 else "max" for c in choice]
            raise UnsupportedCornerConfiguration(
                f"no vertex attains max x_{first_axis} with {labels[0]} x_{others[0]} and "
                f"{labels[1]} x_{others[1]}; the corner at infinity is not covered by the handled cases")


def _facet_contribution(P: LatticePolytope, axis: int) -> StratumContribution:
    face = max_face(P, axis)
    if face.dim == 2:
        U2 = face_relative_volume(P, face)
        U1 = face_boundary_length(P, face)
        block = _lift_curve(curve_signed_weights(U2, U1))
        detail = f"face of area {U2} and boundary {U1}"
        kind = StratumKind.FACET_CURVE
    elif face.dim == 1:
        start, end = (P.vertices[i] for i in face.vertex_ids)
        length = gcd(*(abs(x - y) for x, y in zip(start, end)))
        block = _GM_LINE.scaled(length)
        detail = f"edge of lattice length {length}: {length} translated tori"
        kind = StratumKind.FACET_CURVE
    else:
        block = _ZERO
        detail = "single term: empty restriction"
        kind = StratumKind.SINGLE_TERM
    return StratumContribution(infinite=(axis,), kind=kind, signed_weights=block, detail=detail)


def _codim2_contribution(P: LatticePolytope, i: int, j: int) -> StratumContribution:
    k = 3 - i - j
    top_i = max(v[i] for v in P.vertices)
    top_j = max(v[j] for v in P.vertices)
    joint = [v for v in P.vertices if v[i] == top_i and v[j] == top_j]
    if not joint:
        return StratumContribution(infinite=(i, j), kind=StratumKind.FULL_GM_LINE, signed_weights=_GM_LINE,
                                   detail="no term of maximal joint exponents")
    if len(joint) == 1:
        return StratumContribution(infinite=(i, j), kind=StratumKind.SINGLE_TERM, signed_weights=_ZERO,
                                   detail=f"single maximal term {joint[0]}")
    length = max(v[k] for v in joint) - min(v[k] for v in joint)
    return StratumContribution(infinite=(i, j), kind=StratumKind.EDGE_POINTS,
                               signed_weights=_signed(1, 0, -2, 0, 1).scaled(length),
                               detail=f"{length} points on the segment along x_{k}")


def stratify_surface(P: LatticePolytope, first_axis: int = 0) -> List[StratumContribution]:
    """
    Every boundary stratum with its signed contribution.

    Raises:
        UnsupportedCornerConfiguration: when a corner at infinity of the first axis is not covered
    """
    if P.dim != 3 or not P.full_dimensional:
        raise UnsupportedCornerConfiguration("stratification assembly handles full-dimensional 3-polytopes only")
    _check_corners(P, first_axis)

    contributions = [StratumContribution(infinite=(), kind=StratumKind.CODIM0,
                                         signed_weights=surface_signed_weights_dl(face_volumes(P)),
                                         detail="torus")]
    for pattern in product(("gm", "inf", "zero"), repeat=3):
        infinite = tuple(k for k in range(3) if pattern[k] == "inf")
        zero = tuple(k for k in range(3) if pattern[k] == "zero")
        if zero:
            contributions.append(StratumContribution(infinite=infinite, zero=zero,
                                                     kind=StratumKind.ZERO_COORDINATE,
                                                     signed_weights=_ZERO, detail="coordinate at zero"))
        elif len(infinite) == 1:
            contributions.append(_facet_contribution(P, infinite[0]))
        elif len(infinite) == 2:
            contributions.append(_codim2_contribution(P, *infinite))
        elif len(infinite) == 3:
            contributions.append(StratumContribution(infinite=infinite, kind=StratumKind.SINGLE_TERM,
                                                     signed_weights=_ZERO,
                                                     detail="corner avoided by a jointly maximal vertex"))
    return contributions


def assemble_surface_weights(P: LatticePolytope, first_axis: int = 0) -> WeightVector:
    """
    Sum the stratum contributions into the fiber-functor weight vector.

    Raises:
        UnsupportedCornerConfiguration: see stratify_surface
        NegativeAssembledWeight: if a summed multiplicity is negative
        AssemblyMismatch: if the total differs from the normalized volume
    """
    total = _ZERO
    for contribution in stratify_surface(P, first_axis):
        total = total.plus(contribution.signed_weights)
    negative = {w: c for w, c in total.mult.items() if c < 0}
    if negative:
        raise NegativeAssembledWeight(f"assembled weights {total.descending()} have negative entries {negative}")
    expected = normalized_volume(P)
    if total.total != expected:
        raise AssemblyMismatch(f"assembled weights sum to {total.total}, normalized volume is {expected}")
    logger.debug(f"Assembled surface weights {total.descending()} (total {expected})")
    return WeightVector(n=3, mult=dict(total.mult))
