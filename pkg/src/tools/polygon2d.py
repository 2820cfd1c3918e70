"""Newton-polygon analysis in plotted coordinates.

Plotted coordinates put the y-exponent on the horizontal axis (X) and the x-exponent
on the vertical axis (Y). S0 is the lower hull from the bottom vertex on X = 0 to the
bottom vertex at maximal X; Sinf is the upper hull, reflected about the horizontal axis.
"""

from fractions import Fraction
from math import gcd
from typing import List, Tuple

from src.errors import DegenerateSupport
from src.schemas import (
    MonomialSupport,
    PolygonInvariants,
    SlopeData,
    SlopeEdge,
    StratumCounts,
    Term,
)
from src.tools.polytope_core import monotone_chain

Point = Tuple[int, int]


def _check_two_dimensional(exps: List[Point]) -> None:
    if len(set(exps)) < 3:
        raise DegenerateSupport(f"support {sorted(set(exps))} spans at most a segment")
    o = exps[0]
    if all((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]) == 0 for a in exps for b in exps):
        raise DegenerateSupport(f"support {sorted(set(exps))} is collinear")


def normalize(f: MonomialSupport) -> MonomialSupport:
    """Translate exponents so that both coordinate minima are 0."""
    if f.n != 2:
        raise DegenerateSupport(f"Newton polygons need two variables, got n = {f.n}")
    exps = [(e[0], e[1]) for e in f.exponents]
    _check_two_dimensional(exps)
    mx = min(e[0] for e in exps)
    my = min(e[1] for e in exps)
    terms = tuple(Term(exp=(t.exp[0] - mx, t.exp[1] - my), coeff=t.coeff) for t in f.terms)
    return MonomialSupport(n=2, terms=terms, normalized=True)


def _plotted(f: MonomialSupport) -> List[Point]:
    if not f.normalized:
        f = normalize(f)
    return [(e[1], e[0]) for e in f.exponents]


def _edges(chain: List[Point]) -> Tuple[SlopeEdge, ...]:
    edges = []
    for p, q in zip(chain, chain[1:]):
        dx, dy = q[0] - p[0], q[1] - p[1]
        edges.append(SlopeEdge(start=p, end=q, displacement=(dx, dy), volume=gcd(abs(dx), abs(dy)),
                               slope=Fraction(dy, dx)))
    return tuple(edges)


def _lower_chain(points: List[Point]) -> List[Point]:
    """Lower hull from the bottom-left vertex to the bottom vertex at maximal X."""
    hull_lower: List[Point] = []
    for p in sorted(set(points)):
        while len(hull_lower) >= 2:
            o, a = hull_lower[-2], hull_lower[-1]
            if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                hull_lower.pop()
            else:
                break
        hull_lower.append(p)
    # drop the right vertical side
    if len(hull_lower) >= 2 and hull_lower[-1][0] == hull_lower[-2][0]:
        hull_lower.pop()
    return hull_lower


def slope_data(f: MonomialSupport) -> SlopeData:
    """
    Slope sequences and axis counts of a normalized 2-D support.

    Returns:
        SlopeData with S0, Sinf (reflected coordinates), n0 and ninf
    """
    pts = _plotted(f)
    max_x = max(p[0] for p in pts)
    left = [p[1] for p in pts if p[0] == 0]
    right = [p[1] for p in pts if p[0] == max_x]

    S0 = _edges(_lower_chain(pts))
    Sinf = _edges(_lower_chain([(p[0], -p[1]) for p in pts]))
    return SlopeData(
        S0=S0,
        Sinf=Sinf,
        n0=max(left) - min(left),
        ninf=max(right) - min(right),
    )


def stratum_counts(f: MonomialSupport) -> StratumCounts:
    """
    Split the reflected upper hull by slope sign and read off the right vertical side.

    Returns:
        StratumCounts(n1, n2, r1, r2): n1 right side length, n2/r1/r2 volumes of zero/positive/negative slope
    """
    data = slope_data(f)
    n2 = sum(e.volume for e in data.Sinf if e.slope == 0)
    r1 = sum(e.volume for e in data.Sinf if e.slope > 0)
    r2 = sum(e.volume for e in data.Sinf if e.slope < 0)
    return StratumCounts(n1=data.ninf, n2=n2, r1=r1, r2=r2)


def polygon_invariants(f: MonomialSupport) -> PolygonInvariants:
    """Hull vertices, exact area, boundary lattice length and side gcds of the Newton polygon."""
    if f.n != 2:
        raise DegenerateSupport(f"Newton polygons need two variables, got n = {f.n}")
    exps = [(e[0], e[1]) for e in f.exponents]
    _check_two_dimensional(exps)
    hull = monotone_chain(exps)
    k = len(hull)
    twice_area = 0
    gcds = []
    for i in range(k):
        p, q = hull[i], hull[(i + 1) % k]
        twice_area += p[0] * q[1] - q[0] * p[1]
        gcds.append(gcd(abs(q[0] - p[0]), abs(q[1] - p[1])))
    return PolygonInvariants(
        vertices=tuple(hull),
        area=Fraction(abs(twice_area), 2),
        boundary=sum(gcds),
        side_gcds=tuple(gcds),
    )
