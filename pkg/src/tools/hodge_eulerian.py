"""Per-character Hodge numbers, Eulerian numbers and the adjoint numerical conditions.

Hodge numbers come from residue-class interior counts of dilates (lattice_count);
everything else works on integer sequences. Exact rationals are used up to
``Config.EXACT_EULERIAN_MAX_N``; above that a per-row normalized float recurrence
keeps the descent distribution in range.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import Config
from src.errors import (
    InsufficientMultiplicity,
    InvalidHodgeVector,
    InvalidInput,
    NegativeHodgeNumber,
    UnsupportedN,
)
from src.schemas import (
    AdjointHodgeVector,
    BetaLemmaReport,
    ConditionReport,
    DistributionMode,
    EulerianDistribution,
    HodgeTable,
    InequalityCheck,
    LatticePolytope,
    ResidueClass,
)
from src.tools.lattice_count import count_in_dilate, interior_points_in_class
from src.tools.polytope_core import normalized_volume
from src.utils.logger import get_logger

logger = get_logger(__name__)

Number = Union[Fraction, float]
Residue = Union[ResidueClass, Sequence[int]]

# Relative slack when comparing float multiplicities
_FLOAT_SLACK = 1e-12


# ---------------------------------------------------------------------------
# Eulerian numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def eulerian_row(n: int) -> Tuple[int, ...]:
    """A(n, 0..n-1) by the recurrence A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)."""
    if n < 1:
        raise ValueError(f"Eulerian rows start at n = 1, got {n}")
    row = [1]
    for size in range(2, n + 1):
        previous = row
        row = [0] * size
        for k in range(size):
            same = previous[k] if k < size - 1 else 0
            lower = previous[k - 1] if k >= 1 else 0
            row[k] = (k + 1) * same + (size - k) * lower
    return tuple(row)


def eulerian_closed_form(n: int, k: int) -> int:
    """A(n,k) = Σ_{i=0}^k (-1)^i C(n+1,i)(k+1-i)^n."""
    return sum((-1) ** i * comb(n + 1, i) * (k + 1 - i) ** n for i in range(k + 1))


def eulerian_number(n: int, k: int) -> int:
    """Number of permutations of n elements with k descents (0 <= k < n)."""
    if n < 1 or not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n = {n}, k = {k}")
    return eulerian_row(n)[k]


# ---------------------------------------------------------------------------
# Hodge numbers of eigenspaces
# ---------------------------------------------------------------------------

def _residue(P: LatticePolytope, m: int, lam: Optional[Residue]) -> Optional[ResidueClass]:
    if m < 1:
        raise InvalidInput(f"modulus must be positive, got {m}")
    if lam is None:
        return None
    if not isinstance(lam, ResidueClass):
        lam = ResidueClass(m=m, lam=tuple(lam))
    elif lam.m != m:
        lam = ResidueClass(m=m, lam=lam.lam)
    if len(lam.lam) != P.dim:
        raise InvalidInput(f"lambda has {len(lam.lam)} entries, polytope dimension is {P.dim}")
    return lam


def alternating_counts(
    P: LatticePolytope,
    m: int,
    lam: Optional[Residue],
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> Dict[int, int]:
    """
    Raw h(q) = Σ_{i=0}^q (-1)^i C(n+1,i) L((q+1-i)·m·P), no validation and no correction.

    ``lam=None`` drops the congruence condition, which gives the class-free count of mP.
    """
    lam = _residue(P, m, lam)
    n = P.dim
    interior: Dict[int, int] = {}
    for j in range(1, n + 1):
        if lam is None:
            interior[j] = count_in_dilate(P, j * m, strict=True, budget=budget, threads=threads)
        else:
            interior[j] = interior_points_in_class(P, j, m, lam, budget=budget, threads=threads)
    return {
        q: sum((-1) ** i * comb(n + 1, i) * interior[q + 1 - i] for i in range(q + 1))
        for q in range(n)
    }


def hodge_numbers(
    P: LatticePolytope,
    m: int,
    lam: Residue,
    torus_correction: Optional[bool] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> HodgeTable:
    """
    Hodge numbers of the lambda-eigenspace, h(q) for q = 0..n-1.

    Args:
        P: Full-dimensional polytope
        m: Modulus of the character
        lam: Residue class in (Z/m)^n
        torus_correction: Add C(n, n-q-1); defaults to on for the trivial class only
        budget: Enumeration budget override
        threads: Worker threads

    Raises:
        NegativeHodgeNumber: lambda is not generic for P, or m is too small
    """
    lam = _residue(P, m, lam)
    correct = lam.trivial if torus_correction is None else torus_correction
    n = P.dim
    h = alternating_counts(P, m, lam, budget=budget, threads=threads)
    if correct:
        h = {q: value + comb(n, n - q - 1) for q, value in h.items()}
    negative = {q: value for q, value in h.items() if value < 0}
    if negative:
        raise NegativeHodgeNumber(
            f"class {lam.lam} mod {m} gives negative entries {negative}; lambda is not generic or m is too small")
    return HodgeTable(n=n, m=m, lam=lam, h=h, corrected=correct)


def eulerian_deviation(
    P: LatticePolytope,
    m: int,
    lam: Residue,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> Fraction:
    """max_q |h(q)/Vol(P) - A(n,q)| with Vol the Euclidean volume."""
    n = P.dim
    volume = Fraction(normalized_volume(P), factorial(n))
    h = alternating_counts(P, m, lam, budget=budget, threads=threads)
    row = eulerian_row(n)
    return max(abs(Fraction(h[q]) / volume - row[q]) for q in range(n))


# ---------------------------------------------------------------------------
# Distribution of the sum of two centred descent counts
# ---------------------------------------------------------------------------

def _exact_beta(n: int) -> Tuple[Fraction, ...]:
    row = eulerian_row(n)
    denominator = factorial(n) ** 2
    upper = [sum(row[k] * row[p + n - 1 - k] for k in range(p, n)) for p in range(n)]
    numerators = list(reversed(upper[1:])) + upper
    return tuple(Fraction(x, denominator) for x in numerators)


def _scaled_descents(n: int) -> np.ndarray:
    row = np.array([1.0])
    for size in range(2, n + 1):
        k = np.arange(size, dtype=np.float64)
        same = np.append(row, 0.0)
        lower = np.insert(row, 0, 0.0)
        row = ((k + 1) * same + (size - k) * lower) / size
        row /= row.sum()
    return row


def eulerian_distribution(n: int, mode: Union[DistributionMode, str] = DistributionMode.EXACT) -> EulerianDistribution:
    """
    beta_p = Σ_k A(n,k)·A(n, p+n-1-k)/(n!)^2 for p = -(n-1)..(n-1).

    Raises:
        UnsupportedN: n < 1 or n above the limit of the requested mode
    """
    mode = DistributionMode(mode)
    if n < 1:
        raise UnsupportedN(f"n must be at least 1, got {n}")
    if mode == DistributionMode.EXACT:
        if n > Config.EXACT_EULERIAN_MAX_N:
            raise UnsupportedN(f"exact mode supports n <= {Config.EXACT_EULERIAN_MAX_N}, got {n}")
        logger.info(f"Building exact descent distribution for n = {n}")
        beta: Sequence[Number] = _exact_beta(n)
    else:
        if n > Config.FLOAT_EULERIAN_MAX_N:
            raise UnsupportedN(f"scaled_float mode supports n <= {Config.FLOAT_EULERIAN_MAX_N}, got {n}")
        logger.info(f"Building scaled descent distribution for n = {n}")
        descents = _scaled_descents(n)
        beta = [float(x) for x in np.convolve(descents, descents)]
    return EulerianDistribution(n=n, mode=mode, beta=tuple(beta))


def beta_lemma_report(dist: EulerianDistribution) -> BetaLemmaReport:
    """
    Check beta_0 <= √3/√(n+4), Σ_{p>0} p·beta_p > √n/(4√3) - 1/2 and Σ_{p>0} p²·beta_p <= (n+1)/12.

    Exact distributions are compared through squares, without floating point.
    """
    n = dist.n
    positive = [(p, dist.beta_at(p)) for p in range(1, n)]
    beta0 = dist.beta_at(0)
    zero = Fraction(0) if dist.mode == DistributionMode.EXACT else 0.0
    first = sum((p * b for p, b in positive), zero)
    second = sum((p * p * b for p, b in positive), zero)
    if dist.mode == DistributionMode.EXACT:
        upper = beta0 * beta0 * (n + 4) <= 3
        shifted = first + Fraction(1, 2)
        lower = shifted > 0 and shifted * shifted > Fraction(n, 48)
        variance = second <= Fraction(n + 1, 12)
    else:
        upper = beta0 <= sqrt(3) / sqrt(n + 4)
        lower = first > sqrt(n) / (4 * sqrt(3)) - 0.5
        variance = second <= (n + 1) / 12 * (1 + _FLOAT_SLACK)
    return BetaLemmaReport(n=n, beta0=beta0, first_moment=first, second_moment=second,
                           upper_holds=upper, lower_holds=lower, variance_holds=variance)


# ---------------------------------------------------------------------------
# Adjoint Hodge numbers and the numerical conditions
# ---------------------------------------------------------------------------

def adjoint_hodge(h: Sequence[int], group: Literal["GL", "GO"] = "GL", sign: int = -1) -> AdjointHodgeVector:
    """
    Adjoint Hodge numbers h_a^p, p = -(n-1)..(n-1).

    GL: half the self-correlation of h. GO: the same plus sign·h[(p+n-1)/2] at matching
    parity, then halved; sign = -1 is the exterior square, +1 the symmetric square.

    Raises:
        InvalidHodgeVector: negative entries, or a non-palindromic vector for GO
    """
    group = group.upper()
    if group not in ("GL", "GO"):
        raise InvalidInput(f"group must be GL or GO, got {group}")
    if sign not in (-1, 1):
        raise InvalidInput(f"sign must be +1 or -1, got {sign}")
    h = [int(x) for x in h]
    if not h:
        raise InvalidHodgeVector("Hodge vector is empty")
    if any(x < 0 for x in h):
        raise InvalidHodgeVector(f"Hodge numbers must be nonnegative, got {tuple(h)}")
    if group == "GO" and h != h[::-1]:
        raise InvalidHodgeVector(f"an orthogonal structure needs a palindromic Hodge vector, got {tuple(h)}")

    n = len(h)
    ha: Dict[int, Fraction] = {}
    for p in range(-(n - 1), n):
        twice = sum(h[i] * h[i - p] for i in range(max(0, p), min(n, n + p)))
        if group == "GO" and (p + n - 1) % 2 == 0:
            twice += sign * h[(p + n - 1) // 2]
        ha[p] = Fraction(twice, 2)
    rank = sum(h)
    return AdjointHodgeVector(group=group, n=n, ha=ha, t=rank if group == "GL" else rank // 2,
                              sign=sign)


def _items(ha: Union[AdjointHodgeVector, Mapping[int, Number]]) -> Dict[int, Number]:
    return dict(ha.ha) if isinstance(ha, AdjointHodgeVector) else dict(ha)


def t_g(ha: Union[AdjointHodgeVector, Mapping[int, Number]], k: Number) -> Number:
    """
    Sum of the k largest weights p, each counted ha(p) times.

    Fractional multiplicities are consumed proportionally.

    Raises:
        InsufficientMultiplicity: k exceeds the total multiplicity
    """
    items = _items(ha)
    total = sum(items.values())
    if k < 0:
        raise InvalidInput(f"k must be nonnegative, got {k}")
    exact = all(isinstance(v, (int, Fraction)) for v in items.values()) and isinstance(k, (int, Fraction))
    if k > (total if exact else total * (1 + _FLOAT_SLACK)):
        raise InsufficientMultiplicity(f"k = {k} exceeds the total multiplicity {total}")
    remaining = Fraction(k) if exact else float(k)
    acc = Fraction(0) if exact else 0.0
    for p in sorted(items, reverse=True):
        if remaining <= 0:
            break
        take = min(items[p], remaining)
        acc += p * take
        remaining -= take
    return acc


def _weighted_positive(items: Mapping[int, Number]) -> Tuple[Number, Number]:
    mass = sum(v for p, v in items.items() if p > 0)
    first = sum(p * v for p, v in items.items() if p > 0)
    return mass, first


def _t_or_none(items: Mapping[int, Number], k: Number, notes: List[str]) -> Optional[Number]:
    try:
        return t_g(items, k)
    except InsufficientMultiplicity as e:
        notes.append(str(e))
        return None


def check_conditions(
    ha: Union[AdjointHodgeVector, Mapping[int, Number]],
    dim_x: Optional[Number] = None,
    mode: Literal["full", "simplified"] = "simplified",
) -> ConditionReport:
    """
    Evaluate the numerical conditions on an adjoint vector.

    full: Σ_{q>0} h_a^q >= dimX + h_a^0 and Σ_{q>0} q·h_a^q > T(dimX + h_a^0) + T(dimX + 3/2·h_a^0).
    simplified: Σ_{q>0} q·h_a^q > 2·T(2·h_a^0).
    """
    items = _items(ha)
    h0 = items.get(0, 0)
    mass, first = _weighted_positive(items)
    notes: List[str] = []
    checks: List[InequalityCheck] = []

    if mode == "simplified":
        t = _t_or_none(items, 2 * h0, notes)
        rhs = 2 * t if t is not None else first
        holds = t is not None and first > rhs
        checks.append(InequalityCheck(name="Σ q·h_a^q > 2·T(2h_a^0)", lhs=first, rhs=rhs, holds=holds))
    elif mode == "full":
        if dim_x is None:
            raise InvalidInput("full mode needs dim X")
        first_rhs = dim_x + h0
        checks.append(InequalityCheck(name="Σ h_a^q >= dim X + h_a^0", lhs=mass, rhs=first_rhs, strict=False,
                                      holds=mass >= first_rhs))
        half = Fraction(3, 2) if isinstance(h0, (int, Fraction)) else 1.5
        t1 = _t_or_none(items, dim_x + h0, notes)
        t2 = _t_or_none(items, dim_x + half * h0, notes)
        if t1 is None or t2 is None:
            checks.append(InequalityCheck(name="Σ q·h_a^q > T(dim X + h_a^0) + T(dim X + 3/2·h_a^0)",
                                          lhs=first, rhs=first, holds=False))
        else:
            checks.append(InequalityCheck(name="Σ q·h_a^q > T(dim X + h_a^0) + T(dim X + 3/2·h_a^0)",
                                          lhs=first, rhs=t1 + t2, holds=first > t1 + t2))
    else:
        raise InvalidInput(f"mode must be full or simplified, got {mode}")
    return ConditionReport(mode=mode, holds=all(c.holds for c in checks), checks=checks, notes=notes)


def ideal_adjoint(
    n: int,
    mode: Union[DistributionMode, str] = DistributionMode.EXACT,
    total_dimension: Optional[int] = None,
) -> AdjointHodgeVector:
    """
    GL adjoint vector of the ideal profile h^q ∝ A(n,q).

    Without ``total_dimension`` the vector has mass 1 (it is the descent distribution
    itself); with it, h sums to that dimension and the adjoint mass is R²/2.
    """
    dist = eulerian_distribution(n, mode)
    scale: Number = 1
    if total_dimension is not None:
        scale = Fraction(total_dimension * total_dimension, 2)
        if dist.mode == DistributionMode.SCALED:
            scale = float(scale)
    ha = {p: dist.beta_at(p) * scale for p in range(-(n - 1), n)}
    return AdjointHodgeVector(group="GL", n=n, ha=ha, t=total_dimension)


def analytic_bound_check(n: int, group: Literal["GL", "SO"] = "SO") -> ConditionReport:
    """
    Distribution-free simplified condition from the beta bounds.

    Uses T(k) <= 2·sqrt(k·(n+1)/12) with k = 2·(bound on h_a^0). GL takes
    h_a^0 <= √3/√(n+4) and Σ p·h_a^p > √n/(4√3) - 1/2; SO takes h_a^0 < √13/(2√n)
    and Σ p·h_a^p > √n/11, valid for n >= 40000.
    """
    group = group.upper()
    notes: List[str] = []
    variance = (n + 1) / 12
    if group == "GL":
        h0_bound = sqrt(3) / sqrt(n + 4)
        lhs = sqrt(n) / (4 * sqrt(3)) - 0.5
    elif group == "SO":
        if n < 40000:
            notes.append(f"orthogonal bounds need n >= 40000, got {n}")
            check = InequalityCheck(name="Σ q·h_a^q > 2·T(2h_a^0)", lhs=0.0, rhs=0.0, holds=False)
            return ConditionReport(mode="analytic", holds=False, checks=[check], notes=notes)
        h0_bound = sqrt(13) / (2 * sqrt(n))
        lhs = sqrt(n) / 11
    else:
        raise InvalidInput(f"group must be GL or SO, got {group}")
    k = 2 * h0_bound
    t_bound = 2 * sqrt(k * variance)
    check = InequalityCheck(name="Σ q·h_a^q > 2·T(2h_a^0)", lhs=lhs, rhs=2 * t_bound, holds=lhs > 2 * t_bound)
    notes.append(f"h_a^0 <= {h0_bound:.6g}, T(2h_a^0) <= {t_bound:.6g}")
    return ConditionReport(mode="analytic", holds=check.holds, checks=[check], notes=notes)
