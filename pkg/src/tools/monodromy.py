"""Big-monodromy certificates.

Two criteria are implemented: the eigenvalue-partition test (large when the weight
partition has a single singleton class and R dominates 72(r²+1)²) and the
prime-dimension test (R prime and the weight multiset neither constant nor
all-distinct). Primality is Miller-Rabin, deterministic below 2^64.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from math import factorial, prod
from typing import List, Optional, Sequence

from src.config import Config
from src.errors import InvalidInput
from src.schemas import (
    CheckResult,
    ConditionOutcome,
    GabberReport,
    GabberVerdict,
    MonodromyReport,
    MonomialSupport,
    PrimalityResult,
    PrimeTruncation,
    WeightPartition,
    WeightVector,
)
from src.tools.curve_weights import curve_weights
from src.tools.polygon2d import normalize, polygon_invariants
from src.tools.surface_weights import pyramid_weights, truncated_prism_top_weight
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Witnesses that make Miller-Rabin exact below 3.3·10^24
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64

# Triangle configuration known to give big monodromy: side gcds {1, 2, 3} and area above this
_TRIANGLE_AREA = 7204


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(N: int, rounds: Optional[int] = None, seed: Optional[int] = None) -> PrimalityResult:
    """
    Miller-Rabin with the fixed witness set below 2^64, extra seeded random rounds above.

    Args:
        N: Integer to test (>= 0)
        rounds: Random rounds above 2^64 (defaults to Config.MR_ROUNDS)
        seed: Seed of the random bases (defaults to Config.SEED)
    """
    if N < 0:
        raise InvalidInput(f"primality is defined for N >= 0, got {N}")
    if N < 2:
        return PrimalityResult(n=N, prime=False)
    for p in _WITNESSES:
        if N % p == 0:
            return PrimalityResult(n=N, prime=N == p)

    d, s = N - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(N, a, d, s) for a in _WITNESSES):
        return PrimalityResult(n=N, prime=False)
    if N < _DETERMINISTIC_LIMIT:
        return PrimalityResult(n=N, prime=True)

    rounds = Config.MR_ROUNDS if rounds is None else rounds
    rng = random.Random(Config.SEED if seed is None else seed)
    for _ in range(rounds):
        if not _strong_probable_prime(N, rng.randrange(2, N - 1), d, s):
            return PrimalityResult(n=N, prime=False)
    return PrimalityResult(n=N, prime=True, probabilistic=True)


def is_prime(N: int) -> bool:
    return primality(N).prime


# ---------------------------------------------------------------------------
# Eigenvalue-partition criterion
# ---------------------------------------------------------------------------

def partition_from_weights(weights: WeightVector) -> WeightPartition:
    """Partition of R by the multiplicities of the weights that occur."""
    parts = [count for count in weights.mult.values() if count > 0]
    if not parts:
        raise InvalidInput("weight vector is empty")
    return WeightPartition.of(parts)


def minimal_rank_parameter(partition: WeightPartition) -> int:
    """Smallest r >= 1 with len(c) <= r+1 and c_2 <= r."""
    c = partition.c
    second = c[1] if len(c) >= 2 else 0
    return max(len(c) - 1, second, 1)


def theorem_a_check(partition: WeightPartition, r: int) -> CheckResult:
    """
    Eigenvalue-partition test.

    Large iff len(c) <= r+1, c_len = 1 < c_{len-1}, c_2 <= r and R > 72(r²+1)².
    Every condition is evaluated; ``failed_conditions`` lists all that fail.
    """
    c = partition.c
    R = partition.R
    bound = 72 * (r * r + 1) ** 2
    conditions = [
        ConditionOutcome(name="length", holds=len(c) <= r + 1, detail=f"len(c) = {len(c)}, r + 1 = {r + 1}"),
        ConditionOutcome(name="singleton", holds=len(c) >= 2 and c[-1] == 1 < c[-2],
                         detail=f"last parts {c[-2:]}"),
        ConditionOutcome(name="second_part", holds=len(c) < 2 or c[1] <= r,
                         detail=f"c_2 = {c[1] if len(c) >= 2 else None}, r = {r}"),
        ConditionOutcome(name="dimension_bound", holds=R > bound, detail=f"R = {R}, 72(r²+1)² = {bound}"),
    ]
    failed = [cond.name for cond in conditions if not cond.holds]
    return CheckResult(large=not failed, failed_conditions=failed, conditions=conditions)


def weights_monodromy(subject: str, weights: WeightVector) -> MonodromyReport:
    """Partition-test report for a computed weight vector, with the smallest admissible r."""
    partition = partition_from_weights(weights)
    r = minimal_rank_parameter(partition)
    result = theorem_a_check(partition, r)
    return MonodromyReport(subject=subject, R=partition.R, r=r, partition=partition, theorem_a=result,
                           large=result.large)


def curve_monodromy_check(f: MonomialSupport) -> MonodromyReport:
    """
    Partition test for a curve, plus the triangle-configuration flag.

    Raises:
        DegenerateSupport: when the support does not span a polygon
    """
    f = normalize(f)
    weights = curve_weights(f, "both").slopes
    report = weights_monodromy("curve", weights)
    inv = polygon_invariants(f)
    triangle = len(inv.vertices) == 3 and sorted(inv.side_gcds) == [1, 2, 3] and inv.area > _TRIANGLE_AREA
    notes = []
    if triangle:
        notes.append(f"triangle with side gcds (1, 2, 3) and area {inv.area} > {_TRIANGLE_AREA}")
    elif len(inv.vertices) != 3:
        notes.append(f"not a triangle ({len(inv.vertices)} vertices)")
    large = report.large or triangle
    return report.model_copy(update={"triangle_configuration": triangle, "large": large, "notes": notes})


def pyramid_monodromy_check(a: int, b: int, c: int) -> MonodromyReport:
    """
    Pyramid family: the literal two-inequality bound and the canonical partition bound.

    The literal form asks r >= 2 and 2abc > (72r²+1)²; the canonical one evaluates the
    partition test with R = 2abc and r = 2ab-2a-2b+2. ``large`` follows the canonical form.
    """
    if min(a, b, c) < 1:
        raise InvalidInput(f"pyramid parameters must be positive, got {(a, b, c)}")
    r = 2 * a * b - 2 * a - 2 * b + 2
    R = 2 * a * b * c
    literal_bound = (72 * r * r + 1) ** 2
    verbatim_conditions = [
        ConditionOutcome(name="rank", holds=r >= 2, detail=f"r = {r}"),
        ConditionOutcome(name="dimension_bound", holds=R > literal_bound, detail=f"2abc = {R}, (72r²+1)² = {literal_bound}"),
    ]
    failed = [cond.name for cond in verbatim_conditions if not cond.holds]
    verbatim = CheckResult(large=not failed, failed_conditions=failed, conditions=verbatim_conditions)

    partition = partition_from_weights(pyramid_weights(a, b, c))
    canonical = theorem_a_check(partition, r)
    notes = []
    if verbatim.large != canonical.large:
        notes.append(f"literal bound {'holds' if verbatim.large else 'fails'}, "
                     f"canonical bound {'holds' if canonical.large else 'fails'}")
    return MonodromyReport(subject=f"pyramid({a}, {b}, {c})", R=R, r=r, partition=partition,
                           theorem_a=canonical, verbatim=verbatim, large=canonical.large, notes=notes)


# ---------------------------------------------------------------------------
# Prime-dimension criterion
# ---------------------------------------------------------------------------

def gabber_check(
    R: int,
    weights: Optional[WeightVector] = None,
    top_multiplicity: Optional[int] = None,
    waive_g2: bool = False,
) -> GabberReport:
    """
    Prime-dimension test: R prime, R != 7 unless waived, multiset neither constant nor all-distinct.

    Either a full weight vector or only the top-weight multiplicity is accepted; a top
    multiplicity strictly between 1 and R already settles the multiset condition.
    """
    result = primality(R)
    reasons: List[str] = []
    if not result.prime:
        reasons.append(f"R = {R} is not prime")
    if R == 7 and not waive_g2:
        reasons.append("R = 7 leaves the G2 exception open")

    if weights is not None:
        if weights.total != R:
            raise InvalidInput(f"weights total {weights.total}, not R = {R}")
        classes = [count for count in weights.mult.values() if count > 0]
        if len(classes) == 1:
            reasons.append("all weights are equal")
        elif all(count == 1 for count in classes):
            reasons.append("all weights are distinct")
    elif top_multiplicity is not None:
        if not 1 < top_multiplicity < R:
            reasons.append(f"top multiplicity {top_multiplicity} does not separate the weight classes")
    else:
        raise InvalidInput("gabber_check needs weights or a top-weight multiplicity")

    verdict = GabberVerdict.INCONCLUSIVE if reasons else GabberVerdict.CONTAINS
    return GabberReport(R=R, verdict=verdict, primality=result, reasons=reasons, waive_g2=waive_g2)


def truncated_prism_monodromy(sides: Sequence[int], corner: Sequence[int], waive_g2: bool = False) -> GabberReport:
    """Prime-dimension certificate of a truncated prism from R = n!·Πb - Πa and its top weight."""
    if len(sides) != len(corner) or not all(0 < a < b for a, b in zip(corner, sides)):
        raise InvalidInput(f"corner {tuple(corner)} must satisfy 0 < a_i < b_i for sides {tuple(sides)}")
    R = factorial(len(sides)) * prod(sides) - prod(corner)
    return gabber_check(R, top_multiplicity=truncated_prism_top_weight(sides), waive_g2=waive_g2)


def find_prime_truncation(sides: Sequence[int], threads: Optional[int] = None) -> PrimeTruncation:
    """
    Smallest 1 <= b < a_1 with n!·Πa - b prime (corner legs (b, 1, ..., 1)).

    Candidates are tested in order; with threads they are tested in batches and the
    smallest prime of the first successful batch is returned.
    """
    sides = tuple(int(a) for a in sides)
    if len(sides) < 2 or any(a < 1 for a in sides):
        raise InvalidInput(f"need n >= 2 positive sides, got {sides}")
    threads = Config.THREADS if threads is None else threads
    base = factorial(len(sides)) * prod(sides)
    candidates = range(1, sides[0])

    if threads > 1:
        batch = threads * 4
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start in range(0, len(candidates), batch):
                chunk = candidates[start:start + batch]
                results = list(pool.map(lambda b: primality(base - b), chunk))
                for b, result in zip(chunk, results):
                    if result.prime:
                        return PrimeTruncation(sides=sides, found=True, b=b, N=base - b,
                                               probabilistic=result.probabilistic)
    else:
        for b in candidates:
            result = primality(base - b)
            if result.prime:
                return PrimeTruncation(sides=sides, found=True, b=b, N=base - b, probabilistic=result.probabilistic)
    logger.info(f"No prime truncation for sides {sides}")
    return PrimeTruncation(sides=sides, found=False)
