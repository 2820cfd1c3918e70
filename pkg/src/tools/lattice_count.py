"""Exact lattice-point enumeration in dilates of a polytope.

Points are enumerated over the bounding box of kP with exact integer half-space tests.
The first coordinate is sliced into chunks, optionally spread across a thread pool;
the total is a plain sum, so it does not depend on the number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
from math import prod
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config import Config
from src.errors import BudgetExceeded, DegenerateHull
from src.schemas import LatticePolytope, ResidueClass
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Points tested per numpy batch
_BATCH_CELLS = 1 << 20


def _axis_values(lo: int, hi: int, residue: int, modulus: int) -> np.ndarray:
    start = lo + ((residue - lo) % modulus)
    return np.arange(start, hi + 1, modulus, dtype=np.int64)


def _halfspaces(P: LatticePolytope) -> Tuple[np.ndarray, np.ndarray]:
    if not P.full_dimensional:
        raise DegenerateHull("lattice counting needs a full-dimensional polytope")
    A = np.array([f.normal for f in P.facets], dtype=np.int64)
    b = np.array([f.offset for f in P.facets], dtype=np.int64)
    return A, b


def _count_slice(first: np.ndarray, rest: List[np.ndarray], A: np.ndarray, bound: np.ndarray, strict: bool) -> int:
    if rest:
        grids = np.meshgrid(first, *rest, indexing="ij")
        points = np.stack([g.ravel() for g in grids], axis=1)
    else:
        points = first.reshape(-1, 1)
    values = points @ A.T
    inside = (values < bound) if strict else (values <= bound)
    return int(np.count_nonzero(inside.all(axis=1)))


def count_in_dilate(
    P: LatticePolytope,
    scale: int,
    strict: bool,
    residue: Optional[Sequence[int]] = None,
    modulus: int = 1,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> int:
    """
    Count lattice points of scale·P (interior when ``strict``), optionally restricted to x ≡ residue mod modulus.

    Args:
        P: Full-dimensional polytope
        scale: Dilation factor (>= 1)
        strict: Count the interior only
        residue: Residue vector, reduced mod ``modulus``
        modulus: Congruence modulus (1 means no restriction)
        budget: Maximal number of candidate cells (defaults to Config.ENUMERATION_BUDGET)
        threads: Worker threads (defaults to Config.THREADS)

    Returns:
        Exact count
    """
    if scale < 1:
        raise ValueError(f"dilation factor must be positive, got {scale}")
    budget = Config.ENUMERATION_BUDGET if budget is None else budget
    threads = Config.THREADS if threads is None else threads
    A, b = _halfspaces(P)
    n = P.dim
    residue = tuple(residue) if residue is not None else (0,) * n

    axes = []
    for i in range(n):
        lo = scale * min(v[i] for v in P.vertices)
        hi = scale * max(v[i] for v in P.vertices)
        axes.append(_axis_values(lo, hi, residue[i] % modulus, modulus))
    cells = prod(len(axis) for axis in axes)
    if cells > budget:
        raise BudgetExceeded(cells, budget, "lattice enumeration")
    if cells == 0:
        return 0

    bound = b * scale
    first, rest = axes[0], axes[1:]
    per_value = max(1, prod(len(axis) for axis in rest))
    chunk = max(1, _BATCH_CELLS // per_value)
    slices = [first[i:i + chunk] for i in range(0, len(first), chunk)]
    logger.debug(f"Enumerating {cells} cells of {scale}P in {len(slices)} slices")

    if threads > 1 and len(slices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = pool.map(lambda s: _count_slice(s, rest, A, bound, strict), slices)
            return int(sum(counts))
    return sum(_count_slice(s, rest, A, bound, strict) for s in slices)


def interior_points(P: LatticePolytope, k: int, budget: Optional[int] = None,
                    threads: Optional[int] = None) -> int:
    """Number of lattice points strictly inside kP."""
    return count_in_dilate(P, k, strict=True, budget=budget, threads=threads)


def lattice_point_count(P: LatticePolytope, k: int = 1, budget: Optional[int] = None,
                        threads: Optional[int] = None) -> int:
    """Number of lattice points of kP, boundary included."""
    return count_in_dilate(P, k, strict=False, budget=budget, threads=threads)


def boundary_points(P: LatticePolytope, budget: Optional[int] = None, threads: Optional[int] = None) -> int:
    """Number of lattice points on the boundary of P."""
    closed = count_in_dilate(P, 1, strict=False, budget=budget, threads=threads)
    return closed - count_in_dilate(P, 1, strict=True, budget=budget, threads=threads)


def interior_points_in_class(
    P: LatticePolytope,
    k: int,
    m: int,
    lam: ResidueClass,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> int:
    """Lattice points strictly inside (k·m)P congruent to lambda componentwise mod m."""
    if lam.m != m:
        lam = ResidueClass(m=m, lam=lam.lam)
    if len(lam.lam) != P.dim:
        raise ValueError(f"residue class has {len(lam.lam)} entries, polytope dimension is {P.dim}")
    return count_in_dilate(P, k * m, strict=True, residue=lam.lam, modulus=m, budget=budget, threads=threads)
