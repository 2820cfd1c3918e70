"""Brute-force finite-field oracle: nondegeneracy, point counts and Weil windows.

Points of the torus over F_{q^d} are enumerated through discrete logarithms: a point is
a vector of exponents of a fixed primitive element, a monomial c·x^a evaluates to
g^(log c + a·e), and sums are taken digit-wise in the polynomial basis. Extension
fields use the lexicographically smallest rootless monic modulus (irreducible for d <= 3).
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import product
from math import comb, sqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint, isprime, primitive_root

from src.config import Config
from src.errors import BoundViolated, BudgetExceeded, InvalidInput
from src.schemas import FiniteFieldPoly, SignedWeightVector, Vector, WeilEntry, WeilReport
from src.tools.denef_loeser import signed_weights_for
from src.tools.polytope_core import convex_hull, points_on_face
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Torus points evaluated per numpy batch
_BATCH_POINTS = 1 << 18

Terms = List[Tuple[Vector, int]]


class FiniteField:
    """F_{q^d} with integer-encoded elements Σ c_i q^i, exp/log tables over a primitive element."""

    def __init__(self, q: int, degree: int = 1):
        if not isprime(q) or q >= Config.MAX_FIELD_CHARACTERISTIC:
            raise InvalidInput(f"q must be a prime below {Config.MAX_FIELD_CHARACTERISTIC}, got {q}")
        if not 1 <= degree <= Config.MAX_EXTENSION_DEGREE:
            raise InvalidInput(f"extension degree must be in 1..{Config.MAX_EXTENSION_DEGREE}, got {degree}")
        self.q = q
        self.degree = degree
        self.size = q ** degree
        self.modulus: Optional[Tuple[int, ...]] = self._find_modulus() if degree > 1 else None
        self.generator = self._find_generator()

        powers = [1]
        for _ in range(self.size - 2):
            powers.append(self.mul(powers[-1], self.generator))
        encoded = np.array(powers, dtype=np.int64)
        places = np.array([q ** i for i in range(degree)], dtype=np.int64)
        self.exp_digits = (encoded[:, None] // places) % q
        self.log = np.full(self.size, -1, dtype=np.int64)
        self.log[encoded] = np.arange(self.size - 1, dtype=np.int64)

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.size - 1

    def _find_modulus(self) -> Tuple[int, ...]:
        q, d = self.q, self.degree
        for low in product(range(q), repeat=d):
            if low[0] == 0:
                continue
            if all((pow(t, d, q) + sum(c * pow(t, i, q) for i, c in enumerate(low))) % q for t in range(q)):
                return low
        raise InvalidInput(f"no rootless monic polynomial of degree {d} over F_{q}")

    def _digits(self, a: int) -> List[int]:
        return [(a // self.q ** i) % self.q for i in range(self.degree)]

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(c * self.q ** i for i, c in enumerate(digits))

    def mul(self, a: int, b: int) -> int:
        q = self.q
        if self.modulus is None:
            return a * b % q
        d = self.degree
        x, y = self._digits(a), self._digits(b)
        product_ = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                product_[i + j] = (product_[i + j] + xi * yj) % q
        for k in range(2 * d - 2, d - 1, -1):
            top = product_[k]
            if top:
                product_[k] = 0
                for i, c in enumerate(self.modulus):
                    product_[k - d + i] = (product_[k - d + i] - top * c) % q
        return self._encode(product_[:d])

    def power(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        if self.modulus is None:
            return int(primitive_root(self.q))
        primes = list(factorint(self.order))
        for candidate in range(2, self.size):
            if all(self.power(candidate, self.order // p) != 1 for p in primes):
                return candidate
        raise InvalidInput(f"no primitive element found in F_{self.size}")

    def log_of(self, c: int) -> int:
        """Discrete log of a nonzero prime-field element."""
        c %= self.q
        if c == 0:
            raise InvalidInput("zero has no discrete logarithm")
        return int(self.log[c])


def _field_for(q: int, degree: int, n: int, budget: Optional[int]) -> FiniteField:
    budget = Config.ENUMERATION_BUDGET if budget is None else budget
    if (q ** degree - 1) ** n > budget:
        raise BudgetExceeded((q ** degree - 1) ** n, budget, f"torus enumeration over F_{q ** degree}")
    return FiniteField(q, degree)


def _log_chunks(order: int, n: int) -> Iterator[np.ndarray]:
    axis = np.arange(order, dtype=np.int64)
    per_value = order ** (n - 1)
    step = max(1, _BATCH_POINTS // per_value)
    for start in range(0, order, step):
        grids = np.meshgrid(axis[start:start + step], *([axis] * (n - 1)), indexing="ij")
        yield np.stack([g.ravel() for g in grids], axis=1)


def _zero_mask(field: FiniteField, terms: Terms, logs: np.ndarray) -> np.ndarray:
    """True where Σ c·x^a vanishes, for x given by exponent logs."""
    if not terms:
        return np.ones(len(logs), dtype=bool)
    acc = np.zeros((len(logs), field.degree), dtype=np.int64)
    for exp, coeff in terms:
        index = (field.log_of(coeff) + logs @ np.array(exp, dtype=np.int64)) % field.order
        acc += field.exp_digits[index]
    return ~np.any(acc % field.q, axis=1)


def _map_chunks(fn, field: FiniteField, n: int, threads: Optional[int]) -> List:
    threads = Config.THREADS if threads is None else threads
    chunks = _log_chunks(field.order, n)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, chunks))
    return [fn(chunk) for chunk in chunks]


def _terms(f: FiniteFieldPoly) -> Terms:
    return list(zip(f.support.exponents, f.coefficients))


def count_points(
    f: FiniteFieldPoly,
    extension_degree: int = 1,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> int:
    """
    Number of zeros of f in the torus (F_{q^d}^×)^n, by exhaustive enumeration.

    Raises:
        BudgetExceeded: (q^d - 1)^n above the budget
    """
    n = f.support.n
    field = _field_for(f.q, extension_degree, n, budget)
    terms = _terms(f)
    counts = _map_chunks(lambda logs: int(np.count_nonzero(_zero_mask(field, terms, logs))), field, n, threads)
    return int(sum(counts))


def is_nondegenerate(
    f: FiniteFieldPoly,
    degree: int = 1,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> bool:
    """
    True when no face polynomial f_τ (Δ itself included) has a torus point over F_{q^degree}
    where f_τ and every x_i·∂f_τ/∂x_i vanish together.

    f_τ itself is part of the system, so this is smoothness of each face hypersurface in the
    torus; on a proper face whose supporting value is nonzero mod q the Euler identity makes it
    equivalent to the partials-only system.
    """
    n = f.support.n
    field = _field_for(f.q, degree, n, budget)
    exponents = f.support.exponents
    coefficients = f.coefficients
    P = convex_hull(exponents, full_dimensional=False)
    q = f.q

    for k in sorted(P.faces):
        for face in P.faces[k]:
            on_face = points_on_face(P, face, exponents)
            if len(on_face) < 2:
                continue
            face_terms = [(exponents[i], coefficients[i]) for i in on_face]
            systems = [face_terms] + [
                [(e, (e[i] * c) % q) for e, c in face_terms if (e[i] * c) % q]
                for i in range(n)
            ]

            def singular(logs: np.ndarray) -> bool:
                mask = np.ones(len(logs), dtype=bool)
                for system in systems:
                    mask &= _zero_mask(field, system, logs)
                    if not mask.any():
                        return False
                return True

            if any(_map_chunks(singular, field, n, threads)):
                logger.debug(f"Face {face.vertex_ids} of dimension {face.dim} is singular over F_{field.size}")
                return False
    return True


def middle_weight_dims(signed: SignedWeightVector) -> Dict[int, int]:
    """Weight-graded dimensions of H^{n-1}_c: remove the Tate classes C(n, k+1) at weight 2k, k >= 1."""
    n = signed.n
    dims = dict(signed.mult)
    for k in range(1, n):
        dims[2 * k] -= (-1) ** k * comb(n, k + 1)
    return dims


def main_term(n: int, field_size: int) -> int:
    """Torus part of the count: Σ_{k=1}^{n-1} (-1)^(n-1+k) C(n,k+1)·Q^k."""
    return sum((-1) ** (n - 1 + k) * comb(n, k + 1) * field_size ** k for k in range(1, n))


def _within(x: int, A: int, B: int, Q: int) -> bool:
    """x <= A + B·√Q, exactly."""
    gap = x - A
    if B >= 0:
        return gap <= 0 or gap * gap <= B * B * Q
    return gap <= 0 and gap * gap >= B * B * Q


def weil_bound_check(
    f: FiniteFieldPoly,
    degrees: Sequence[int] = (1,),
    budget: Optional[int] = None,
    threads: Optional[int] = None,
) -> WeilReport:
    """
    Compare exhaustive counts with the purity window of the predicted signed weights.

    For each d: |N_d - main(Q)| <= Σ_w dims_w·Q^(w/2), Q = q^d, compared exactly.
    Curves (n = 2) use any q; surfaces (n = 3) are limited to q <= 7.

    Raises:
        BoundViolated: a count falls outside its window (never swallowed)
    """
    n = f.support.n
    if n not in (2, 3):
        raise InvalidInput(f"Weil checks cover curves and surfaces, got n = {n}")
    if n == 3 and f.q > 7:
        raise InvalidInput(f"surface checks are limited to q <= 7, got q = {f.q}")
    P = convex_hull(f.support.exponents)
    signed = signed_weights_for(P)
    dims = middle_weight_dims(signed)

    entries: List[WeilEntry] = []
    for d in degrees:
        Q = f.q ** d
        count = count_points(f, d, budget=budget, threads=threads)
        main = main_term(n, Q)
        deviation = count - main
        A = sum(dims[w] * Q ** (w // 2) for w in dims if w % 2 == 0)
        B = sum(dims[w] * Q ** (w // 2) for w in dims if w % 2 == 1)
        bound = A + B * sqrt(Q)
        holds = _within(abs(deviation), A, B, Q)
        entry = WeilEntry(degree=d, field_size=Q, count=count, main_term=main, deviation=deviation,
                          bound=bound, margin=bound - abs(deviation), holds=holds)
        if not holds:
            logger.error(f"Weil window violated over F_{Q}: |{count} - {main}| > {bound:.3f}")
            raise BoundViolated(
                f"count {count} over F_{Q} deviates by {deviation} from {main}, window is {bound:.3f}", degree=d)
        entries.append(entry)
    return WeilReport(q=f.q, n=n, signed_weights=signed, weight_dims=dims, entries=entries, holds=True)
