"""Fraction-free integer linear algebra used on the hull and volume hot paths.

sympy's Matrix gives the same answers (the tests use it as the oracle) but is far
too slow for the thousands of small determinants a facet enumeration needs.
"""

from itertools import combinations
from math import gcd
from typing import List, Sequence

Matrix = Sequence[Sequence[int]]


def det(matrix: Matrix) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    size = len(matrix)
    if size == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    previous = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // previous
        previous = pivot
    return sign * a[size - 1][size - 1]


def rank(rows: Matrix) -> int:
    """Rank over Q of an integer matrix."""
    a = [list(row) for row in rows if any(row)]
    if not a:
        return 0
    width = len(a[0])
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][col]
        for i in range(r + 1, len(a)):
            factor = a[i][col]
            if factor:
                a[i] = [x * pivot - y * factor for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def independent_rows(rows: Matrix) -> List[int]:
    """Indices of a greedy maximal independent subset of ``rows``."""
    chosen: List[int] = []
    current = 0
    for i, row in enumerate(rows):
        candidate = [rows[j] for j in chosen] + [row]
        r = rank(candidate)
        if r > current:
            chosen.append(i)
            current = r
    return chosen


def cofactor_normal(rows: Matrix) -> List[int]:
    """Generalized cross product of n-1 integer vectors in Z^n.

    Entry j is (-1)^j times the minor obtained by deleting column j, so the result is
    orthogonal to every row and vanishes iff the rows are dependent.
    """
    n = len(rows) + 1
    normal = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        value = det(minor)
        normal.append(-value if j % 2 else value)
    return normal


def primitive(vector: Sequence[int]) -> List[int]:
    """Divide out the gcd of the entries (zero vector is returned unchanged)."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g <= 1:
        return list(vector)
    return [x // g for x in vector]


def minors_gcd(rows: Matrix) -> int:
    """gcd of all maximal minors of a k x n integer matrix (k <= n).

    This is the lattice-relative k-volume (times k!) of the simplex spanned by the rows.
    """
    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        value = det([[row[c] for c in cols] for row in rows])
        g = gcd(g, value)
        if g == 1:
            break
    return abs(g)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return [x - y for x, y in zip(a, b)]
