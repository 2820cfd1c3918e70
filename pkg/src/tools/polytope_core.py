"""Exact lattice-polytope geometry: hulls, face lattices and lattice-relative volumes."""

from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial, gcd, prod
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from src.config import Config
from src.errors import BudgetExceeded, DegenerateHull, InvalidInput, UnsupportedDimension
from src.schemas import Face, FaceVolumes, Facet, LatticePolytope, PolytopeFamily, Vector
from src.tools.exact_linalg import (
    cofactor_normal,
    dot,
    independent_rows,
    minors_gcd,
    primitive,
    rank,
    sub,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Hull construction
# ---------------------------------------------------------------------------

def _cross(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(points: Sequence[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Strictly convex hull of planar points, counter-clockwise from the lexicographic minimum."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_2d(points: List[Vector]) -> Tuple[List[int], List[Tuple[List[int], int, Tuple[int, int]]]]:
    hull = monotone_chain([(p[0], p[1]) for p in points])
    index = {p: i for i, p in enumerate(points)}
    vertex_ids = [index[p] for p in hull]
    facets = []
    k = len(hull)
    for i in range(k):
        p, q = hull[i], hull[(i + 1) % k]
        normal = primitive([q[1] - p[1], p[0] - q[0]])
        facets.append((normal, dot(normal, p), (vertex_ids[i], vertex_ids[(i + 1) % k])))
    return vertex_ids, facets


def _facets_bruteforce(points: List[Vector], d: int) -> List[Tuple[List[int], int]]:
    """Facet hyperplanes of a full-dimensional point set in Z^d by enumerating d-subsets."""
    candidates = comb(len(points), d)
    if candidates > Config.HULL_SUBSET_BUDGET:
        raise BudgetExceeded(candidates, Config.HULL_SUBSET_BUDGET, "facet enumeration")
    found: List[Tuple[List[int], int]] = []
    for subset in combinations(range(len(points)), d):
        if any(all(dot(a, points[i]) == b for i in subset) for a, b in found):
            continue
        base = points[subset[0]]
        normal = cofactor_normal([sub(points[i], base) for i in subset[1:]])
        if not any(normal):
            continue
        normal = primitive(normal)
        offset = dot(normal, base)
        values = [dot(normal, p) - offset for p in points]
        if all(v <= 0 for v in values):
            found.append((normal, offset))
        elif all(v >= 0 for v in values):
            found.append(([-x for x in normal], -offset))
    return found


def _face_lattice(facet_sets: List[FrozenSet[int]], vertex_count: int) -> List[FrozenSet[int]]:
    faces = {frozenset(range(vertex_count))}
    level = set(facet_sets)
    faces |= level
    while level:
        new = set()
        for a in level:
            for b in facet_sets:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        level = new
    return sorted(faces, key=lambda s: (len(s), sorted(s)))


def _injective_coordinates(diffs: List[List[int]], n: int, d: int) -> Vector:
    for cols in combinations(range(n), d):
        if rank([[row[c] for c in cols] for row in diffs]) == d:
            return cols
    raise DegenerateHull("no coordinate projection is injective on the affine hull")


def convex_hull(points: Iterable[Sequence[int]], full_dimensional: bool = True) -> LatticePolytope:
    """
    Exact convex hull with face lattice.

    Args:
        points: Integer points, all of the same length n
        full_dimensional: Raise DegenerateHull unless the affine hull is all of R^n

    Returns:
        LatticePolytope whose vertices are the extreme input points
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise InvalidInput("convex hull of an empty point set")
    n = len(pts[0])
    if n == 0 or any(len(p) != n for p in pts):
        raise InvalidInput("points must be non-empty vectors of one common length")
    if n > Config.MAX_HULL_DIMENSION:
        raise UnsupportedDimension(
            f"exact hull supports n <= {Config.MAX_HULL_DIMENSION}; use a family constructor for n = {n}")

    origin = pts[0]
    diffs = [sub(p, origin) for p in pts[1:]]
    d = rank(diffs)
    if full_dimensional and d < n:
        raise DegenerateHull(f"affine hull has dimension {d} < {n}")

    coords = tuple(range(n)) if d == n else _injective_coordinates(diffs, n, d)
    projected = [tuple(p[c] for c in coords) for p in pts]
    logger.debug(f"Convex hull: {len(pts)} points, ambient {n}, affine dimension {d}")

    if d == 0:
        vertex_ids = [0]
        raw_facets: List[Tuple[List[int], int, Tuple[int, ...]]] = []
    elif d == 1:
        lo = min(range(len(pts)), key=lambda i: projected[i][0])
        hi = max(range(len(pts)), key=lambda i: projected[i][0])
        vertex_ids = sorted({lo, hi})
        raw_facets = [([-1], -projected[lo][0], (lo,)), ([1], projected[hi][0], (hi,))]
    elif d == 2:
        vertex_ids, raw_facets = _facets_2d(projected)
    else:
        planes = _facets_bruteforce(projected, d)
        on_plane = [[i for i, p in enumerate(projected) if dot(a, p) == b] for a, b in planes]
        vertex_ids = []
        for i in range(len(pts)):
            normals = [planes[k][0] for k in range(len(planes)) if i in on_plane[k]]
            if len(normals) >= d and rank(normals) == d:
                vertex_ids.append(i)
        vertex_set = set(vertex_ids)
        raw_facets = [(a, b, tuple(i for i in on_plane[k] if i in vertex_set)) for k, (a, b) in enumerate(planes)]

    position = {pid: k for k, pid in enumerate(vertex_ids)}
    vertices = tuple(pts[i] for i in vertex_ids)
    facets = tuple(
        Facet(normal=tuple(a), offset=b, vertex_ids=tuple(sorted(position[i] for i in ids)))
        for a, b, ids in raw_facets
    )

    faces: Dict[int, List[Face]] = {k: [] for k in range(d + 1)}
    if d == 0:
        faces[0].append(Face(dim=0, vertex_ids=(0,), anchor=vertices[0]))
    else:
        for face_set in _face_lattice([frozenset(f.vertex_ids) for f in facets], len(vertices)):
            ids = tuple(sorted(face_set))
            anchor = vertices[ids[0]]
            rows = [sub(vertices[i], anchor) for i in ids[1:]]
            directions = tuple(tuple(rows[j]) for j in independent_rows(rows))
            faces[len(directions)].append(Face(dim=len(directions), vertex_ids=ids, anchor=anchor,
                                               directions=directions))

    return LatticePolytope(
        dim=n,
        affine_dim=d,
        vertices=vertices,
        facets=facets,
        faces={k: tuple(v) for k, v in faces.items()},
        projection=coords,
    )


def load_polytope(obj: Mapping[str, Any]) -> LatticePolytope:
    """Build a polytope from the JSON shapes {"dim", "vertices"} or {"family", ...}."""
    if "family" in obj:
        family = PolytopeFamily(**{k: v for k, v in obj.items() if k in ("family", "sides", "corner", "apex")})
        return build_family(family)
    if "vertices" not in obj:
        raise InvalidInput("polytope JSON needs 'vertices' or 'family'")
    P = convex_hull(obj["vertices"], full_dimensional=obj.get("full_dimensional", True))
    if "dim" in obj and obj["dim"] != P.dim:
        raise InvalidInput(f"declared dim {obj['dim']} but vertices have length {P.dim}")
    return P


# ---------------------------------------------------------------------------
# Volumes
# ---------------------------------------------------------------------------

def _faces_by_set(P: LatticePolytope) -> Dict[FrozenSet[int], int]:
    return {frozenset(face.vertex_ids): face.dim for faces in P.faces.values() for face in faces}


def _triangulate(face_set: FrozenSet[int], dim: int, lattice: Dict[FrozenSet[int], int],
                 cache: Dict[FrozenSet[int], List[Tuple[int, ...]]]) -> List[Tuple[int, ...]]:
    """Pulling triangulation: cone from the smallest vertex over the facets not containing it."""
    if face_set in cache:
        return cache[face_set]
    if dim == 0:
        result = [tuple(face_set)]
    else:
        apex = min(face_set)
        result = []
        for sub_set, sub_dim in lattice.items():
            if sub_dim == dim - 1 and sub_set < face_set and apex not in sub_set:
                result.extend(s + (apex,) for s in _triangulate(sub_set, dim - 1, lattice, cache))
    cache[face_set] = result
    return result


def _relative_normalized_volume(P: LatticePolytope, face: Face,
                                lattice: Dict[FrozenSet[int], int],
                                cache: Dict[FrozenSet[int], List[Tuple[int, ...]]]) -> int:
    total = 0
    for simplex in _triangulate(frozenset(face.vertex_ids), face.dim, lattice, cache):
        base = P.vertices[simplex[0]]
        total += minors_gcd([sub(P.vertices[i], base) for i in simplex[1:]])
    return total


def simplices(P: LatticePolytope) -> List[Tuple[int, ...]]:
    """Vertex-index simplices of a pulling triangulation of P."""
    top = P.faces[P.affine_dim][0]
    return _triangulate(frozenset(top.vertex_ids), top.dim, _faces_by_set(P), {})


def normalized_volume(P: LatticePolytope) -> int:
    """n! times the Euclidean volume, summed exactly over a simplicial decomposition."""
    if not P.full_dimensional:
        raise DegenerateHull(f"normalized volume needs a full-dimensional polytope (affine dim {P.affine_dim})")
    top = P.faces[P.dim][0]
    return _relative_normalized_volume(P, top, _faces_by_set(P), {})


def face_relative_volume(P: LatticePolytope, face: Face) -> Fraction:
    """Lattice-relative d-volume of a d-face (fundamental domain of its affine lattice has volume 1)."""
    return Fraction(_relative_normalized_volume(P, face, _faces_by_set(P), {}), factorial(face.dim))


def face_boundary_length(P: LatticePolytope, face: Face) -> int:
    """Sum of the lattice lengths of the edges of a face."""
    members = set(face.vertex_ids)
    total = 0
    for edge in P.faces.get(1, ()):
        if set(edge.vertex_ids) <= members:
            total += minors_gcd([sub(P.vertices[edge.vertex_ids[1]], P.vertices[edge.vertex_ids[0]])])
    return total


def face_volumes(P: LatticePolytope) -> FaceVolumes:
    """
    U_0..U_n together with V, E, F and W1.

    Args:
        P: Full-dimensional polytope with n <= 4

    Returns:
        FaceVolumes with exact rational U_d
    """
    if not P.full_dimensional:
        raise DegenerateHull("face volumes need a full-dimensional polytope")
    if P.dim > Config.MAX_FACE_VOLUME_DIMENSION:
        raise UnsupportedDimension(
            f"face volumes are computed for n <= {Config.MAX_FACE_VOLUME_DIMENSION}, got n = {P.dim}")
    lattice = _faces_by_set(P)
    cache: Dict[FrozenSet[int], List[Tuple[int, ...]]] = {}
    U = []
    for d in range(P.dim + 1):
        total = sum(_relative_normalized_volume(P, face, lattice, cache) for face in P.faces[d])
        U.append(Fraction(total, factorial(d)))
    W1 = sum(len(facet.vertex_ids) for facet in P.facets)
    return FaceVolumes(
        n=P.dim,
        U=tuple(U),
        V=len(P.vertices),
        E=len(P.faces.get(1, ())),
        F=len(P.faces.get(2, ())),
        W1=W1,
    )


def points_on_face(P: LatticePolytope, face: Face, points: Sequence[Sequence[int]]) -> List[int]:
    """Indices of the given points of P that lie on ``face`` (faces are exposed, so facet equalities decide)."""
    if face.dim == P.affine_dim:
        return list(range(len(points)))
    members = set(face.vertex_ids)
    containing = [f for f in P.facets if members <= set(f.vertex_ids)]
    result = []
    for i, point in enumerate(points):
        projected = [point[c] for c in P.projection]
        if all(dot(f.normal, projected) == f.offset for f in containing):
            result.append(i)
    return result


def max_face(P: LatticePolytope, axis: int) -> Face:
    """The face on which coordinate ``axis`` attains its maximum."""
    top = max(v[axis] for v in P.vertices)
    ids = tuple(i for i, v in enumerate(P.vertices) if v[axis] == top)
    for faces in P.faces.values():
        for face in faces:
            if face.vertex_ids == ids:
                return face
    raise DegenerateHull(f"maximal face along axis {axis} is missing from the face lattice")


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def family_normalized_volume(family: PolytopeFamily) -> int:
    """Closed-form normalized volume, valid in every dimension."""
    if family.family == "prism":
        return factorial(len(family.sides)) * prod(family.sides)
    if family.family == "pyramid":
        a, b, c = family.sides
        return 2 * a * b * c
    n = len(family.sides)
    return factorial(n) * prod(family.sides) - prod(family.corner or ())


def _attach(P: LatticePolytope, family: PolytopeFamily) -> LatticePolytope:
    return P.model_copy(update={"family": family})


def prism(sides: Sequence[int]) -> LatticePolytope:
    """The box prod [0, a_i]."""
    family = PolytopeFamily(family="prism", sides=tuple(sides))
    logger.debug(f"Building prism {family.sides}")
    return _attach(convex_hull(product(*[(0, a) for a in family.sides])), family)


def pyramid(a: int, b: int, c: int, d: int = 1, e: int = 1) -> LatticePolytope:
    """
    Support of x^c(1 + y^a + z^b + y^a z^b) + y^d z^e: rectangular base at x = c, apex (0, d, e).

    Raises:
        InvalidInput: unless 0 < d < a, 0 < e < b and every apex edge and side is lattice-primitive
    """
    if not (0 < d < a and 0 < e < b and c >= 1):
        raise InvalidInput(f"pyramid needs 0 < d < a, 0 < e < b, c >= 1; got a={a} b={b} c={c} d={d} e={e}")
    base = [(c, 0, 0), (c, a, 0), (c, 0, b), (c, a, b)]
    apex = (0, d, e)
    for corner in base:
        edge = sub(apex, corner)
        if minors_gcd([edge]) != 1:
            raise InvalidInput(f"apex edge {tuple(edge)} is not primitive")
    for offset in (d, a - d, e, b - e):
        if gcd(c, offset) != 1:
            raise InvalidInput(f"side faces are not lattice-primitive: gcd({c}, {offset}) != 1")
    family = PolytopeFamily(family="pyramid", sides=(a, b, c), apex=(d, e))
    return _attach(convex_hull(base + [apex]), family)


def truncated_prism(sides: Sequence[int], corner: Sequence[int]) -> LatticePolytope:
    """Support of (1+x_1^{b_1})...(1+x_n^{b_n}) - 1 + sum x_i^{a_i}."""
    family = PolytopeFamily(family="truncated_prism", sides=tuple(sides), corner=tuple(corner))
    n = len(family.sides)
    points = [p for p in product(*[(0, b) for b in family.sides]) if any(p)]
    for i, a in enumerate(family.corner or ()):
        points.append(tuple(a if j == i else 0 for j in range(n)))
    return _attach(convex_hull(points), family)


def build_family(family: PolytopeFamily) -> LatticePolytope:
    if family.family == "prism":
        return prism(family.sides)
    if family.family == "pyramid":
        d, e = family.apex or (1, 1)
        return pyramid(*family.sides, d=d, e=e)
    return truncated_prism(family.sides, family.corner or ())


def describe(P: LatticePolytope) -> str:
    if P.family is not None:
        f = P.family
        extra = f" corner {list(f.corner)}" if f.corner else ""
        return f"{f.family} {list(f.sides)}{extra}"
    return f"polytope with {len(P.vertices)} vertices in dimension {P.dim}"


def polytope_summary(P: LatticePolytope) -> Dict[str, Any]:
    """Counts used by `polytope info`."""
    summary: Dict[str, Any] = {
        "dim": P.dim,
        "affine_dim": P.affine_dim,
        "vertices": [list(v) for v in P.vertices],
        "f_vector": [len(P.faces.get(k, ())) for k in range(P.affine_dim + 1)],
    }
    if P.full_dimensional:
        summary["normalized_volume"] = normalized_volume(P)
        if P.dim <= Config.MAX_FACE_VOLUME_DIMENSION:
            summary["face_volumes"] = face_volumes(P)
    return summary
