"""Lattice point sets and rational polytopes in inequality form."""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from polymem.exceptions.errors import (
    DimensionMismatchError,
    EmptySupportError,
    UnboundedError,
    WrongDimensionError,
    ZeroDirectionError,
)
from polymem.models.linalg import integer_kernel_basis, primitive, rational_rank, rational_solve

Point = Tuple[int, ...]
RationalPoint = Tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    return rational_rank([[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]])


@dataclass(frozen=True)
class PointSet:
    """Finite set of lattice points, kept sorted lexicographically."""

    dim: int
    points: Tuple[Point, ...] = ()

    def __post_init__(self):
        normalized = set()
        for point in self.points:
            if len(point) != self.dim:
                raise DimensionMismatchError(f"point {tuple(point)} does not live in dimension {self.dim}")
            normalized.add(tuple(int(c) for c in point))
        object.__setattr__(self, "points", tuple(sorted(normalized)))

    @cached_property
    def as_set(self) -> FrozenSet[Point]:
        return frozenset(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in self.as_set

    def is_empty(self) -> bool:
        return not self.points

    def issubset(self, other: "PointSet") -> bool:
        return self.as_set <= other.as_set

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.dim, self.as_set | other.as_set)

    def difference(self, other: "PointSet") -> "PointSet":
        return PointSet(self.dim, self.as_set - other.as_set)

    def translate(self, vector: Sequence[int]) -> "PointSet":
        return PointSet(self.dim, (tuple(a + b for a, b in zip(p, vector)) for p in self.points))

    def sum(self, other: "PointSet") -> "PointSet":
        """Minkowski sum of point sets."""
        return PointSet(self.dim, (tuple(a + b for a, b in zip(p, q)) for p in self.points for q in other.points))

    def to_array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(len(self.points), self.dim)


@dataclass(frozen=True)
class Facet:
    """Inequality normal . x >= offset with a primitive integer normal."""

    normal: Tuple[int, ...]
    offset: Fraction

    def value(self, point: Sequence):
        return dot(self.normal, point)

    def contains(self, point: Sequence) -> bool:
        return self.value(point) >= self.offset

    def is_tight(self, point: Sequence) -> bool:
        return self.value(point) == self.offset

    def is_strict(self, point: Sequence) -> bool:
        return self.value(point) > self.offset


def make_facet(normal: Sequence[int], offset) -> Facet:
    normal = tuple(int(a) for a in normal)
    g = math.gcd(*normal)
    if g == 0:
        raise ZeroDirectionError("facet normal is zero")
    return Facet(tuple(a // g for a in normal), Fraction(offset) / g)


def _null_direction(rows: Sequence[Sequence[int]], dim: int) -> Optional[Tuple[int, ...]]:
    basis = integer_kernel_basis(rows, dim)
    return basis[0] if len(basis) == 1 else None


def _is_bounded(dim: int, normals: Sequence[Tuple[int, ...]]) -> bool:
    if not normals or rational_rank(normals) < dim:
        return False
    # a pointed unbounded region has an extreme recession ray cut out by dim-1 of the normals
    if dim == 1:
        candidates = [(1,)]
    else:
        candidates = [d for combo in itertools.combinations(normals, dim - 1) if (d := _null_direction(combo, dim))]
    for direction in candidates:
        for sign in (1, -1):
            if all(sign * dot(a, direction) >= 0 for a in normals):
                return False
    return True


@dataclass(frozen=True)
class HPolytope:
    """Bounded rational polytope given by facet inequalities."""

    dim: int
    facets: Tuple[Facet, ...]
    lower_dimensional: bool = False

    def __post_init__(self):
        for facet in self.facets:
            if len(facet.normal) != self.dim:
                raise DimensionMismatchError(f"normal {facet.normal} does not live in dimension {self.dim}")
        if not _is_bounded(self.dim, [f.normal for f in self.facets]):
            raise UnboundedError("inequalities do not cut out a bounded region")

    @cached_property
    def vertices(self) -> Tuple[RationalPoint, ...]:
        found = set()
        for combo in itertools.combinations(self.facets, self.dim):
            solution = rational_solve([f.normal for f in combo], [f.offset for f in combo])
            if solution is not None and all(f.contains(solution) for f in self.facets):
                found.add(solution)
        return tuple(sorted(found))

    @cached_property
    def lattice_points(self) -> PointSet:
        vertices = self.vertices
        if not vertices:
            return PointSet(self.dim)
        low = [math.ceil(min(v[i] for v in vertices)) for i in range(self.dim)]
        high = [math.floor(max(v[i] for v in vertices)) for i in range(self.dim)]
        if any(lo > hi for lo, hi in zip(low, high)):
            return PointSet(self.dim)
        axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(low, high)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dim)
        normals = np.array([f.normal for f in self.facets], dtype=np.int64)
        bounds = np.array([math.ceil(f.offset) for f in self.facets], dtype=np.int64)
        inside = np.all(grid @ normals.T >= bounds, axis=1)
        return PointSet(self.dim, map(tuple, grid[inside].tolist()))

    @cached_property
    def interior_lattice_points(self) -> PointSet:
        return PointSet(self.dim, (q for q in self.lattice_points if all(f.is_strict(q) for f in self.facets)))

    def is_empty(self) -> bool:
        return not self.vertices

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for v in self.vertices for c in v)

    def contains_point(self, point: Sequence) -> bool:
        return all(f.contains(point) for f in self.facets)

    def support_min(self, direction: Sequence[int]):
        """Minimum of direction . x over the polytope."""
        return min(dot(direction, v) for v in self.vertices)

    def inequalities(self) -> List[Tuple[Tuple[int, ...], Fraction]]:
        return [(f.normal, f.offset) for f in self.facets]

    def edges(self) -> List[Tuple[RationalPoint, RationalPoint]]:
        """Vertex pairs spanning a one-dimensional face."""
        tight = {v: [f.normal for f in self.facets if f.is_tight(v)] for v in self.vertices}
        result = []
        for u, v in itertools.combinations(self.vertices, 2):
            common = [a for a in tight[u] if a in tight[v]]
            if common and rational_rank(common) == self.dim - 1:
                result.append((u, v))
        return result

    def with_vertices(self, vertices: Iterable[RationalPoint]) -> "HPolytope":
        """Seed the vertex cache when the vertices are already known."""
        self.__dict__["vertices"] = tuple(sorted(vertices))
        return self


def build_polytope(dim: int, inequalities: Iterable[Tuple[Sequence[int], object]], prune: bool = True) -> Optional[HPolytope]:
    """
    Normalize inequalities into a polytope.

    Normals are made primitive and duplicates keep the tighter offset. With
    prune set, redundant inequalities are dropped and lower-dimensional
    results are flagged.

    Returns:
        The polytope, or None when the inequalities are infeasible
    """
    merged: Dict[Tuple[int, ...], Fraction] = {}
    for normal, offset in inequalities:
        facet = make_facet(normal, offset)
        if facet.normal not in merged or facet.offset > merged[facet.normal]:
            merged[facet.normal] = facet.offset
    raw = HPolytope(dim, tuple(Facet(n, b) for n, b in sorted(merged.items())))
    vertices = raw.vertices
    if not vertices:
        return None
    lower = affine_dimension(vertices) < dim
    if not prune:
        return HPolytope(dim, raw.facets, lower).with_vertices(vertices)
    if lower:
        kept = [f for f in raw.facets if any(f.is_tight(v) for v in vertices)]
    else:
        kept = [f for f in raw.facets if affine_dimension([v for v in vertices if f.is_tight(v)]) == dim - 1]
    return HPolytope(dim, tuple(kept), lower).with_vertices(vertices)


def canonicalize(polytope: HPolytope) -> Optional[HPolytope]:
    return build_polytope(polytope.dim, polytope.inequalities(), prune=True)


def same_polytope(left: Optional[HPolytope], right: Optional[HPolytope]) -> bool:
    """Set equality, decided on the exact vertex sets."""
    if left is None or right is None:
        return left is None and right is None
    return left.dim == right.dim and left.vertices == right.vertices


def polytope_contains(outer: HPolytope, inner: HPolytope) -> bool:
    """True when inner is a subset of outer."""
    return all(outer.contains_point(v) for v in inner.vertices)


def box(bounds: Sequence[Tuple[int, int]]) -> HPolytope:
    """Axis-parallel box from per-coordinate (low, high) bounds."""
    dim = len(bounds)
    inequalities = []
    for i, (low, high) in enumerate(bounds):
        unit = [0] * dim
        unit[i] = 1
        inequalities.append((tuple(unit), low))
        inequalities.append((tuple(-u for u in unit), -high))
    return build_polytope(dim, inequalities)


def unit_simplex(dim: int, scale: int = 1) -> HPolytope:
    inequalities = [(tuple(int(i == j) for j in range(dim)), 0) for i in range(dim)]
    inequalities.append((tuple([-1] * dim), -scale))
    return build_polytope(dim, inequalities)


def _hull_2d(points: Sequence[Tuple[Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    """Counter-clockwise hull vertices by the monotone chain."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _cross(u: Sequence, v: Sequence) -> Tuple:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _supporting_normals(points: Sequence[RationalPoint], dim: int) -> List[Tuple[int, ...]]:
    difference = [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]]
    span_rank = rational_rank(difference) if difference else 0
    normals = []
    # normals of the affine hull, both orientations
    complement = integer_kernel_basis([d for d in difference if any(d)], dim) if span_rank else [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)
    ]
    for w in complement:
        normals.extend([w, tuple(-x for x in w)])
    if span_rank == 1:
        direction = primitive(next(d for d in difference if any(d)))
        normals.extend([direction, tuple(-x for x in direction)])
    elif span_rank == 2 and dim == 2:
        ring = _hull_2d(points)
        for u, v in zip(ring, ring[1:] + ring[:1]):
            normals.append(primitive((-(v[1] - u[1]), v[0] - u[0])))
    elif span_rank == 2 and dim == 3:
        plane = complement[0]
        for p, q in itertools.combinations(points, 2):
            candidate = _cross(plane, tuple(a - b for a, b in zip(q, p)))
            if not any(candidate):
                continue
            values = [dot(candidate, r) for r in points]
            base = dot(candidate, p)
            if all(x >= base for x in values):
                normals.append(primitive(candidate))
            elif all(x <= base for x in values):
                normals.append(primitive(tuple(-x for x in candidate)))
    elif span_rank == 3:
        floats = np.array([[float(c) for c in p] for p in points])
        try:
            hull = ConvexHull(floats)
        except QhullError as exc:
            raise WrongDimensionError(f"hull computation failed: {exc}") from exc
        for simplex in hull.simplices:
            p, q, r = (points[i] for i in simplex)
            candidate = _cross(tuple(a - b for a, b in zip(q, p)), tuple(a - b for a, b in zip(r, p)))
            if not any(candidate):
                continue
            normal = primitive(candidate)
            # orient inward
            if any(dot(normal, s) < dot(normal, p) for s in points):
                normal = tuple(-x for x in normal)
            normals.append(normal)
    return normals


def hull_from_points(dim: int, points: Iterable[Sequence]) -> HPolytope:
    """Convex hull of rational points in inequality form (dimensions 1 to 3)."""
    if not 1 <= dim <= 3:
        raise WrongDimensionError(f"hull_from_points supports dimensions 1 to 3, got {dim}")
    unique = sorted({tuple(Fraction(c) for c in p) for p in points})
    if not unique:
        raise EmptySupportError("cannot take the hull of no points")
    for p in unique:
        if len(p) != dim:
            raise DimensionMismatchError(f"point {p} does not live in dimension {dim}")
    inequalities = []
    for normal in set(_supporting_normals(unique, dim)):
        inequalities.append((normal, min(dot(normal, p) for p in unique)))
    return build_polytope(dim, inequalities)


def newton_polytope(support: PointSet) -> HPolytope:
    return hull_from_points(support.dim, support.points)
