"""Operations on polytopes: dilation, erosion, Minkowski sums, faces, areas."""
import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple, Union

from polymem.exceptions.errors import (
    DimensionMismatchError,
    EmptySupportError,
    InputError,
    InvalidFacetError,
    NonPositiveFactorError,
    OriginNotInteriorError,
    WrongDimensionError,
    ZeroDirectionError,
)
from polymem.models.linalg import primitive, rational_rank
from polymem.models.polytope import (
    Facet,
    HPolytope,
    PointSet,
    RationalPoint,
    _cross,
    _hull_2d,
    build_polytope,
    dot,
    hull_from_points,
)

logger = logging.getLogger(__name__)

Body = Union[HPolytope, PointSet]


def _check_dims(*items) -> None:
    dims = {item.dim for item in items if item is not None}
    if len(dims) > 1:
        raise DimensionMismatchError(f"operands live in dimensions {sorted(dims)}")


def _origin(dim: int) -> RationalPoint:
    return (Fraction(0),) * dim


def dilate(polytope: HPolytope, factor, center: Optional[Sequence] = None) -> HPolytope:
    """Homothety with the given factor about center (default the origin)."""
    factor = Fraction(factor)
    if factor <= 0:
        raise NonPositiveFactorError(f"dilation factor {factor} is not positive")
    center = tuple(Fraction(c) for c in center) if center is not None else _origin(polytope.dim)
    facets = tuple(
        Facet(f.normal, dot(f.normal, center) + factor * (f.offset - dot(f.normal, center))) for f in polytope.facets
    )
    vertices = [tuple(c + factor * (x - c) for x, c in zip(v, center)) for v in polytope.vertices]
    return HPolytope(polytope.dim, facets, polytope.lower_dimensional).with_vertices(vertices)


def translate(polytope: HPolytope, vector: Sequence) -> HPolytope:
    vector = tuple(Fraction(x) for x in vector)
    facets = tuple(Facet(f.normal, f.offset + dot(f.normal, vector)) for f in polytope.facets)
    vertices = [tuple(x + u for x, u in zip(v, vector)) for v in polytope.vertices]
    return HPolytope(polytope.dim, facets, polytope.lower_dimensional).with_vertices(vertices)


def shift_facet(polytope: HPolytope, index: int, tau, center: Optional[Sequence] = None) -> HPolytope:
    """
    Move one facet outward, scaling its offset relative to center by (1 + tau).

    All inequalities are kept, even when the move makes some of them redundant.
    """
    tau = Fraction(tau)
    if not 0 <= index < len(polytope.facets):
        raise InvalidFacetError(f"facet {index} of {len(polytope.facets)}")
    if tau < 0:
        raise NonPositiveFactorError(f"shift {tau} is negative")
    center = tuple(Fraction(c) for c in center) if center is not None else _origin(polytope.dim)
    facets = list(polytope.facets)
    target = facets[index]
    anchor = dot(target.normal, center)
    facets[index] = Facet(target.normal, anchor + (1 + tau) * (target.offset - anchor))
    return HPolytope(polytope.dim, tuple(facets))


def erode(polytope: HPolytope, body: HPolytope) -> Optional[HPolytope]:
    """Minkowski difference {x : x + body within polytope}; None when empty."""
    _check_dims(polytope, body)
    return build_polytope(polytope.dim, [(f.normal, f.offset - body.support_min(f.normal)) for f in polytope.facets])


def erode_iter(polytope: HPolytope, body: HPolytope, times: int) -> Optional[HPolytope]:
    if times < 1:
        raise InputError("erosion count must be at least one")
    current: Optional[HPolytope] = polytope
    for _ in range(times):
        current = erode(current, body)
        if current is None:
            return None
    return current


def _edge_directions(polytope: HPolytope) -> Set[Tuple[int, ...]]:
    return {primitive([a - b for a, b in zip(v, u)]) for u, v in polytope.edges()}


def _face_vertices(polytope: HPolytope, direction: Sequence[int]) -> List[RationalPoint]:
    low = polytope.support_min(direction)
    return [v for v in polytope.vertices if dot(direction, v) == low]


def _differences(points: Sequence[RationalPoint]) -> List[Tuple]:
    return [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]]


def minkowski_sum(left: HPolytope, right: HPolytope) -> HPolytope:
    """Minkowski sum in inequality form."""
    _check_dims(left, right)
    dim = left.dim
    if dim > 3:
        raise WrongDimensionError(f"Minkowski sums are supported up to dimension 3, got {dim}")
    full_rank = rational_rank(_differences(left.vertices) + _differences(right.vertices))
    if full_rank < dim:
        points = {tuple(a + b for a, b in zip(u, v)) for u in left.vertices for v in right.vertices}
        return hull_from_points(dim, points)
    candidates: Set[Tuple[int, ...]] = {f.normal for f in left.facets} | {f.normal for f in right.facets}
    directions = _edge_directions(left) | _edge_directions(right)
    if dim == 1:
        candidates |= {(1,), (-1,)}
    elif dim == 2:
        for d in directions:
            candidates |= {(-d[1], d[0]), (d[1], -d[0])}
    else:
        for d, e in itertools.combinations(directions, 2):
            normal = _cross(d, e)
            if any(normal):
                normal = primitive(normal)
                candidates |= {normal, tuple(-x for x in normal)}
    inequalities = []
    for normal in candidates:
        face_left = _face_vertices(left, normal)
        face_right = _face_vertices(right, normal)
        # keep the direction only when the summed faces span a facet
        if rational_rank(_differences(face_left) + _differences(face_right)) == dim - 1:
            inequalities.append((normal, left.support_min(normal) + right.support_min(normal)))
    return build_polytope(dim, inequalities)


def face(body: Body, direction: Sequence[int]) -> PointSet:
    """Lattice points of body minimizing direction . x."""
    if not any(direction):
        raise ZeroDirectionError("face direction is zero")
    points = body.lattice_points if isinstance(body, HPolytope) else body
    if len(direction) != points.dim:
        raise DimensionMismatchError(f"direction of length {len(direction)} in dimension {points.dim}")
    if points.is_empty():
        return PointSet(points.dim)
    low = min(dot(direction, p) for p in points)
    return PointSet(points.dim, (p for p in points if dot(direction, p) == low))


def point_erosion(points: PointSet, body: PointSet) -> PointSet:
    """All integer x with x + body contained in points."""
    _check_dims(points, body)
    if body.is_empty():
        raise EmptySupportError("cannot erode by an empty set")
    anchor = body.points[0]
    result = []
    for p in points:
        x = tuple(a - b for a, b in zip(p, anchor))
        if all(tuple(a + b for a, b in zip(x, q)) in points for q in body):
            result.append(x)
    return PointSet(points.dim, result)


def point_erosion_iter(points: PointSet, body: PointSet, times: int) -> PointSet:
    current = points
    for _ in range(times):
        if current.is_empty():
            break
        current = point_erosion(current, body)
    return current


def area(polytope: HPolytope) -> Fraction:
    if polytope.dim != 2:
        raise WrongDimensionError(f"area needs dimension 2, got {polytope.dim}")
    if polytope.lower_dimensional:
        return Fraction(0)
    ring = _hull_2d(polytope.vertices)
    twice = sum(u[0] * v[1] - v[0] * u[1] for u, v in zip(ring, ring[1:] + ring[:1]))
    return Fraction(twice) / 2


def bernstein_number_2d(left: HPolytope, right: HPolytope) -> Union[int, Fraction]:
    """Mixed area area(L+R) - area(L) - area(R); a root count for lattice polygons."""
    if left.dim != 2 or right.dim != 2:
        raise WrongDimensionError("Bernstein numbers are computed for planar polygons")
    mixed = area(minkowski_sum(left, right)) - area(left) - area(right)
    return int(mixed) if mixed.denominator == 1 else mixed


def _points_of(body: Body) -> Sequence:
    return body.points if isinstance(body, PointSet) else body.vertices


def min_enclosing_factor(target: Body, body: HPolytope) -> Fraction:
    """Least s >= 0 with target inside s * body; body must contain the origin in its interior."""
    _check_dims(target, body)
    if any(f.offset >= 0 for f in body.facets):
        raise OriginNotInteriorError("origin must lie strictly inside the enclosing body")
    values = [Fraction(dot(f.normal, a)) / f.offset for f in body.facets for a in _points_of(target)]
    return max([Fraction(0)] + values)


def anchored_enclosing_factor(target: Body, body: HPolytope) -> Optional[Fraction]:
    """
    Least s >= 0 with target inside s * body when the origin may sit on the boundary.

    Returns:
        The factor, or None when no dilation about the origin contains target
    """
    _check_dims(target, body)
    factor = Fraction(0)
    for f in body.facets:
        for a in _points_of(target):
            value = dot(f.normal, a)
            if f.offset == 0:
                if value < 0:
                    return None
            elif f.offset > 0:
                return None
            else:
                factor = max(factor, Fraction(value) / f.offset)
    return factor


def homothety_ratio(body: HPolytope, point: Sequence, center: Optional[Sequence] = None) -> Fraction:
    """Least s >= 0 with point inside the dilation of body by s about center."""
    center = tuple(Fraction(c) for c in center) if center is not None else _origin(body.dim)
    ratio = Fraction(0)
    for f in body.facets:
        anchor = dot(f.normal, center)
        relative = f.offset - anchor
        if relative >= 0:
            raise OriginNotInteriorError(f"center {center} is not interior")
        ratio = max(ratio, Fraction(dot(f.normal, point) - anchor) / relative)
    return ratio


def is_segment(body: HPolytope) -> bool:
    return rational_rank(_differences(body.vertices)) == 1 if body.vertices else False
