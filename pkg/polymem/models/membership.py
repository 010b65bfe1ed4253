"""Membership problems, their realizations and result records."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from polymem.exceptions.errors import DimensionMismatchError, EmptySupportError, InputError
from polymem.models.linalg import ExactMatrix
from polymem.models.polytope import Point, PointSet, RationalPoint
from polymem.models.sparse_poly import SparsePoly, from_integers, random_generic
from polymem.utils.seeding import derive_seed

IntegerTerms = Tuple[Tuple[Point, int], ...]


@dataclass(frozen=True)
class MembershipProblem:
    """A target support, multiplier supports and concrete generators over one prime."""

    target: PointSet
    supports: Tuple[PointSet, ...]
    generators: Tuple[SparsePoly, ...]
    prime: int
    seed: Optional[int] = None

    def __post_init__(self):
        if len(self.supports) != len(self.generators):
            raise DimensionMismatchError(f"{len(self.supports)} supports for {len(self.generators)} generators")
        for item in (*self.supports, *self.generators):
            if item.dim != self.target.dim:
                raise DimensionMismatchError("supports and generators must share the target's dimension")

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return self.target.dim


@dataclass(frozen=True)
class SystemSpec:
    """
    A membership question before the generators are fixed.

    Generators are either explicit integer polynomials or sampled with
    random nonzero coefficients on their bodies.
    """

    target: PointSet
    supports: Tuple[PointSet, ...]
    bodies: Tuple[PointSet, ...] = ()
    generators: Optional[Tuple[IntegerTerms, ...]] = None
    translation: Tuple[int, ...] = ()
    within_hypotheses: bool = True

    def __post_init__(self):
        if self.generators is None:
            if len(self.bodies) != len(self.supports):
                raise DimensionMismatchError(f"{len(self.bodies)} bodies for {len(self.supports)} supports")
            for body in self.bodies:
                if body.is_empty():
                    raise EmptySupportError("generator support is empty")
        elif len(self.generators) != len(self.supports):
            raise DimensionMismatchError(f"{len(self.generators)} generators for {len(self.supports)} supports")
        if not self.supports:
            raise InputError("at least one generator is required")
        if not self.translation:
            object.__setattr__(self, "translation", (0,) * self.target.dim)

    @classmethod
    def uniform(cls, target: PointSet, support: PointSet, body: PointSet, k: int, **kwargs) -> "SystemSpec":
        return cls(target, (support,) * k, (body,) * k, **kwargs)

    @property
    def k(self) -> int:
        return len(self.supports)

    @property
    def explicit(self) -> bool:
        return self.generators is not None

    def realize(self, prime: int, seed: int) -> MembershipProblem:
        dim = self.target.dim
        if self.generators is not None:
            generators = tuple(from_integers(dim, prime, terms) for terms in self.generators)
        else:
            generators = tuple(random_generic(body, derive_seed(seed, i), prime) for i, body in enumerate(self.bodies))
        return MembershipProblem(self.target, self.supports, generators, prime, seed)


@dataclass
class ConstraintSystem:
    """Product matrix of a problem with its row and column labels."""

    matrix: ExactMatrix
    rows: List[Point]
    columns: List[Tuple[int, Point]]


@dataclass
class MembershipReport:
    dim_w: int
    dim_ker: int
    dim_v: int
    basis: List[SparsePoly]
    omega_shape: Tuple[int, int]
    primes: List[int] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    translation: Tuple[int, ...] = ()
    within_hypotheses: bool = True

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.dim_w, self.dim_ker, self.dim_v


@dataclass
class Decomposition:
    member: bool
    multipliers: List[SparsePoly] = field(default_factory=list)
    kernel: List[List[SparsePoly]] = field(default_factory=list)
    prime: Optional[int] = None
    seed: Optional[int] = None


@dataclass
class Foundation:
    """Multiplier supports from the dilation factor of the target."""

    factor: Fraction
    enclosing: Fraction
    supports: Tuple[PointSet, ...]
    translation: Tuple[int, ...]
    center: Point
    within_hypotheses: bool = True


@dataclass
class StabilizationEntry:
    index: int
    bracket: Tuple[Fraction, Fraction]
    lattice_count: int
    dim_w: int
    dim_ker: int
    dim_v: int


@dataclass
class StepVariation:
    index: int
    facet: Optional[int]
    delta_dim_w: int
    delta_dim_ker: int
    bound: int
    delta_eroded: int


@dataclass
class StabilizationReport:
    start: Optional[int]
    entries: List[StabilizationEntry] = field(default_factory=list)
    variations: List[StepVariation] = field(default_factory=list)
    constant: bool = False
    falsifications: List[int] = field(default_factory=list)
    changes: List[int] = field(default_factory=list)


@dataclass
class KoszulReport:
    k: int
    eroded_counts: List[int]
    corrected: int
    printed: int
    oracle: int
    confirmed_reading: str


def vector_to_polys(vector: np.ndarray, columns: Sequence[Tuple[int, Point]], k: int, dim: int, prime: int) -> List[SparsePoly]:
    """Split a solution vector into one multiplier per generator."""
    parts: List[dict] = [{} for _ in range(k)]
    for value, (i, monomial) in zip(vector, columns):
        if value:
            parts[i][monomial] = int(value)
    return [SparsePoly(dim, prime, part) for part in parts]


def center_of(points: Sequence[RationalPoint]) -> RationalPoint:
    """Vertex centroid."""
    count = len(points)
    return tuple(sum((p[i] for p in points), Fraction(0)) / count for i in range(len(points[0])))
