"""Sparse Laurent polynomials over F_p."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from polymem.exceptions.errors import (
    DimensionMismatchError,
    EmptySupportError,
    FieldMismatchError,
    ZeroCoordinateError,
)
from polymem.models.polytope import Point, PointSet
from polymem.utils.seeding import rng_for


@dataclass(frozen=True, eq=False)
class SparsePoly:
    """Laurent polynomial as exponent -> nonzero residue mod prime."""

    dim: int
    prime: int
    terms: Mapping[Point, int] = field(default_factory=dict)

    def __post_init__(self):
        normalized: Dict[Point, int] = {}
        for exponent, coeff in self.terms.items():
            if len(exponent) != self.dim:
                raise DimensionMismatchError(f"exponent {tuple(exponent)} does not live in dimension {self.dim}")
            key = tuple(int(e) for e in exponent)
            value = (normalized.get(key, 0) + int(coeff)) % self.prime
            normalized[key] = value
        object.__setattr__(self, "terms", {e: c for e, c in sorted(normalized.items()) if c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.dim, self.prime, self.terms) == (other.dim, other.prime, other.terms)

    def _check(self, other: "SparsePoly") -> None:
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimensions {self.dim} and {other.dim} differ")
        if other.prime != self.prime:
            raise FieldMismatchError(f"primes {self.prime} and {other.prime} differ")

    @property
    def support(self) -> PointSet:
        return PointSet(self.dim, self.terms.keys())

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent: Sequence[int]) -> int:
        return self.terms.get(tuple(exponent), 0)

    def restrict(self, points: PointSet) -> "SparsePoly":
        """Keep only the terms whose exponents lie in points."""
        return SparsePoly(self.dim, self.prime, {e: c for e, c in self.terms.items() if e in points})

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return SparsePoly(self.dim, self.prime, merged)

    def __neg__(self) -> "SparsePoly":
        return self.scale(-1)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        product: Dict[Point, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                product[key] = (product.get(key, 0) + c1 * c2) % self.prime
        return SparsePoly(self.dim, self.prime, product)

    def scale(self, factor: int) -> "SparsePoly":
        return SparsePoly(self.dim, self.prime, {e: c * factor for e, c in self.terms.items()})

    def shift(self, vector: Sequence[int]) -> "SparsePoly":
        """Multiply by the monomial x^vector."""
        return SparsePoly(self.dim, self.prime, {tuple(a + b for a, b in zip(e, vector)): c for e, c in self.terms.items()})

    def partial(self, variable: int) -> "SparsePoly":
        """Formal derivative with respect to one variable."""
        derivative = {}
        for e, c in self.terms.items():
            if e[variable]:
                lowered = list(e)
                lowered[variable] -= 1
                derivative[tuple(lowered)] = c * e[variable]
        return SparsePoly(self.dim, self.prime, derivative)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.dim:
            raise DimensionMismatchError(f"point of length {len(point)} for dimension {self.dim}")
        residues = [int(x) % self.prime for x in point]
        if 0 in residues:
            raise ZeroCoordinateError(f"point {tuple(point)} is not on the torus")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, a in zip(residues, e):
                term = term * pow(x, a, self.prime) % self.prime
            total += term
        return total % self.prime

    def sorted_terms(self) -> List[Tuple[Point, int]]:
        return list(self.terms.items())


def from_integers(dim: int, prime: int, terms: Iterable[Tuple[Sequence[int], int]]) -> SparsePoly:
    """Reduce an integer polynomial modulo prime."""
    accumulated: Dict[Point, int] = {}
    for exponent, coeff in terms:
        key = tuple(int(e) for e in exponent)
        accumulated[key] = accumulated.get(key, 0) + int(coeff)
    return SparsePoly(dim, prime, accumulated)


def random_generic(points: PointSet, seed: int, prime: int) -> SparsePoly:
    """Polynomial with uniformly random nonzero coefficients on exactly the given support."""
    if points.is_empty():
        raise EmptySupportError("a generic polynomial needs a nonempty support")
    coefficients = rng_for(seed).integers(1, prime, size=len(points))
    return SparsePoly(points.dim, prime, {e: int(c) for e, c in zip(points, coefficients)})


def from_vector(dim: int, prime: int, monomials: Sequence[Point], values) -> SparsePoly:
    """Polynomial whose coefficient at monomials[j] is values[j]."""
    return SparsePoly(dim, prime, {m: int(v) for m, v in zip(monomials, values)})
