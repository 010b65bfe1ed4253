"""Normal chains of polytopes and their validation records."""
from dataclasses import dataclass, field, fields
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from polymem.models.polytope import HPolytope, RationalPoint


class FacetOrder(str, Enum):
    ASCENDING = "ascending"
    PSI = "psi"


class ErosionClass(str, Enum):
    EMPTY = "empty"
    CHAIN_ELEMENT = "chain_element"
    LATTICE_EQUALS_B = "lattice_equals_b"
    STRICTLY_INTERIOR = "strictly_interior"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ChainStep:
    """Metadata of the inclusion terms[i] into terms[i+1]."""

    facet: Optional[int]
    tau: Fraction
    bracket: Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ValidationReport:
    facet_count: bool
    minkowski_identity: bool
    slab_coplanar: bool
    bracket: bool
    erosion_slab_identity: bool
    erosion_monotone: bool
    new_points: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures()

    def failures(self) -> List[str]:
        return [f.name for f in fields(self) if f.type is bool and not getattr(self, f.name)]


@dataclass(frozen=True)
class NormalChain:
    base: HPolytope
    center: RationalPoint
    terms: Tuple[HPolytope, ...]
    steps: Tuple[ChainStep, ...]
    epsilon0: Fraction
    order: Tuple[int, ...]
    descending: bool = False
    equidistant_step: Optional[Fraction] = None
    reports: Tuple[ValidationReport, ...] = field(default=(), compare=False)

    def bracket(self, index: int) -> Tuple[Fraction, Fraction]:
        """Homothety bracket (t1, t2) of terms[index]."""
        if index == 0:
            return Fraction(1), Fraction(1)
        return self.steps[index - 1].bracket

    def dilation_indices(self) -> List[int]:
        """Indices of terms that are exact dilations of the base."""
        return [i for i in range(len(self.terms)) if self.bracket(i)[0] == self.bracket(i)[1]]
