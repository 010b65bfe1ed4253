import logging
from math import comb
from typing import List, Optional, Sequence, Union

from polymem.exceptions.errors import HypothesisError
from polymem.models.membership import KoszulReport, SystemSpec
from polymem.models.polytope import HPolytope, PointSet
from polymem.services.geometry import erode, point_erosion
from polymem.services.membership_service import MembershipService

logger = logging.getLogger(__name__)

Support = Union[HPolytope, PointSet]


def eroded_counts(support: Support, body: HPolytope, k: int) -> List[int]:
    """|Z(C eroded j times by B)| for j = 1 .. k-1."""
    counts = []
    if isinstance(support, HPolytope):
        current: Optional[HPolytope] = support
        for _ in range(k - 1):
            current = erode(current, body) if current is not None else None
            counts.append(len(current.lattice_points) if current is not None else 0)
    else:
        points = support
        body_points = body.lattice_points
        for _ in range(k - 1):
            points = point_erosion(points, body_points) if not points.is_empty() else points
            counts.append(len(points))
    return counts


def corrected_formula(counts: Sequence[int], k: int) -> int:
    """sum_{j=1}^{k-1} (-1)^(j+1) C(k, j+1) |Z(C eroded j times)|."""
    return sum((-1) ** (j + 1) * comb(k, j + 1) * counts[j - 1] for j in range(1, k))


def printed_formula(counts: Sequence[int], k: int) -> int:
    """sum_{j=1}^{k-2} (-1)^j C(k, k-j-1) |Z(C eroded j times)|, the other published reading."""
    return sum((-1) ** j * comb(k, k - j - 1) * counts[j - 1] for j in range(1, k - 1))


def koszul_kernel_dim(support: Support, body: HPolytope, k: int) -> int:
    """Predicted syzygy dimension for k generic polynomials on Z(B) with multipliers on Z(C)."""
    if k < 2:
        raise HypothesisError("the syzygy formula needs at least two generators")
    return corrected_formula(eroded_counts(support, body, k), k)


class KoszulService:
    """Compares the closed-form syzygy count with the computed kernel"""

    def __init__(self, membership_service: MembershipService):
        self.membership_service = membership_service

    def compare(
        self,
        support: Support,
        body: HPolytope,
        k: int,
        primes: Optional[Sequence[int]] = None,
        seeds: Optional[Sequence[int]] = None,
    ) -> KoszulReport:
        if k < 2:
            raise HypothesisError("the syzygy formula needs at least two generators")
        counts = eroded_counts(support, body, k)
        corrected = corrected_formula(counts, k)
        printed = printed_formula(counts, k)
        points = support.lattice_points if isinstance(support, HPolytope) else support
        # an empty target makes W the whole syzygy module
        system = SystemSpec.uniform(PointSet(points.dim), points, body.lattice_points, k)
        oracle = self.membership_service.run_protocol(system, primes, seeds).dim_ker
        if corrected == oracle and printed == oracle:
            reading = "both"
        elif corrected == oracle:
            reading = "corrected"
        elif printed == oracle:
            reading = "printed"
        else:
            reading = "neither"
            logger.warning(f"Neither syzygy formula matches the kernel: corrected={corrected}, printed={printed}, oracle={oracle}")
        return KoszulReport(k=k, eroded_counts=counts, corrected=corrected, printed=printed, oracle=oracle, confirmed_reading=reading)
