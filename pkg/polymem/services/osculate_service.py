import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from polymem.core.config import Settings
from polymem.exceptions.errors import (
    HypothesisError,
    LiftFailureError,
    MultiplicityUnreachableError,
    NoSmoothPointError,
    NotFlagGenericError,
    WrongDimensionError,
)
from polymem.models.linalg import ExactMatrix, PrimeField
from polymem.models.membership import MembershipReport, SystemSpec
from polymem.models.polytope import PointSet, newton_polytope
from polymem.models.series import PowerSeries, VanishingOrder
from polymem.models.sparse_poly import SparsePoly, from_vector
from polymem.services.geometry import bernstein_number_2d
from polymem.services.membership_service import MembershipService
from polymem.utils.seeding import rng_for

logger = logging.getLogger(__name__)

# smooth points are found by scanning all of F_p^* in memory
MAX_SCAN_PRIME = 65521


@dataclass
class Branch:
    """Local parametrization x = x0 + z, y = y(z) of a plane curve."""

    point: Tuple[int, int]
    x: PowerSeries
    y: PowerSeries

    @property
    def precision(self) -> int:
        return self.x.precision


@dataclass
class FlagEntry:
    requested: int
    achieved: Optional[int]
    polynomial: SparsePoly


@dataclass
class OsculationReport:
    point: Tuple[int, int]
    prime: int
    precision: int
    rank: int
    hull_dim: int
    dim_v: int
    consistent: bool
    kernel_dims: List[int] = field(default_factory=list)
    flags: List[FlagEntry] = field(default_factory=list)
    bernstein: int = 0


def _powmod(base: np.ndarray, exponent: int, prime: int) -> np.ndarray:
    result = np.ones_like(base)
    base = base % prime
    while exponent:
        if exponent & 1:
            result = (result * base) % prime
        base = (base * base) % prime
        exponent >>= 1
    return result


def check_scan_prime(prime: int) -> None:
    if prime > MAX_SCAN_PRIME:
        raise HypothesisError(f"osculation scans F_p and needs p <= {MAX_SCAN_PRIME}, got {prime}")


def iter_smooth_points(curve: SparsePoly, seed: int) -> Iterator[Tuple[int, int]]:
    """Points of the curve on the torus with nonzero y-derivative, in a seeded scan order."""
    if curve.dim != 2:
        raise WrongDimensionError("curves live in the plane")
    check_scan_prime(curve.prime)
    prime = curve.prime
    derivative = curve.partial(1)
    ys = np.arange(1, prime, dtype=np.int64)
    # y^(p-1) = 1 on the torus, so exponents reduce mod p-1
    y_powers = {e[1]: _powmod(ys, e[1] % (prime - 1), prime) for e in curve.terms}
    for x0 in rng_for(seed, 11).permutation(np.arange(1, prime, dtype=np.int64)):
        x0 = int(x0)
        values = np.zeros_like(ys)
        for (a, b), coeff in curve.terms.items():
            scalar = coeff * pow(x0, a % (prime - 1), prime) % prime
            values = (values + scalar * y_powers[b]) % prime
        for index in np.nonzero(values == 0)[0]:
            y0 = int(ys[index])
            if derivative.evaluate((x0, y0)) != 0:
                yield x0, y0


def find_smooth_point(curve: SparsePoly, seed: int) -> Tuple[int, int]:
    for point in iter_smooth_points(curve, seed):
        return point
    raise NoSmoothPointError(f"no smooth point of the curve on the torus over F_{curve.prime}")


def evaluate_on_series(poly: SparsePoly, x: PowerSeries, y: PowerSeries) -> PowerSeries:
    """Substitute series for both variables; negative exponents use series inverses."""
    x_powers, y_powers = {}, {}
    total = PowerSeries.constant(0, poly.prime, x.precision)
    for (a, b), coeff in poly.terms.items():
        if a not in x_powers:
            x_powers[a] = x ** a
        if b not in y_powers:
            y_powers[b] = y ** b
        total = total + (x_powers[a] * y_powers[b]).scale(coeff)
    return total


def branch_series(curve: SparsePoly, point: Tuple[int, int], precision: int) -> Branch:
    """Lift y(z) with f(x0 + z, y(z)) = 0 mod z^precision by Newton iteration."""
    prime = curve.prime
    x0, y0 = point
    if curve.evaluate(point) != 0:
        raise LiftFailureError(f"{point} is not on the curve")
    derivative = curve.partial(1)
    if derivative.evaluate(point) == 0:
        raise LiftFailureError(f"{point} is singular in y")
    x = PowerSeries.variable(x0, prime, precision)
    y = PowerSeries.constant(y0, prime, precision)
    known = 1
    while known < precision:
        residual = evaluate_on_series(curve, x, y)
        slope = evaluate_on_series(derivative, x, y)
        y = y - residual * slope.inverse()
        known *= 2
    if evaluate_on_series(curve, x, y).valuation() is not None:
        raise LiftFailureError(f"residual does not vanish to order {precision}")
    return Branch(point=(x0, y0), x=x, y=y)


def coeff_matrix(support: PointSet, branch: Branch) -> ExactMatrix:
    """Taylor coefficients (rows) of each monomial of the support (columns) along the branch."""
    columns = []
    for monomial in support:
        poly = SparsePoly(2, branch.x.prime, {monomial: 1})
        columns.append(evaluate_on_series(poly, branch.x, branch.y).coefficients)
    entries = np.array(columns, dtype=np.int64).T.reshape(branch.precision, len(support))
    return ExactMatrix(entries, PrimeField(branch.x.prime), cols=len(support))


def multiplicity(poly: SparsePoly, branch: Branch) -> VanishingOrder:
    series = evaluate_on_series(poly, branch.x, branch.y)
    return VanishingOrder(series.valuation(), branch.precision)


class OsculateService:
    """Osculating polynomials of a plane curve at a smooth point"""

    def __init__(self, config: Settings, membership_service: MembershipService):
        self.margin = config.SERIES_MARGIN
        self.retries = config.OSCULATE_RETRIES
        self.membership_service = membership_service

    def _flag_generic(self, matrix: ExactMatrix) -> int:
        rank = matrix.rank()
        if matrix.take_rows(range(rank)).rank() != rank:
            raise NotFlagGenericError("leading Taylor rows are dependent")
        return rank

    def _osculating(self, support: PointSet, branch: Branch, matrix: ExactMatrix, order: int, rng) -> FlagEntry:
        rank = self._flag_generic(matrix)
        if not 0 <= order <= rank - 1:
            raise MultiplicityUnreachableError(f"multiplicity {order} outside 0..{rank - 1}")
        kernel = matrix.take_rows(range(order)).kernel_basis()
        prime = branch.x.prime
        for _ in range(self.retries):
            weights = rng.integers(0, prime, size=len(kernel))
            vector = np.zeros(len(support), dtype=np.int64)
            for weight, basis_vector in zip(weights, kernel):
                vector = (vector + int(weight) * basis_vector) % prime
            poly = from_vector(2, prime, support.points, vector)
            achieved = multiplicity(poly, branch).value
            if achieved == order:
                return FlagEntry(order, achieved, poly)
        raise NotFlagGenericError(f"no combination reached multiplicity exactly {order}")

    def osculating_poly(self, support: PointSet, curve: SparsePoly, point: Tuple[int, int], order: int, seed: int = 0) -> SparsePoly:
        """Polynomial on the support vanishing to order exactly `order` along the branch at point."""
        branch = branch_series(curve, point, len(support) + self.margin)
        matrix = coeff_matrix(support, branch)
        return self._osculating(support, branch, matrix, order, rng_for(seed, 13, order)).polynomial

    def _bernstein_guard(self, support: PointSet, curve: SparsePoly) -> int:
        mixed = bernstein_number_2d(newton_polytope(support), newton_polytope(curve.support))
        if mixed <= 0:
            raise HypothesisError("mixed area of the supports is zero; the curve meets no polynomial on the support")
        return int(mixed)

    def slice_report(self, support: PointSet, curve: SparsePoly, seed: int) -> MembershipReport:
        """V for the single generator curve with foundation supports."""
        body = newton_polytope(curve.support)
        foundation = self.membership_service.foundation_supports(support, body, 1)
        system = SystemSpec(
            support,
            foundation.supports,
            generators=(tuple(curve.terms.items()),),
            translation=foundation.translation,
        )
        return self.membership_service.run_protocol(system, [curve.prime], [seed])

    def flag_report(self, support: PointSet, curve: SparsePoly, seed: int = 0) -> OsculationReport:
        """Rank profile and achieved multiplicities at the first flag-generic smooth point."""
        if support.dim != 2 or curve.dim != 2:
            raise WrongDimensionError("osculation is implemented for plane curves")
        check_scan_prime(curve.prime)
        bernstein = self._bernstein_guard(support, curve)
        dim_v = self.slice_report(support, curve, seed).dim_v
        precision = len(support) + self.margin
        attempts = 0
        for point in iter_smooth_points(curve, seed):
            attempts += 1
            if attempts > self.retries:
                break
            branch = branch_series(curve, point, precision)
            matrix = coeff_matrix(support, branch)
            try:
                rank = self._flag_generic(matrix)
            except NotFlagGenericError:
                logger.info(f"Point {point} is not flag-generic; trying the next one")
                continue
            kernel_dims = [len(matrix.take_rows(range(i)).kernel_basis()) for i in range(rank + 1)]
            rng = rng_for(seed, 13)
            flags = [self._osculating(support, branch, matrix, i, rng) for i in range(rank)]
            logger.info(f"Osculation at {point}: rank {rank}, dim V {dim_v}")
            return OsculationReport(
                point=point,
                prime=curve.prime,
                precision=precision,
                rank=rank,
                hull_dim=rank - 1,
                dim_v=dim_v,
                consistent=rank == len(support) - dim_v,
                kernel_dims=kernel_dims,
                flags=flags,
                bernstein=bernstein,
            )
        raise NotFlagGenericError(f"no flag-generic smooth point within {self.retries} attempts")
