import itertools
import logging
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from polymem.core.config import Settings
from polymem.exceptions.errors import (
    GenericityFailureError,
    HypothesisError,
    InternalError,
    SegmentBodyError,
    SupportViolationError,
)
from polymem.models.chain import NormalChain
from polymem.models.linalg import ExactMatrix, PrimeField
from polymem.models.membership import (
    ConstraintSystem,
    Decomposition,
    Foundation,
    MembershipProblem,
    MembershipReport,
    StabilizationEntry,
    StabilizationReport,
    StepVariation,
    SystemSpec,
    center_of,
    vector_to_polys,
)
from polymem.models.polytope import HPolytope, Point, PointSet, dot
from polymem.models.sparse_poly import SparsePoly, from_vector
from polymem.services.geometry import (
    anchored_enclosing_factor,
    dilate,
    erode,
    face,
    is_segment,
    minkowski_sum,
    point_erosion,
    translate,
)
from polymem.utils.seeding import derive_seed

logger = logging.getLogger(__name__)


def _add(u: Sequence[int], v: Sequence[int]) -> Point:
    return tuple(a + b for a, b in zip(u, v))


class MembershipService:
    """Dimension of the degree-restricted ideal slice V_A and related checks"""

    def __init__(self, config: Settings):
        self.primes = config.PROTOCOL_PRIMES
        self.seeds = config.PROTOCOL_SEEDS
        self.retries = config.GENERICITY_RETRIES
        self.shift_radius = config.FOUNDATION_SHIFT_RADIUS

    # -- linear algebra of a single realization ---------------------------------

    def product_system(self, problem: MembershipProblem, extra_rows: Sequence[Point] = ()) -> ConstraintSystem:
        """Matrix of (c_1..c_k) -> sum c_i f_i over every monomial the products can reach."""
        columns = [(i, c) for i, support in enumerate(problem.supports) for c in support]
        monomials = set(tuple(e) for e in extra_rows)
        for (i, c) in columns:
            for e in problem.generators[i].terms:
                monomials.add(_add(c, e))
        rows = sorted(monomials)
        index = {e: r for r, e in enumerate(rows)}
        entries = np.zeros((len(rows), len(columns)), dtype=np.int64)
        for j, (i, c) in enumerate(columns):
            for e, coeff in problem.generators[i].terms.items():
                entries[index[_add(c, e)], j] = coeff
        return ConstraintSystem(ExactMatrix(entries, PrimeField(problem.prime), cols=len(columns)), rows, columns)

    def build_constraint_matrix(self, problem: MembershipProblem) -> ConstraintSystem:
        """Rows of the product system for monomials outside the target."""
        system = self.product_system(problem)
        outside = [r for r, e in enumerate(system.rows) if e not in problem.target]
        return ConstraintSystem(system.matrix.take_rows(outside), [system.rows[r] for r in outside], system.columns)

    def _tuples(self, problem: MembershipProblem, columns, vectors) -> List[List[SparsePoly]]:
        return [vector_to_polys(v, columns, problem.k, problem.dim, problem.prime) for v in vectors]

    def solution_space_W(self, problem: MembershipProblem) -> List[List[SparsePoly]]:
        """Basis of multiplier tuples whose combination stays inside the target."""
        omega = self.build_constraint_matrix(problem)
        return self._tuples(problem, omega.columns, omega.matrix.kernel_basis())

    def syzygy_kernel(self, problem: MembershipProblem) -> List[List[SparsePoly]]:
        """Basis of multiplier tuples with sum c_i f_i = 0."""
        system = self.product_system(problem)
        return self._tuples(problem, system.columns, system.matrix.kernel_basis())

    def membership_dim(self, problem: MembershipProblem) -> MembershipReport:
        """dim W, dim Ker and dim V = dim W - dim Ker with a canonical basis of V."""
        system = self.product_system(problem)
        outside = [r for r, e in enumerate(system.rows) if e not in problem.target]
        inside = [r for r, e in enumerate(system.rows) if e in problem.target]
        omega = system.matrix.take_rows(outside)
        w_basis = omega.kernel_basis()
        dim_ker = len(system.matrix.kernel_basis())
        dim_v = len(w_basis) - dim_ker
        field = system.matrix.field
        restricted = system.matrix.take_rows(inside)
        images = np.array([restricted.matvec(w) for w in w_basis], dtype=np.int64).reshape(len(w_basis), len(inside))
        canonical = ExactMatrix(images, field, cols=len(inside)).nonzero_rref_rows()
        if canonical.shape[0] != dim_v:
            raise InternalError(f"image rank {canonical.shape[0]} differs from dim W - dim Ker = {dim_v}")
        monomials = [system.rows[r] for r in inside]
        basis = [from_vector(problem.dim, problem.prime, monomials, row) for row in canonical]
        return MembershipReport(
            dim_w=len(w_basis),
            dim_ker=dim_ker,
            dim_v=dim_v,
            basis=basis,
            omega_shape=omega.shape,
            primes=[problem.prime],
            seeds=[problem.seed] if problem.seed is not None else [],
        )

    # -- agreement protocol -------------------------------------------------------

    def run_protocol(self, system: SystemSpec, primes: Optional[Sequence[int]] = None, seeds: Optional[Sequence[int]] = None) -> MembershipReport:
        """
        Compute dimensions for every (prime, seed) pair and require agreement.

        Disagreeing sampled runs are repeated with fresh seeds derived from the
        given ones before giving up.
        """
        primes = list(primes or self.primes)
        seeds = list(seeds or self.seeds)
        for attempt in range(self.retries + 1):
            current = seeds if attempt == 0 else [derive_seed(s, 1000 + attempt) for s in seeds]
            used_seeds = current[:1] if system.explicit else current
            reports = [self.membership_dim(system.realize(p, s)) for p, s in itertools.product(primes, used_seeds)]
            signatures = {r.dims for r in reports}
            if len(signatures) == 1:
                return replace(
                    reports[0],
                    primes=primes,
                    seeds=used_seeds,
                    translation=system.translation,
                    within_hypotheses=system.within_hypotheses,
                )
            logger.warning(f"Runs disagree on (dim W, dim Ker, dim V): {sorted(signatures)} (attempt {attempt + 1})")
            if system.explicit:
                break
        raise GenericityFailureError(f"dimension disagreement across primes {primes} persisted after resampling")

    # -- decomposition --------------------------------------------------------------

    def decompose(self, target_poly: SparsePoly, problem: MembershipProblem) -> Decomposition:
        """Express target_poly as sum c_i f_i with the problem's multiplier supports."""
        if not target_poly.support.issubset(problem.target):
            raise SupportViolationError("polynomial support is not contained in the target")
        system = self.product_system(problem, extra_rows=list(target_poly.terms))
        rhs = [target_poly.coefficient(e) for e in system.rows]
        result = system.matrix.solve(rhs)
        if not result.feasible:
            return Decomposition(member=False, prime=problem.prime, seed=problem.seed)
        return Decomposition(
            member=True,
            multipliers=vector_to_polys(result.particular, system.columns, problem.k, problem.dim, problem.prime),
            kernel=self._tuples(problem, system.columns, result.kernel),
            prime=problem.prime,
            seed=problem.seed,
        )

    def exact_quotient(self, numerator: SparsePoly, divisor: SparsePoly, support: PointSet) -> Optional[SparsePoly]:
        """The mu supported on support with mu * divisor == numerator, if any."""
        problem = MembershipProblem(numerator.support.union(support), (support,), (divisor,), divisor.prime)
        system = self.product_system(problem, extra_rows=list(numerator.terms))
        result = system.matrix.solve([numerator.coefficient(e) for e in system.rows])
        if not result.feasible:
            return None
        return vector_to_polys(result.particular, system.columns, 1, divisor.dim, divisor.prime)[0]

    def check_syzygy_proportionality(self, problem: MembershipProblem) -> List[bool]:
        """For two generators, test that each kernel element is mu * (f2, -f1)."""
        if problem.k != 2:
            raise HypothesisError("proportionality is checked for pairs of generators")
        f1, f2 = problem.generators
        verdicts = []
        for c1, c2 in self.syzygy_kernel(problem):
            mu = self.exact_quotient(c1, f2, point_erosion(problem.supports[0], f2.support))
            verdicts.append(mu is not None and (mu * f1 + c2).is_zero())
        return verdicts

    # -- foundations --------------------------------------------------------------------

    def _anchor(self, body: HPolytope) -> Point:
        """Lattice point of body used as homothety center."""
        centroid = center_of(body.vertices)
        candidates = body.interior_lattice_points or body.lattice_points

        def distance(q):
            return sum((Fraction(a) - c) ** 2 for a, c in zip(q, centroid))

        return min(candidates, key=lambda q: (distance(q), q))

    def foundation_supports(
        self,
        target: PointSet,
        body: HPolytope,
        k: int,
        allow_outside_hypotheses: bool = False,
        factor_override=None,
    ) -> Foundation:
        """
        Multiplier supports k x Z(tB) for the least t with A inside (t + 1) B.

        The body is moved so that one of its lattice points is the origin and
        the target by the integer shift minimizing the enclosing factor. The
        returned supports are expressed in the original coordinates.
        """
        if body.lower_dimensional:
            raise HypothesisError("generator support must be full-dimensional")
        if not body.is_integral():
            raise HypothesisError("generator support polytope must have integer vertices")
        if is_segment(body):
            raise SegmentBodyError()
        within = k + 1 <= body.dim
        if not within and not allow_outside_hypotheses:
            raise HypothesisError(f"k + 1 = {k + 1} exceeds the dimension {body.dim}")
        if target.is_empty():
            raise HypothesisError("target support is empty")
        anchor = self._anchor(body)
        anchored = translate(body, tuple(-a for a in anchor))
        shift, enclosing = self._best_shift(target, anchored)
        factor = max(Fraction(0), enclosing - 1) if factor_override is None else Fraction(factor_override)
        foundation = Foundation(
            factor=factor,
            enclosing=enclosing,
            supports=(),
            translation=shift,
            center=anchor,
            within_hypotheses=within,
        )
        foundation.supports = (self.supports_for_factor(foundation, anchored),) * k
        logger.info(f"Foundation factor t={factor} (enclosing {enclosing}), shift {shift}, center {anchor}")
        return foundation

    def supports_for_factor(self, foundation: Foundation, anchored: HPolytope, factor=None) -> PointSet:
        factor = Fraction(foundation.factor if factor is None else factor)
        if factor == 0:
            points = PointSet(anchored.dim, [(0,) * anchored.dim])
        else:
            points = dilate(anchored, factor).lattice_points
        offset = tuple(-v - c for v, c in zip(foundation.translation, foundation.center))
        return points.translate(offset)

    def _best_shift(self, target: PointSet, anchored: HPolytope) -> Tuple[Tuple[int, ...], Fraction]:
        dim = anchored.dim
        ratios = []
        for f in anchored.facets:
            width_target = max(dot(f.normal, a) for a in target) - min(dot(f.normal, a) for a in target)
            width_body = max(dot(f.normal, v) for v in anchored.vertices) - anchored.support_min(f.normal)
            ratios.append(Fraction(width_target) / width_body)
        estimate = max(ratios)
        body_mid = [(min(v[i] for v in anchored.vertices) + max(v[i] for v in anchored.vertices)) / 2 for i in range(dim)]
        target_mid = [Fraction(min(a[i] for a in target) + max(a[i] for a in target), 2) for i in range(dim)]
        guess = [round(estimate * b - t) for b, t in zip(body_mid, target_mid)]
        for radius in range(self.shift_radius, self.shift_radius + 4):
            best = None
            for delta in itertools.product(range(-radius, radius + 1), repeat=dim):
                shift = tuple(g + d for g, d in zip(guess, delta))
                factor = anchored_enclosing_factor(target.translate(shift), anchored)
                if factor is not None and (best is None or (factor, shift) < best[::-1]):
                    best = (shift, factor)
            if best is not None:
                return best
        raise HypothesisError("no integer shift places the target in a dilation of the body")

    def foundation_system(self, target: PointSet, body: HPolytope, k: int, foundation: Foundation, factor=None) -> SystemSpec:
        """System with the foundation's supports, optionally at another factor."""
        if factor is None:
            supports = foundation.supports
        else:
            anchored = translate(body, tuple(-a for a in foundation.center))
            supports = (self.supports_for_factor(foundation, anchored, factor),) * k
        return SystemSpec(
            target,
            supports,
            (body.lattice_points,) * k,
            translation=foundation.translation,
            within_hypotheses=foundation.within_hypotheses,
        )

    # -- stabilization along a normal chain --------------------------------------------

    def face_step_bound(self, target: PointSet, body: HPolytope, smaller: HPolytope, larger: HPolytope, facet: Optional[int]) -> int:
        """Number of lattice points of the new slab eroded by the body's face in the shift direction."""
        if not target.issubset(minkowski_sum(smaller, body).lattice_points):
            raise HypothesisError("target must lie in the lattice points of the smaller term plus the body")
        slab = larger.lattice_points.difference(smaller.lattice_points)
        if facet is None or slab.is_empty():
            return 0
        return len(point_erosion(slab, face(body, larger.facets[facet].normal)))

    def step_variation(
        self,
        target: PointSet,
        chain: NormalChain,
        index: int,
        previous: StabilizationEntry,
        report: MembershipReport,
    ) -> StepVariation:
        """Changes of dim W and dim Ker across the inclusion of term index - 1 into term index, with the face bound."""
        body = chain.base
        smaller, larger = chain.terms[index - 1], chain.terms[index]
        facet = chain.steps[index - 1].facet
        eroded_prev = erode(smaller, body)
        eroded_next = erode(larger, body)
        delta_eroded = (len(eroded_next.lattice_points) if eroded_next else 0) - (
            len(eroded_prev.lattice_points) if eroded_prev else 0
        )
        return StepVariation(
            index=index,
            facet=facet,
            delta_dim_w=report.dim_w - previous.dim_w,
            delta_dim_ker=report.dim_ker - previous.dim_ker,
            bound=self.face_step_bound(target, body, smaller, larger, facet),
            delta_eroded=delta_eroded,
        )

    def stabilization_check(
        self,
        target: PointSet,
        k: int,
        chain: NormalChain,
        primes: Optional[Sequence[int]] = None,
        seeds: Optional[Sequence[int]] = None,
    ) -> StabilizationReport:
        """dim V along the chain terms, starting at the first term whose sum with the base covers the target."""
        body = chain.base
        generator_support = body.lattice_points
        start = next(
            (i for i, term in enumerate(chain.terms) if target.issubset(minkowski_sum(term, body).lattice_points)),
            None,
        )
        if start is None:
            logger.warning("No chain term covers the target; extend t_max")
            return StabilizationReport(start=None)
        cache: Dict[Tuple[Point, ...], MembershipReport] = {}
        entries: List[StabilizationEntry] = []
        variations: List[StepVariation] = []
        for i in range(start, len(chain.terms)):
            support = chain.terms[i].lattice_points
            if support.points not in cache:
                cache[support.points] = self.run_protocol(SystemSpec.uniform(target, support, generator_support, k), primes, seeds)
            report = cache[support.points]
            entries.append(StabilizationEntry(i, chain.bracket(i), len(support), report.dim_w, report.dim_ker, report.dim_v))
            if i > start:
                variations.append(self.step_variation(target, chain, i, entries[-2], report))
        dims = [e.dim_v for e in entries]
        changes = [b.index for a, b in zip(entries, entries[1:]) if b.dim_v != a.dim_v]
        falsifications = [b.index for a, b in zip(entries, entries[1:]) if b.dim_v > a.dim_v]
        for index in changes:
            logger.warning(f"dim V changes at chain term {index}")
        return StabilizationReport(
            start=start,
            entries=entries,
            variations=variations,
            constant=len(set(dims)) == 1,
            falsifications=falsifications,
            changes=changes,
        )
