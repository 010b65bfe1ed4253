import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from polymem.core.config import Settings
from polymem.exceptions.errors import ChainStalledError, HypothesisError, SegmentBodyError
from polymem.models.chain import ChainStep, ErosionClass, FacetOrder, NormalChain, ValidationReport
from polymem.models.polytope import Facet, HPolytope, PointSet, RationalPoint, box, canonicalize, dot, polytope_contains, same_polytope
from polymem.services.geometry import (
    dilate,
    erode,
    erode_iter,
    face,
    homothety_ratio,
    is_segment,
    minkowski_sum,
    point_erosion,
    shift_facet,
)
from polymem.utils.seeding import rng_for

logger = logging.getLogger(__name__)


class _RoundRejected(Exception):
    """A round failed validation at a step size that may not be refined."""


def _lattice(polytope: Optional[HPolytope], dim: int) -> PointSet:
    return polytope.lattice_points if polytope is not None else PointSet(dim)


def _erode_in_order(polytope: HPolytope, body: HPolytope) -> HPolytope:
    """Erosion that keeps every inequality in its original position."""
    return HPolytope(polytope.dim, tuple(Facet(f.normal, f.offset - body.support_min(f.normal)) for f in polytope.facets))


class ChainService:
    """Builds and validates normal chains of a lattice polytope"""

    def __init__(self, config: Settings):
        self.tau_floor = Fraction(1, 2 ** config.TAU_FLOOR_EXPONENT)
        self.max_rounds = config.MAX_CHAIN_ROUNDS

    def _center(self, body: HPolytope, center: Optional[Sequence]) -> RationalPoint:
        center = tuple(Fraction(c) for c in center) if center is not None else (Fraction(0),) * body.dim
        if len(center) != body.dim or not all(f.is_strict(center) for f in body.facets):
            raise HypothesisError(f"center {tuple(str(c) for c in center)} is not interior to the body")
        return center

    def _check_body(self, body: HPolytope) -> None:
        if body.lower_dimensional or canonicalize(body) is None:
            raise HypothesisError("body must be full-dimensional")
        if not body.is_integral():
            raise HypothesisError("body must have integer vertices")
        if is_segment(body):
            raise SegmentBodyError()

    def epsilon0(self, body: HPolytope, center: Optional[Sequence] = None) -> Tuple[Fraction, Fraction]:
        """
        Dilation factor that adds no lattice points.

        Returns:
            (epsilon0, t_crit) where t_crit is the least homothety ratio of a
            lattice point outside the body, capped at 2
        """
        if not body.is_integral():
            raise HypothesisError("epsilon0 needs integer vertices")
        center = self._center(body, center)
        doubled = dilate(body, 2, center)
        bounds = [
            (math.ceil(min(v[i] for v in doubled.vertices)), math.floor(max(v[i] for v in doubled.vertices)))
            for i in range(body.dim)
        ]
        inside = body.lattice_points
        t_crit = Fraction(2)
        for q in box(bounds).lattice_points:
            if q not in inside:
                t_crit = min(t_crit, homothety_ratio(body, q, center))
        return (1 + t_crit) / 2, t_crit

    def validate_step(
        self,
        base: HPolytope,
        prev: HPolytope,
        nxt: HPolytope,
        facet: Optional[int],
        bracket: Optional[Tuple[Fraction, Fraction]] = None,
        center: Optional[Sequence] = None,
        below_body: bool = False,
    ) -> ValidationReport:
        """
        Check the conditions an inclusion prev -> nxt must meet inside a normal chain.

        With below_body set the terms lie inside the base, so the erosion
        identities only bind once the erosion of nxt by the base is nonempty.
        """
        dim = base.dim
        canonical = canonicalize(nxt)
        facet_count = canonical is not None and not canonical.lower_dimensional and len(canonical.facets) == len(base.facets)

        eroded_next = erode(nxt, base)
        if eroded_next is None:
            minkowski_identity = below_body
        else:
            minkowski_identity = same_polytope(minkowski_sum(base, eroded_next), canonical)

        new_points = nxt.lattice_points.difference(prev.lattice_points)
        if facet is None:
            slab_coplanar = new_points.is_empty()
        else:
            normal = prev.facets[facet].normal
            slab_coplanar = len({dot(normal, q) for q in new_points}) <= 1

        bracket_ok = polytope_contains(nxt, prev)
        if bracket is not None and bracket_ok:
            t1, t2 = bracket
            bracket_ok = polytope_contains(prev, dilate(base, t1, center)) and polytope_contains(dilate(base, t2, center), nxt)

        z_prev = _lattice(erode(prev, base), dim)
        z_next = _lattice(eroded_next, dim)
        erosion_monotone = z_prev.issubset(z_next)
        if facet is None:
            expected = PointSet(dim)
        else:
            expected = point_erosion(new_points, face(base, prev.facets[facet].normal))
        erosion_slab_identity = (below_body and z_next.is_empty()) or z_next.difference(z_prev) == expected

        return ValidationReport(
            facet_count=facet_count,
            minkowski_identity=minkowski_identity,
            slab_coplanar=slab_coplanar,
            bracket=bracket_ok,
            erosion_slab_identity=erosion_slab_identity,
            erosion_monotone=erosion_monotone,
            new_points=len(new_points),
        )

    def psi_order(self, body: HPolytope, center: Optional[Sequence] = None, seed: int = 0) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """
        Random linear functional separating the dual vertices, and the facet order it induces.

        Returns:
            (psi, order) with facets sorted by increasing psi value
        """
        center = self._center(body, center)
        duals = []
        for f in body.facets:
            relative = f.offset - dot(f.normal, center)
            duals.append(tuple(Fraction(a) / -relative for a in f.normal))
        rng = rng_for(seed, 7)
        for _ in range(100):
            psi = tuple(int(x) for x in rng.integers(1, 1000, size=body.dim))
            values = [dot(psi, d) for d in duals]
            if len(set(values)) == len(values):
                order = tuple(sorted(range(len(values)), key=lambda i: values[i]))
                return psi, order
        raise HypothesisError("could not separate the dual vertices")

    def _order(self, body: HPolytope, center, strategy: FacetOrder, seed: int) -> Tuple[int, ...]:
        if FacetOrder(strategy) is FacetOrder.PSI:
            return self.psi_order(body, center, seed)[1]
        return tuple(range(len(body.facets)))

    def build_normal_chain(
        self,
        body: HPolytope,
        t_max,
        center: Optional[Sequence] = None,
        strategy: FacetOrder = FacetOrder.ASCENDING,
        equidistant_step=None,
        seed: int = 0,
    ) -> NormalChain:
        """
        Grow a validated normal chain from body to a dilation by at least t_max.

        Each round moves every facet once by the same relative amount; a
        round that fails validation is retried with half the amount.
        """
        self._check_body(body)
        center = self._center(body, center)
        t_max = Fraction(t_max)
        if t_max <= 1:
            raise HypothesisError(f"t_max must exceed 1, got {t_max}")
        eps0, _ = self.epsilon0(body, center)
        order = self._order(body, center, strategy, seed)
        logger.info(f"Building normal chain: {len(body.facets)} facets, epsilon0={eps0}, t_max={t_max}")
        if equidistant_step is None:
            return self._grow(body, center, eps0, t_max, order, None)
        step = Fraction(equidistant_step)
        while step >= self.tau_floor:
            try:
                return self._grow(body, center, eps0, t_max, order, step)
            except _RoundRejected:
                step /= 2
                logger.info(f"Equidistant round rejected, restarting with step {step}")
        raise ChainStalledError(f"equidistant step fell below 2^-{self.tau_floor.denominator.bit_length() - 1}")

    def _grow(self, body, center, eps0, t_max, order, step) -> NormalChain:
        first = dilate(body, eps0, center)
        report = self.validate_step(body, body, first, None, (Fraction(1), eps0), center)
        if not report.passed:
            raise ChainStalledError(f"homothety step to epsilon0 failed: {report.failures()}")
        terms: List[HPolytope] = [body, first]
        steps: List[ChainStep] = [ChainStep(None, eps0 - 1, (eps0, eps0))]
        reports: List[ValidationReport] = [report]
        eps = eps0
        rounds = 0
        while eps < t_max:
            rounds += 1
            if rounds > self.max_rounds:
                raise ChainStalledError(f"more than {self.max_rounds} rounds before reaching {t_max}")
            tau = step / eps if step is not None else eps0 - 1
            round_terms, round_steps, round_reports, eps = self._round(body, terms[-1], eps, tau, order, center, step is not None)
            terms.extend(round_terms)
            steps.extend(round_steps)
            reports.extend(round_reports)
        logger.info(f"Normal chain complete: {len(terms)} terms, last factor {eps}")
        return NormalChain(
            base=body,
            center=center,
            terms=tuple(terms),
            steps=tuple(steps),
            epsilon0=eps0,
            order=order,
            equidistant_step=step,
            reports=tuple(reports),
        )

    def _round(self, body, start, eps, tau, order, center, fixed):
        while tau >= self.tau_floor:
            target = eps * (1 + tau)
            current = start
            terms, steps, reports = [], [], []
            for position, m in enumerate(order):
                nxt = shift_facet(current, m, tau, center)
                report = self.validate_step(body, current, nxt, m, (eps, target), center)
                if not report.passed:
                    logger.debug(f"Shift of facet {m} by tau={tau} at factor {eps} failed: {report.failures()}")
                    break
                last = position == len(order) - 1
                terms.append(nxt)
                steps.append(ChainStep(m, tau, (target, target) if last else (eps, target)))
                reports.append(report)
                current = nxt
            else:
                return terms, steps, reports, target
            if fixed:
                raise _RoundRejected()
            tau /= 2
            logger.info(f"Refining round at factor {eps}: tau halved to {tau}")
        raise ChainStalledError(f"facet shift fell below 2^-{self.tau_floor.denominator.bit_length() - 1} at factor {eps}")

    def negative_chain(self, body: HPolytope, center: Optional[Sequence] = None, seed: int = 0) -> NormalChain:
        """
        Descending chain from body to a dilation whose lattice points are all interior.

        The factor of the last term is (1 + r) / 2 where r is the largest
        homothety ratio of an interior lattice point.
        """
        self._check_body(body)
        center = self._center(body, center)
        interior = body.interior_lattice_points
        largest = max((homothety_ratio(body, q, center) for q in interior), default=Fraction(0))
        eps_neg = (1 + largest) / 2
        _, order = self.psi_order(body, center, seed)
        current = dilate(body, eps_neg, center)
        terms: List[HPolytope] = [current]
        steps: List[ChainStep] = []
        reports: List[ValidationReport] = []
        eps = eps_neg
        rounds = 0
        while eps < 1:
            rounds += 1
            if rounds > self.max_rounds:
                raise ChainStalledError(f"more than {self.max_rounds} rounds before reaching the body")
            tau = 1 / eps - 1
            while True:
                if tau < self.tau_floor:
                    raise ChainStalledError(f"un-shift fell below the floor at factor {eps}")
                target = eps * (1 + tau)
                attempt, attempt_steps, attempt_reports, ok = [], [], [], True
                previous = current
                for m in order:
                    nxt = shift_facet(previous, m, tau, center)
                    report = self.validate_step(body, previous, nxt, m, (eps, target), center, below_body=True)
                    if not report.passed:
                        logger.debug(f"Un-shift of facet {m} by tau={tau} at factor {eps} failed: {report.failures()}")
                        ok = False
                        break
                    attempt.append(nxt)
                    attempt_steps.append(m)
                    attempt_reports.append(report)
                    previous = nxt
                if ok:
                    break
                tau /= 2
            for position, (term, m) in enumerate(zip(attempt, attempt_steps)):
                last = position == len(order) - 1
                steps.append(ChainStep(m, tau, (target, target) if last else (eps, target)))
                terms.append(term)
            reports.extend(attempt_reports)
            current = attempt[-1]
            eps = target
        # ascending terms eps_neg*B ... B, reversed into a descending chain
        descending_terms = tuple(reversed(terms))
        descending_steps = []
        for i in range(len(descending_terms) - 1):
            ascending_step = steps[len(steps) - 1 - i]
            bracket = steps[len(steps) - 2 - i].bracket if len(steps) - 2 - i >= 0 else (eps_neg, eps_neg)
            descending_steps.append(ChainStep(ascending_step.facet, ascending_step.tau, bracket))
        logger.info(f"Negative chain complete: {len(descending_terms)} terms down to factor {eps_neg}")
        return NormalChain(
            base=body,
            center=center,
            terms=descending_terms,
            steps=tuple(descending_steps),
            epsilon0=eps_neg,
            order=order,
            descending=True,
            reports=tuple(reversed(reports)),
        )

    def classify_erosion(self, chain: NormalChain, index: int, times: int) -> ErosionClass:
        """Classify the j-fold erosion of a chain term by the base."""
        if any(chain.center):
            raise HypothesisError("erosion classes are defined for chains centered at the origin")
        body = chain.base
        eroded = erode_iter(chain.terms[index], body, times)
        if eroded is None:
            return ErosionClass.EMPTY
        t1, _ = chain.bracket(index)
        residual = erode(eroded, body)
        if t1 - times >= chain.epsilon0 and residual is not None and same_polytope(minkowski_sum(body, residual), canonicalize(eroded)):
            return ErosionClass.CHAIN_ELEMENT
        points = eroded.lattice_points
        if points == body.lattice_points:
            return ErosionClass.LATTICE_EQUALS_B
        if points.issubset(body.interior_lattice_points):
            return ErosionClass.STRICTLY_INTERIOR
        return ErosionClass.UNCLASSIFIED

    def eroded_chain_report(self, chain: NormalChain) -> List[Tuple[int, ValidationReport]]:
        """Validate the eroded sequence X_i minus B over the terms with t1 >= 1 + epsilon0."""
        body = chain.base
        threshold = 1 + chain.epsilon0
        results = []
        indices = [i for i in range(len(chain.terms)) if chain.bracket(i)[0] >= threshold]
        for i in indices:
            if i + 1 >= len(chain.terms):
                break
            prev = _erode_in_order(chain.terms[i], body)
            nxt = _erode_in_order(chain.terms[i + 1], body)
            if prev.is_empty() or nxt.is_empty():
                continue
            results.append((i, self.validate_step(body, prev, nxt, chain.steps[i].facet)))
        return results
