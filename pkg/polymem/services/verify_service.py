import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from polymem.core.config import Settings
from polymem.exceptions.errors import InputError
from polymem.models.chain import ErosionClass
from polymem.models.membership import SystemSpec
from polymem.models.polytope import (
    HPolytope,
    PointSet,
    affine_dimension,
    box,
    build_polytope,
    hull_from_points,
    unit_simplex,
)
from polymem.models.sparse_poly import SparsePoly, random_generic
from polymem.repositories.base import dumps
from polymem.schemas.reports import CriterionResult, MembershipReportSchema
from polymem.services.chain_service import ChainService
from polymem.services.geometry import dilate, point_erosion
from polymem.services.koszul_service import KoszulService
from polymem.services.membership_service import MembershipService
from polymem.services.osculate_service import OsculateService, branch_series, multiplicity
from polymem.utils.seeding import derive_seed, rng_for

logger = logging.getLogger(__name__)

Suite = Callable[[List[int], List[int]], List[CriterionResult]]


def lattice(body: HPolytope, factor=1) -> PointSet:
    """Z(factor * body), dilating about the origin."""
    return dilate(body, factor).lattice_points if factor != 1 else body.lattice_points


def unit_square() -> HPolytope:
    return box([(0, 1), (0, 1)])


def centered_square() -> HPolytope:
    return box([(-1, 1), (-1, 1)])


def square_pyramid() -> HPolytope:
    """Base [-1,1]^2 at height -1, apex (0,0,1)."""
    return build_polytope(
        3,
        [((0, 0, 1), -1), ((2, 0, -1), -1), ((-2, 0, -1), -1), ((0, 2, -1), -1), ((0, -2, -1), -1)],
    )


class VerifyService:
    """Acceptance suites checked against exact oracles"""

    def __init__(
        self,
        config: Settings,
        membership_service: MembershipService,
        chain_service: ChainService,
        koszul_service: KoszulService,
        osculate_service: OsculateService,
    ):
        self.config = config
        self.membership_service = membership_service
        self.chain_service = chain_service
        self.koszul_service = koszul_service
        self.osculate_service = osculate_service
        self.suites: Dict[str, Suite] = {
            "line-example": self.example_one,
            "degree-table": self.degree_table,
            "single-generator": self.single_generator,
            "syzygy-kernel": self.syzygy_kernel,
            "foundation": self.foundation,
            "stabilization": self.stabilization,
            "normal-chain": self.normal_chain,
            "koszul": self.koszul,
            "osculation": self.osculation,
            "determinism": self.determinism,
        }

    @property
    def suite_names(self) -> List[str]:
        return sorted(self.suites) + ["all"]

    def run(self, suite: str, primes: Optional[Sequence[int]] = None, seeds: Optional[Sequence[int]] = None) -> List[CriterionResult]:
        """
        Run one named suite, or every suite for "all".

        Args:
            suite: Suite name
            primes: Protocol primes, defaults from settings
            seeds: Protocol seeds, defaults from settings

        Returns:
            One result per criterion
        """
        primes = list(primes or self.config.PROTOCOL_PRIMES)
        seeds = list(seeds or self.config.PROTOCOL_SEEDS)
        if suite == "all":
            names = sorted(self.suites)
        elif suite in self.suites:
            names = [suite]
        else:
            raise InputError(f"unknown suite {suite!r}; choose from {', '.join(self.suite_names)}")
        results: List[CriterionResult] = []
        for name in names:
            logger.info(f"Running suite {name}")
            outcome = self.suites[name](primes, seeds)
            failed = [r.name for r in outcome if not r.passed]
            if failed:
                logger.warning(f"Suite {name}: {len(failed)} failing criteria: {failed}")
            results.extend(outcome)
        return results

    # -- suites ----------------------------------------------------------------------------

    def example_one(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "line-example"
        target = PointSet(1, [(0,), (2,)])
        f = ((((0,), 1), ((1,), 1)),)
        system = SystemSpec(target, (PointSet(1, [(0,), (1,)]),), generators=f)
        report = self.membership_service.run_protocol(system, primes, seeds)
        expected = SparsePoly(1, primes[0], {(0,): 1, (2,): -1})
        basis_ok = len(report.basis) == 1 and report.basis[0] == expected
        problem = system.realize(primes[0], seeds[0])
        decomposition = self.membership_service.decompose(expected, problem)
        return [
            CriterionResult(
                suite=suite,
                name="dimensions",
                passed=report.dims == (1, 0, 1),
                detail=f"(dimW, dimKer, dimV) = {report.dims}",
            ),
            CriterionResult(suite=suite, name="basis", passed=basis_ok, detail="basis is 1 - x^2"),
            CriterionResult(suite=suite, name="decompose", passed=decomposition.member, detail="1 - x^2 = (1 - x)(1 + x)"),
        ]

    def degree_table(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "degree-table"
        simplex = unit_simplex(2)
        target = lattice(simplex)
        expected = {(1, 1): 2, (1, 2): 1, (1, 3): 1, (2, 3): 0, (3, 4): 0, (2, 4): 0}
        results = []
        for (d1, d2), dim_v in expected.items():
            first = lattice(simplex, d2 - d1) if d2 > d1 else PointSet(2, [(0, 0)])
            system = SystemSpec(
                target,
                (first, PointSet(2, [(0, 0)])),
                bodies=(lattice(simplex, d1), lattice(simplex, d2)),
            )
            report = self.membership_service.run_protocol(system, primes, seeds)
            results.append(
                CriterionResult(
                    suite=suite,
                    name=f"d1={d1},d2={d2}",
                    passed=report.dim_v == dim_v,
                    detail=f"dimV = {report.dim_v}, expected {dim_v}",
                )
            )
        return results

    def _random_convex(self, body: HPolytope, rng) -> PointSet:
        pool = lattice(body, 4).points
        while True:
            size = int(rng.integers(body.dim + 1, len(pool) + 1))
            chosen = [pool[i] for i in sorted(rng.choice(len(pool), size=size, replace=False))]
            if affine_dimension(chosen) == body.dim:
                return hull_from_points(body.dim, chosen).lattice_points

    def single_generator(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "single-generator"
        bodies = [
            ("E", unit_simplex(1)),
            ("2E", unit_simplex(1, 2)),
            ("E", unit_simplex(2)),
            ("2E", unit_simplex(2, 2)),
            ("square", unit_square()),
        ]
        rng = rng_for(seeds[0], 31)
        results = []
        for instance in range(20):
            label, body = bodies[instance % len(bodies)]
            target = self._random_convex(body, rng)
            generator = body.lattice_points
            expected = len(point_erosion(target, generator))
            system = SystemSpec.uniform(target, lattice(body, 4), generator, 1)
            report = self.membership_service.run_protocol(system, primes, seeds)
            results.append(
                CriterionResult(
                    suite=suite,
                    name=f"instance-{instance}",
                    passed=report.dim_v == expected,
                    detail=f"n={body.dim}, B={label}, |A|={len(target)}: dimV = {report.dim_v}, |A - Z(B)| = {expected}",
                )
            )
        return results

    def syzygy_kernel(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "syzygy-kernel"
        results = []
        for label, body in (("E", unit_simplex(2)), ("square", unit_square())):
            for factor in (2, 3):
                support = lattice(body, factor)
                generator = body.lattice_points
                expected = len(point_erosion(support, generator))
                system = SystemSpec.uniform(PointSet(2), support, generator, 2)
                report = self.membership_service.run_protocol(system, primes, seeds)
                verdicts = self.membership_service.check_syzygy_proportionality(system.realize(primes[0], seeds[0]))
                results.append(
                    CriterionResult(
                        suite=suite,
                        name=f"B={label},C=Z({factor}B)",
                        passed=report.dim_ker == expected and len(verdicts) == expected and all(verdicts),
                        detail=f"dimKer = {report.dim_ker}, |C - Z(B)| = {expected}, proportional {sum(verdicts)}/{len(verdicts)}",
                    )
                )
        return results

    def foundation(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "foundation"
        rng = rng_for(seeds[0], 37)
        results = []
        for label, body in (("simplex", unit_simplex(3)), ("cube", box([(0, 1)] * 3))):
            boundary = lattice(body, 3).difference(dilate(body, 3).interior_lattice_points)
            removed = boundary.points[int(rng.integers(len(boundary)))]
            targets = {
                "Z(B)": lattice(body),
                "Z(2B)": lattice(body, 2),
                "Z(3B)-point": lattice(body, 3).difference(PointSet(3, [removed])),
            }
            for k in (1, 2):
                for name, target in targets.items():
                    found = self.membership_service.foundation_supports(target, body, k)
                    report = self.membership_service.run_protocol(
                        self.membership_service.foundation_system(target, body, k, found), primes, seeds
                    )
                    oracle = self.membership_service.run_protocol(
                        self.membership_service.foundation_system(target, body, k, found, found.factor + 2), primes, seeds
                    )
                    passed = report.dim_v == oracle.dim_v and (name != "Z(B)" or report.dim_v == k)
                    results.append(
                        CriterionResult(
                            suite=suite,
                            name=f"{label},k={k},A={name}",
                            passed=passed,
                            detail=f"t = {found.factor}: dimV = {report.dim_v}, oracle at t+2 = {oracle.dim_v}",
                        )
                    )
            full = self.membership_service.foundation_supports(lattice(body, 3), body, 1)
            results.append(
                CriterionResult(
                    suite=suite,
                    name=f"{label},factor-of-Z(3B)",
                    passed=full.factor == 2,
                    detail=f"t = {full.factor}",
                )
            )
        return results

    def stabilization(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "stabilization"
        body = centered_square()
        chain = self.chain_service.build_normal_chain(body, 3, seed=seeds[0])
        pool = lattice(body, 2).points
        rng = rng_for(seeds[0], 41)
        results = []
        for instance in range(5):
            size = int(rng.integers(1, len(pool) + 1))
            target = PointSet(2, [pool[i] for i in rng.choice(len(pool), size=size, replace=False)])
            report = self.membership_service.stabilization_check(target, 1, chain, primes, seeds)
            results.append(
                CriterionResult(
                    suite=suite,
                    name=f"instance-{instance}",
                    passed=report.start is not None and report.constant and not report.falsifications,
                    detail=f"|A| = {len(target)}, start {report.start}, dimV {sorted({e.dim_v for e in report.entries})}",
                )
            )
        target = lattice(body, 2)
        report = self.membership_service.stabilization_check(target, 2, chain, primes, seeds)
        bounded = all(v.delta_dim_w <= v.bound for v in report.variations)
        cancelling = all(v.bound == v.delta_eroded for v in report.variations)
        results.append(
            CriterionResult(
                suite=suite,
                name="k=2,step-bounds",
                passed=report.constant and bounded and cancelling,
                detail=f"{len(report.variations)} steps, constant {report.constant}, within bound {bounded}, bound = erosion growth {cancelling}",
            )
        )
        return results

    def normal_chain(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "normal-chain"
        results = []
        bodies = [
            ("square", centered_square(), None),
            ("triangle", unit_simplex(2), (Fraction(1, 3), Fraction(1, 3))),
            ("pyramid", square_pyramid(), None),
        ]
        square_chain = None
        for label, body, center in bodies:
            chain = self.chain_service.build_normal_chain(body, 3, center=center, seed=seeds[0])
            failures = [i for i, r in enumerate(chain.reports) if not r.passed]
            results.append(
                CriterionResult(
                    suite=suite,
                    name=f"{label},steps",
                    passed=not failures and len(chain.reports) == len(chain.steps),
                    detail=f"{len(chain.terms)} terms, failing steps {failures}",
                )
            )
            if label == "square":
                square_chain = chain
        eps0, _ = self.chain_service.epsilon0(centered_square())
        results.append(
            CriterionResult(suite=suite, name="square,epsilon0", passed=eps0 == Fraction(3, 2), detail=f"epsilon0 = {eps0}")
        )
        eroded = self.chain_service.eroded_chain_report(square_chain)
        results.append(
            CriterionResult(
                suite=suite,
                name="square,eroded-chain",
                passed=all(r.passed for _, r in eroded),
                detail=f"{len(eroded)} eroded steps checked",
            )
        )
        negative = self.chain_service.negative_chain(centered_square(), seed=seeds[0])
        last = negative.terms[-1]
        results.append(
            CriterionResult(
                suite=suite,
                name="square,negative-chain",
                passed=negative.descending
                and last.lattice_points.issubset(centered_square().interior_lattice_points)
                and all(b.issubset(a) for a, b in zip(
                    (t.lattice_points for t in negative.terms),
                    (t.lattice_points for t in negative.terms[1:]),
                )),
                detail=f"{len(negative.terms)} terms down to factor {negative.epsilon0}",
            )
        )
        classes = [
            self.chain_service.classify_erosion(square_chain, len(square_chain.terms) - 1, 1),
            self.chain_service.classify_erosion(square_chain, 0, 1),
            self.chain_service.classify_erosion(square_chain, 0, 2),
        ]
        expected = [ErosionClass.CHAIN_ELEMENT, ErosionClass.STRICTLY_INTERIOR, ErosionClass.EMPTY]
        results.append(
            CriterionResult(
                suite=suite,
                name="square,erosion-classes",
                passed=classes == expected,
                detail=", ".join(c.value for c in classes),
            )
        )
        return results

    def koszul(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "koszul"
        results = []
        pair = self.koszul_service.compare(dilate(unit_simplex(2), 2), unit_simplex(2), 2, primes, seeds)
        results.append(
            CriterionResult(
                suite=suite,
                name="k=2,n=2",
                passed=pair.oracle == 3 and pair.corrected == 3,
                detail=f"formula {pair.corrected}, oracle {pair.oracle}",
            )
        )
        simplex = unit_simplex(4)
        triple = self.koszul_service.compare(dilate(simplex, 2), simplex, 3, primes, seeds)
        results.append(
            CriterionResult(
                suite=suite,
                name="k=3,n=4",
                passed=triple.oracle == 14 and triple.confirmed_reading == "corrected" and triple.printed == -15,
                detail=f"corrected {triple.corrected}, printed {triple.printed}, oracle {triple.oracle}, reading {triple.confirmed_reading}",
            )
        )
        return results

    def osculation(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "osculation"
        prime = self.config.PRIME_DEFAULT
        seed = seeds[0]
        results = []
        simplex = unit_simplex(2)
        for degree, label in ((2, "conic"), (3, "cubic")):
            curve = random_generic(lattice(simplex, degree), derive_seed(seed, 43, degree), prime)
            for factor in (1, 2):
                support = lattice(simplex, factor)
                report = self.osculate_service.flag_report(support, curve, seed)
                size = len(support)
                kernels_ok = report.kernel_dims == [size - i for i in range(report.rank + 1)]
                flags_ok = len(report.flags) == report.rank and all(f.achieved == f.requested for f in report.flags)
                branch = branch_series(curve, report.point, report.precision)
                members = self.osculate_service.slice_report(support, curve, seed).basis
                vanishing = all(multiplicity(g, branch).is_lower_bound for g in members)
                results.append(
                    CriterionResult(
                        suite=suite,
                        name=f"{label},A=Z({factor}E)",
                        passed=report.consistent and kernels_ok and flags_ok and vanishing,
                        detail=f"rank {report.rank}, |A| {size}, dimV {report.dim_v}, point {report.point}",
                    )
                )
        return results

    def determinism(self, primes: List[int], seeds: List[int]) -> List[CriterionResult]:
        suite = "determinism"
        body = unit_simplex(2)
        system = SystemSpec.uniform(lattice(body, 2), lattice(body), body.lattice_points, 2)
        texts = [
            dumps(MembershipReportSchema.from_model(self.membership_service.run_protocol(system, primes, seeds)))
            for _ in range(2)
        ]
        return [CriterionResult(suite=suite, name="membership-report", passed=texts[0] == texts[1], detail="two runs compared")]
