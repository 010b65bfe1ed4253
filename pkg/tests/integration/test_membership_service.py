from fractions import Fraction

import pytest

from polymem.exceptions.errors import (
    GenericityFailureError,
    HypothesisError,
    SegmentBodyError,
    SupportViolationError,
)
from polymem.models.membership import MembershipProblem, MembershipReport, SystemSpec
from polymem.models.polytope import PointSet, box, unit_simplex
from polymem.models.sparse_poly import SparsePoly, from_integers
from polymem.repositories.base import dumps
from polymem.schemas.reports import MembershipReportSchema
from polymem.services.geometry import dilate, point_erosion
from polymem.services.membership_service import MembershipService
from tests.conftest import PRIME, PRIMES, SEEDS

LINE_TARGET = PointSet(1, [(0,), (2,)])
LINE_SUPPORT = PointSet(1, [(0,), (1,)])
ONE_PLUS_X = (((0,), 1), ((1,), 1))


def line_problem(target: PointSet = LINE_TARGET) -> MembershipProblem:
    return MembershipProblem(target, (LINE_SUPPORT,), (from_integers(1, PRIME, ONE_PLUS_X),), PRIME)


def lattice(body, factor=1) -> PointSet:
    return dilate(body, factor).lattice_points


@pytest.mark.integration
class TestMembershipDim:
    def test_line_example(self, membership_service: MembershipService) -> None:
        report = membership_service.membership_dim(line_problem())

        assert report.dims == (1, 0, 1)
        assert report.omega_shape == (1, 2)
        assert report.basis == [SparsePoly(1, PRIME, {(0,): 1, (2,): -1})]

    def test_solution_space_and_kernel(self, membership_service: MembershipService) -> None:
        problem = line_problem()
        (w,) = membership_service.solution_space_W(problem)

        # (1 - x)(1 + x) lands in the target
        assert (w[0] * problem.generators[0]).support.issubset(LINE_TARGET)
        assert membership_service.syzygy_kernel(problem) == []

    def test_single_generator_counts_erosion(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        target = lattice(simplex, 2)
        system = SystemSpec.uniform(target, lattice(simplex, 4), simplex.lattice_points, 1)

        report = membership_service.run_protocol(system, PRIMES, SEEDS)

        assert report.dim_v == len(point_erosion(target, simplex.lattice_points)) == 3
        assert report.dim_ker == 0

    @pytest.mark.parametrize("degrees, expected", [((1, 1), 2), ((1, 2), 1), ((2, 3), 0)])
    def test_degree_table(self, membership_service: MembershipService, degrees, expected) -> None:
        simplex = unit_simplex(2)
        d1, d2 = degrees
        first = lattice(simplex, d2 - d1) if d2 > d1 else PointSet(2, [(0, 0)])
        system = SystemSpec(
            simplex.lattice_points,
            (first, PointSet(2, [(0, 0)])),
            bodies=(lattice(simplex, d1), lattice(simplex, d2)),
        )

        assert membership_service.run_protocol(system, PRIMES, SEEDS).dim_v == expected

    def test_translation_invariance(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        target, support = lattice(simplex, 2), simplex.lattice_points
        shift = (3, -2)
        original = SystemSpec.uniform(target, support, simplex.lattice_points, 2)
        moved = SystemSpec.uniform(target.translate(shift), support.translate(shift), simplex.lattice_points, 2)

        assert membership_service.run_protocol(original).dims == membership_service.run_protocol(moved).dims

    def test_dimension_identity(self, membership_service: MembershipService) -> None:
        square = box([(0, 1), (0, 1)])
        system = SystemSpec.uniform(lattice(square, 2), lattice(square, 1), square.lattice_points, 2)
        report = membership_service.run_protocol(system)

        assert report.dim_v == report.dim_w - report.dim_ker
        assert len(report.basis) == report.dim_v
        assert report.primes == PRIMES
        assert report.seeds == SEEDS


    def test_constraint_matrix_entries(self, membership_service: MembershipService) -> None:
        problem = MembershipProblem(
            PointSet(1, [(0,), (1,)]), (PointSet(1, [(0,), (1,), (2,)]),), (from_integers(1, PRIME, ONE_PLUS_X),), PRIME
        )
        omega = membership_service.build_constraint_matrix(problem)

        assert omega.rows == [(2,), (3,)]
        assert omega.columns == [(0, (0,)), (0, (1,)), (0, (2,))]
        assert omega.matrix.entries.tolist() == [[0, 1, 1], [0, 0, 1]]

    def test_unconstrained_target(self, membership_service: MembershipService) -> None:
        square = box([(0, 1), (0, 1)])
        problem = SystemSpec.uniform(lattice(square, 2), square.lattice_points, square.lattice_points, 2).realize(PRIME, 1)
        report = membership_service.membership_dim(problem)

        assert report.omega_shape == (0, 8)
        # the only syzygy is (f2, -f1)
        assert report.dims == (8, 1, 7)

    def test_dim_v_monotone_in_target(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        support = lattice(simplex, 2)
        targets = [
            simplex.lattice_points,
            lattice(simplex, 2),
            lattice(simplex, 3),
            lattice(simplex, 3).union(PointSet(2, [(0, 4), (4, 0)])),
            lattice(simplex, 4),
        ]
        dims = [
            membership_service.run_protocol(SystemSpec.uniform(target, support, simplex.lattice_points, 1)).dim_v
            for target in targets
        ]

        assert dims == sorted(dims)
        assert dims[0] < dims[-1] == len(support)

    def test_reports_serialize_identically(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        system = SystemSpec.uniform(lattice(simplex, 2), simplex.lattice_points, simplex.lattice_points, 2)

        first = dumps(MembershipReportSchema.from_model(membership_service.run_protocol(system)))
        second = dumps(MembershipReportSchema.from_model(membership_service.run_protocol(system)))
        assert first == second

@pytest.mark.integration
class TestProtocol:
    def test_explicit_generators_use_one_seed(self, membership_service: MembershipService) -> None:
        system = SystemSpec(LINE_TARGET, (LINE_SUPPORT,), generators=(ONE_PLUS_X,))
        report = membership_service.run_protocol(system, PRIMES, SEEDS)

        assert report.seeds == [SEEDS[0]]
        assert report.primes == PRIMES

    def test_disagreement_raises(self, membership_service: MembershipService, mocker) -> None:
        def fake(problem):
            dims = (1, 0, 1) if problem.prime == PRIMES[0] else (2, 0, 2)
            return MembershipReport(*dims, basis=[], omega_shape=(0, 0))

        spy = mocker.patch.object(membership_service, "membership_dim", side_effect=fake)
        system = SystemSpec.uniform(LINE_TARGET, LINE_SUPPORT, LINE_SUPPORT, 1)

        with pytest.raises(GenericityFailureError):
            membership_service.run_protocol(system, PRIMES, SEEDS)
        # initial round plus two resampling rounds
        assert spy.call_count == 3 * len(PRIMES) * len(SEEDS)

    def test_resampling_recovers(self, membership_service: MembershipService, mocker) -> None:
        calls = {"count": 0}

        def flaky(problem):
            calls["count"] += 1
            dims = (0, 0, 0) if calls["count"] == 1 else (1, 0, 1)
            return MembershipReport(*dims, basis=[], omega_shape=(0, 0), primes=[problem.prime])

        mocker.patch.object(membership_service, "membership_dim", side_effect=flaky)
        system = SystemSpec.uniform(LINE_TARGET, LINE_SUPPORT, LINE_SUPPORT, 1)
        report = membership_service.run_protocol(system, PRIMES, SEEDS)

        assert report.dims == (1, 0, 1)
        assert report.seeds != SEEDS


@pytest.mark.integration
class TestDecompose:
    def test_member(self, membership_service: MembershipService) -> None:
        problem = line_problem()
        member = SparsePoly(1, PRIME, {(0,): 1, (2,): -1})
        decomposition = membership_service.decompose(member, problem)

        assert decomposition.member
        (c,) = decomposition.multipliers
        assert c * problem.generators[0] == member

    def test_non_member(self, membership_service: MembershipService) -> None:
        problem = line_problem(PointSet(1, [(0,), (1,), (2,)]))
        one_plus_x_squared = SparsePoly(1, PRIME, {(0,): 1, (2,): 1})

        assert not membership_service.decompose(one_plus_x_squared, problem).member

    def test_support_outside_target(self, membership_service: MembershipService) -> None:
        with pytest.raises(SupportViolationError):
            membership_service.decompose(SparsePoly(1, PRIME, {(1,): 1}), line_problem())

    def test_exact_quotient(self, membership_service: MembershipService) -> None:
        divisor = from_integers(1, PRIME, ONE_PLUS_X)
        numerator = SparsePoly(1, PRIME, {(0,): 1, (2,): -1})

        quotient = membership_service.exact_quotient(numerator, divisor, LINE_SUPPORT)
        assert quotient == SparsePoly(1, PRIME, {(0,): 1, (1,): -1})
        assert membership_service.exact_quotient(SparsePoly(1, PRIME, {(0,): 1}), divisor, LINE_SUPPORT) is None

    def test_syzygy_proportionality(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        support = lattice(simplex, 2)
        problem = SystemSpec.uniform(PointSet(2), support, simplex.lattice_points, 2).realize(PRIME, 1)

        verdicts = membership_service.check_syzygy_proportionality(problem)
        assert len(verdicts) == len(point_erosion(support, simplex.lattice_points)) == 3
        assert all(verdicts)


    def test_basis_elements_are_members(self, membership_service: MembershipService) -> None:
        square = box([(0, 1), (0, 1)])
        problem = SystemSpec.uniform(lattice(square, 2), square.lattice_points, square.lattice_points, 2).realize(PRIME, 1)
        basis = membership_service.membership_dim(problem).basis

        assert basis
        for g in basis:
            decomposition = membership_service.decompose(g, problem)
            assert decomposition.member
            c1, c2 = decomposition.multipliers
            assert c1 * problem.generators[0] + c2 * problem.generators[1] == g

@pytest.mark.integration
class TestFoundation:
    def test_body_itself(self, membership_service: MembershipService) -> None:
        cube = box([(0, 1)] * 3)
        foundation = membership_service.foundation_supports(cube.lattice_points, cube, 1)
        system = membership_service.foundation_system(cube.lattice_points, cube, 1, foundation)

        assert foundation.factor == 0
        assert membership_service.run_protocol(system).dim_v == 1

    def test_triple_dilation(self, membership_service: MembershipService) -> None:
        cube = box([(0, 1)] * 3)
        foundation = membership_service.foundation_supports(lattice(cube, 3), cube, 1)

        assert foundation.factor == 2
        assert foundation.enclosing == 3
        assert len(foundation.supports[0]) == 27

    def test_foundation_matches_larger_supports(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(3)
        target = lattice(simplex, 2)
        foundation = membership_service.foundation_supports(target, simplex, 2)
        base = membership_service.run_protocol(membership_service.foundation_system(target, simplex, 2, foundation))
        larger = membership_service.run_protocol(
            membership_service.foundation_system(target, simplex, 2, foundation, foundation.factor + 2)
        )

        assert base.dim_v == larger.dim_v

    def test_shifted_target(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        target = simplex.lattice_points.translate((5, 7))
        foundation = membership_service.foundation_supports(target, simplex, 1)

        assert foundation.factor == 0
        assert foundation.translation == (-5, -7)
        assert foundation.supports[0] == PointSet(2, [(5, 7)])

    def test_too_many_generators(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        with pytest.raises(HypothesisError):
            membership_service.foundation_supports(simplex.lattice_points, simplex, 2)

        foundation = membership_service.foundation_supports(
            simplex.lattice_points, simplex, 2, allow_outside_hypotheses=True
        )
        assert foundation.within_hypotheses is False

    def test_segment_body(self, membership_service: MembershipService) -> None:
        segment = unit_simplex(1)
        with pytest.raises(SegmentBodyError):
            membership_service.foundation_supports(segment.lattice_points, segment, 1)

    def test_factor_override(self, membership_service: MembershipService) -> None:
        simplex = unit_simplex(2)
        foundation = membership_service.foundation_supports(simplex.lattice_points, simplex, 1, factor_override=Fraction(1))

        assert foundation.factor == 1
        assert len(foundation.supports[0]) == 3


@pytest.mark.integration
class TestStabilization:
    def test_single_point_target(self, membership_service: MembershipService, chain_service, centered_square) -> None:
        chain = chain_service.build_normal_chain(centered_square, 2)
        report = membership_service.stabilization_check(PointSet(2, [(0, 0)]), 1, chain)

        assert report.start == 0
        assert report.constant
        assert report.falsifications == []
        assert {e.dim_v for e in report.entries} == {0}

    def test_pair_step_bounds(self, membership_service: MembershipService, chain_service, centered_square) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)
        report = membership_service.stabilization_check(lattice(centered_square, 2), 2, chain, PRIMES, SEEDS)

        assert report.constant
        assert len(report.variations) == len(report.entries) - 1
        for variation in report.variations:
            assert variation.delta_dim_w <= variation.bound
            assert variation.bound == variation.delta_eroded

    def test_uncovered_target(self, membership_service: MembershipService, chain_service, centered_square) -> None:
        chain = chain_service.build_normal_chain(centered_square, 2)
        far = PointSet(2, [(40, 40)])

        assert membership_service.stabilization_check(far, 1, chain).start is None
