from fractions import Fraction

import pytest

from polymem.exceptions.errors import HypothesisError, SegmentBodyError
from polymem.models.chain import ErosionClass, FacetOrder
from polymem.models.polytope import HPolytope, box, build_polytope, unit_simplex
from polymem.services.chain_service import ChainService
from polymem.services.geometry import dilate


def pyramid() -> HPolytope:
    return build_polytope(
        3,
        [((0, 0, 1), -1), ((2, 0, -1), -1), ((-2, 0, -1), -1), ((0, 2, -1), -1), ((0, -2, -1), -1)],
    )


@pytest.mark.integration
class TestEpsilon0:
    def test_centered_square(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        eps0, t_crit = chain_service.epsilon0(centered_square)

        assert t_crit == 2
        assert eps0 == Fraction(3, 2)

    def test_dilation_adds_no_points(self, chain_service: ChainService, simplex: HPolytope) -> None:
        center = (Fraction(1, 3), Fraction(1, 3))
        eps0, _ = chain_service.epsilon0(simplex, center)

        assert 1 < eps0 <= Fraction(3, 2)
        assert dilate(simplex, eps0, center).lattice_points == simplex.lattice_points

    def test_center_on_boundary(self, chain_service: ChainService, simplex: HPolytope) -> None:
        with pytest.raises(HypothesisError):
            chain_service.epsilon0(simplex)


@pytest.mark.integration
class TestNormalChain:
    def test_square_chain_validates(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)

        assert chain.terms[0] is centered_square
        assert len(chain.reports) == len(chain.steps) == len(chain.terms) - 1
        assert all(report.passed for report in chain.reports)
        assert chain.bracket(len(chain.terms) - 1)[0] >= 3
        assert chain.steps[0].bracket == (chain.epsilon0, chain.epsilon0)

    def test_lattice_points_grow(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)
        points = [term.lattice_points for term in chain.terms]

        for smaller, larger in zip(points, points[1:]):
            assert smaller.issubset(larger)

    def test_dilation_terms(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)
        indices = chain.dilation_indices()

        assert indices[:2] == [0, 1]
        for i in indices:
            t1, _ = chain.bracket(i)
            assert chain.terms[i].vertices == dilate(centered_square, t1).vertices

    @pytest.mark.parametrize("strategy", [FacetOrder.ASCENDING, FacetOrder.PSI])
    def test_triangle_with_interior_center(self, chain_service: ChainService, simplex: HPolytope, strategy) -> None:
        center = (Fraction(1, 3), Fraction(1, 3))
        chain = chain_service.build_normal_chain(simplex, 3, center=center, strategy=strategy)

        assert all(report.passed for report in chain.reports)
        assert sorted(chain.order) == [0, 1, 2]

    @pytest.mark.slow
    def test_pyramid(self, chain_service: ChainService) -> None:
        chain = chain_service.build_normal_chain(pyramid(), 3)
        assert all(report.passed for report in chain.reports)

    def test_equidistant_step(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 2, equidistant_step=Fraction(1, 2))

        assert chain.equidistant_step <= Fraction(1, 2)
        assert all(report.passed for report in chain.reports)

    def test_psi_order_deterministic(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        assert chain_service.psi_order(centered_square, seed=3) == chain_service.psi_order(centered_square, seed=3)

    def test_rejects_small_t_max(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        with pytest.raises(HypothesisError):
            chain_service.build_normal_chain(centered_square, 1)

    def test_rejects_segment(self, chain_service: ChainService) -> None:
        with pytest.raises(SegmentBodyError):
            chain_service.build_normal_chain(box([(-1, 1)]), 3)

    def test_rejects_fractional_vertices(self, chain_service: ChainService) -> None:
        body = build_polytope(2, [((1, 0), Fraction(-1, 2)), ((-1, 0), -1), ((0, 1), -1), ((0, -1), -1)])
        with pytest.raises(HypothesisError):
            chain_service.build_normal_chain(body, 3)


@pytest.mark.integration
class TestChainErosion:
    def test_eroded_chain(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)
        eroded = chain_service.eroded_chain_report(chain)

        assert eroded
        assert all(report.passed for _, report in eroded)

    def test_erosion_classes(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.build_normal_chain(centered_square, 3)

        assert chain_service.classify_erosion(chain, len(chain.terms) - 1, 1) is ErosionClass.CHAIN_ELEMENT
        assert chain_service.classify_erosion(chain, 0, 1) is ErosionClass.STRICTLY_INTERIOR
        assert chain_service.classify_erosion(chain, 0, 2) is ErosionClass.EMPTY

    def test_erosion_needs_origin_center(self, chain_service: ChainService, simplex: HPolytope) -> None:
        chain = chain_service.build_normal_chain(simplex, 2, center=(Fraction(1, 3), Fraction(1, 3)))
        with pytest.raises(HypothesisError):
            chain_service.classify_erosion(chain, 0, 1)


@pytest.mark.integration
class TestNegativeChain:
    def test_square(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.negative_chain(centered_square)
        points = [term.lattice_points for term in chain.terms]

        assert chain.descending
        assert chain.epsilon0 == Fraction(1, 2)
        assert points[-1].issubset(centered_square.interior_lattice_points)
        for larger, smaller in zip(points, points[1:]):
            assert smaller.issubset(larger)

    def test_triangle_about_interior_point(self, chain_service: ChainService) -> None:
        triangle = unit_simplex(2, 3)
        chain = chain_service.negative_chain(triangle, center=(1, 1))

        assert chain.terms[-1].lattice_points.issubset(triangle.interior_lattice_points)

    def test_un_shifts_are_validated(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        chain = chain_service.negative_chain(centered_square)

        assert len(chain.reports) == len(chain.steps) == len(chain.terms) - 1
        assert all(report.passed for report in chain.reports)
        # the inclusion into the body itself carries the first nonempty erosion
        reaching_body = chain.reports[0]
        assert chain.terms[0].vertices == centered_square.vertices
        assert reaching_body.minkowski_identity
        assert reaching_body.erosion_slab_identity

    def test_identities_vacuous_below_body(self, chain_service: ChainService, centered_square: HPolytope) -> None:
        prev = dilate(centered_square, Fraction(1, 2))
        nxt = dilate(centered_square, Fraction(3, 4))

        strict = chain_service.validate_step(centered_square, prev, nxt, None)
        relaxed = chain_service.validate_step(centered_square, prev, nxt, None, below_body=True)

        assert strict.failures() == ["minkowski_identity"]
        assert relaxed.passed
