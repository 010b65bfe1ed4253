import pytest

from polymem.exceptions.errors import HypothesisError
from polymem.models.polytope import unit_simplex
from polymem.services.geometry import dilate
from polymem.services.koszul_service import (
    KoszulService,
    corrected_formula,
    eroded_counts,
    koszul_kernel_dim,
    printed_formula,
)


@pytest.mark.integration
class TestSyzygyFormulas:
    def test_eroded_counts_polytope_and_points_agree(self) -> None:
        simplex = unit_simplex(4)
        support = dilate(simplex, 2)

        assert eroded_counts(support, simplex, 3) == [5, 1]
        assert eroded_counts(support.lattice_points, simplex, 3) == [5, 1]

    def test_formulas(self) -> None:
        assert corrected_formula([3], 2) == 3
        assert printed_formula([3], 2) == 0
        assert corrected_formula([5, 1], 3) == 14
        assert printed_formula([5, 1], 3) == -15

    def test_needs_two_generators(self) -> None:
        simplex = unit_simplex(2)
        with pytest.raises(HypothesisError):
            koszul_kernel_dim(simplex, simplex, 1)

    def test_pair(self, koszul_service: KoszulService) -> None:
        simplex = unit_simplex(2)
        report = koszul_service.compare(dilate(simplex, 2), simplex, 2)

        assert report.eroded_counts == [3]
        assert report.oracle == report.corrected == 3
        assert report.confirmed_reading == "corrected"

    @pytest.mark.slow
    def test_triple_in_four_variables(self, koszul_service: KoszulService) -> None:
        simplex = unit_simplex(4)
        report = koszul_service.compare(dilate(simplex, 2), simplex, 3)

        assert report.oracle == 14
        assert report.printed == -15
        assert report.confirmed_reading == "corrected"
