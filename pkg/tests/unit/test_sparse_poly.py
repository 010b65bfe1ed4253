import numpy as np
import pytest

from polymem.exceptions.errors import DimensionMismatchError, FieldMismatchError, LiftFailureError, ZeroCoordinateError
from polymem.models.polytope import PointSet
from polymem.models.series import PowerSeries, VanishingOrder
from polymem.models.sparse_poly import SparsePoly, from_integers, from_vector, random_generic

P = 32003


def poly(terms, dim=1, prime=P):
    return from_integers(dim, prime, terms)


def random_sparse(seed, prime, size=6):
    """planar Laurent polynomial with seeded exponents in [-3, 3]^2"""
    rng = np.random.default_rng(seed)
    exponents = rng.integers(-3, 4, size=(size, 2))
    coefficients = rng.integers(1, prime, size=size)
    return from_integers(2, prime, [(tuple(e), int(c)) for e, c in zip(exponents.tolist(), coefficients)])


@pytest.mark.unit
class TestSparsePoly:
    """test sparse Laurent polynomials"""

    def test_coefficients_reduced_and_zeros_dropped(self):
        f = SparsePoly(1, 7, {(0,): 8, (1,): 7})
        assert f.terms == {(0,): 1}

    def test_from_integers_merges_duplicates(self):
        assert poly([((0,), 3), ((0,), -3)]).is_zero()

    def test_product(self):
        one_plus_x = poly([((0,), 1), ((1,), 1)])
        one_minus_x = poly([((0,), 1), ((1,), -1)])
        assert one_plus_x * one_minus_x == poly([((0,), 1), ((2,), -1)])

    def test_arithmetic(self):
        f = poly([((0,), 2), ((3,), 5)])
        assert (f - f).is_zero()
        assert f + (-f) == poly([])
        assert f.scale(2) == poly([((0,), 4), ((3,), 10)])
        assert f.shift((-3,)) == poly([((-3,), 2), ((0,), 5)])

    def test_support_and_restrict(self):
        f = poly([((0, 0), 1), ((1, 0), 2), ((0, 1), 3)], dim=2)
        assert f.support == PointSet(2, [(0, 0), (0, 1), (1, 0)])
        assert f.restrict(PointSet(2, [(1, 0)])) == poly([((1, 0), 2)], dim=2)
        assert f.coefficient((0, 1)) == 3
        assert f.coefficient((5, 5)) == 0

    def test_partial(self):
        f = poly([((1, 2), 1)], dim=2)
        assert f.partial(1) == poly([((1, 1), 2)], dim=2)
        assert f.partial(0) == poly([((0, 2), 1)], dim=2)

    def test_evaluate_laurent(self):
        f = SparsePoly(1, 7, {(-1,): 1})
        assert f.evaluate((2,)) == 4

    def test_evaluate_negative_exponent_at_zero(self):
        with pytest.raises(ZeroCoordinateError):
            SparsePoly(1, 7, {(-1,): 1}).evaluate((0,))

    def test_evaluate_off_torus(self):
        with pytest.raises(ZeroCoordinateError):
            SparsePoly(1, P, {(0,): 1, (1,): 1}).evaluate((0,))
        with pytest.raises(ZeroCoordinateError):
            poly([((1, 0), 1)], dim=2).evaluate((3, P))

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatchError):
            SparsePoly(1, 7, {(0,): 1}) + SparsePoly(1, 11, {(0,): 1})

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            SparsePoly(2, 7, {(0,): 1})

    def test_random_generic_full_support(self):
        points = PointSet(2, [(0, 0), (1, 0), (0, 1)])
        f = random_generic(points, seed=5, prime=P)

        assert f.support == points
        assert f == random_generic(points, seed=5, prime=P)
        assert f != random_generic(points, seed=6, prime=P)

    def test_from_vector(self):
        f = from_vector(1, P, [(0,), (1,)], np.array([0, P + 1]))
        assert f == poly([((1,), 1)])

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("prime", [7, P])
    def test_product_support_within_sum_of_supports(self, seed, prime):
        f, g = random_sparse(seed, prime), random_sparse(seed + 100, prime)
        assert (f * g).support.issubset(f.support.sum(g.support))

    @pytest.mark.parametrize("seed", range(5))
    def test_restrictions_to_a_partition_add_up(self, seed):
        f = random_sparse(seed, P)
        points = f.support.points
        first, second = PointSet(2, points[::2]), PointSet(2, points[1::2])

        assert f.restrict(first) + f.restrict(second) == f
        assert f.restrict(f.support) == f


@pytest.mark.unit
class TestPowerSeries:
    """test truncated power series"""

    def test_geometric_inverse(self):
        one_minus_z = PowerSeries([1, -1], P, 5)
        assert one_minus_z.inverse().coefficients.tolist() == [1, 1, 1, 1, 1]

    def test_inverse_round_trip(self):
        series = PowerSeries([3, 1, 4, 1, 5], P)
        product = series * series.inverse()
        assert product == PowerSeries.constant(1, P, 5)

    def test_negative_power(self):
        one_plus_z = PowerSeries.variable(1, P, 4)
        assert (one_plus_z ** -1) * one_plus_z == PowerSeries.constant(1, P, 4)
        assert (one_plus_z ** 2).coefficients.tolist() == [1, 2, 1, 0]

    def test_valuation(self):
        assert PowerSeries([0, 0, 0, 7], P, 5).valuation() == 3
        assert PowerSeries([0], P, 5).valuation() is None

    def test_zero_constant_not_invertible(self):
        with pytest.raises(LiftFailureError):
            PowerSeries([0, 1], P, 3).inverse()

    def test_precision_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            PowerSeries([1], P, 3) + PowerSeries([1], P, 4)

    def test_large_prime_products_exact(self):
        p = 2147483647
        minus_one_minus_z = PowerSeries([p - 1, p - 1], p, 4)
        assert (minus_one_minus_z * minus_one_minus_z).coefficients.tolist() == [1, 2, 1, 0]

    def test_vanishing_order(self):
        assert VanishingOrder(None, 8).is_lower_bound
        assert not VanishingOrder(3, 8).is_lower_bound
