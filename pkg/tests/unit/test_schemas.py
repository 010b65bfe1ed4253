import pytest
from pydantic import ValidationError

from polymem.models.membership import MembershipReport
from polymem.models.polytope import HPolytope, PointSet, box
from polymem.models.sparse_poly import SparsePoly
from polymem.schemas.base import format_rational, parse_rational
from polymem.schemas.geometry import PointSetSchema, PolytopeSchema, parse_body
from polymem.schemas.polynomial import GeneratorsSchema, SparsePolySchema
from polymem.schemas.reports import MembershipReportSchema

SQUARE = {
    "dim": 2,
    "facets": [
        {"normal": [1, 0], "offset": "-1"},
        {"normal": [-1, 0], "offset": -1},
        {"normal": [0, 1], "offset": "-1"},
        {"normal": [0, -1], "offset": "-1"},
    ],
}


@pytest.mark.unit
class TestGeometrySchemas:
    """test point set and polytope schemas"""

    def test_point_set_valid(self):
        schema = PointSetSchema(dim=2, points=[[1, 0], [0, 0]])
        assert schema.to_model() == PointSet(2, [(0, 0), (1, 0)])

    def test_point_set_wrong_arity(self):
        with pytest.raises(ValidationError):
            PointSetSchema(dim=2, points=[[1, 0, 0]])

    def test_point_set_dimension_range(self):
        with pytest.raises(ValidationError):
            PointSetSchema(dim=0, points=[])

    def test_polytope_to_model(self):
        polytope = PolytopeSchema.parse_obj(SQUARE).to_model()
        assert polytope.vertices == ((-1, -1), (-1, 1), (1, -1), (1, 1))

    def test_polytope_zero_normal(self):
        data = {"dim": 1, "facets": [{"normal": [0], "offset": "0"}]}
        with pytest.raises(ValidationError):
            PolytopeSchema.parse_obj(data)

    def test_polytope_bad_offset(self):
        data = {"dim": 1, "facets": [{"normal": [1], "offset": "one half"}]}
        with pytest.raises(ValidationError):
            PolytopeSchema.parse_obj(data)

    def test_polytope_from_model_reports_vertices(self):
        schema = PolytopeSchema.from_model(box([(0, 1)]))
        data = schema.dict(by_alias=True)

        assert data["lowerDimensional"] is False
        assert data["vertices"] == [["0"], ["1"]]

    def test_parse_body_dispatch(self):
        assert isinstance(parse_body(SQUARE), HPolytope)
        assert isinstance(parse_body({"dim": 1, "points": [[0]]}), PointSet)

    def test_rationals(self):
        assert parse_rational("3/2") * 2 == 3
        assert format_rational(parse_rational("6/4")) == "3/2"
        with pytest.raises(ValueError):
            parse_rational("x")


@pytest.mark.unit
class TestPolynomialSchemas:
    """test polynomial schemas"""

    def test_to_model_reduces(self):
        schema = SparsePolySchema(dim=1, terms=[{"exp": [0], "coeff": -1}])
        assert schema.to_model(7) == SparsePoly(1, 7, {(0,): 6})

    def test_exponent_arity(self):
        with pytest.raises(ValidationError):
            SparsePolySchema(dim=2, terms=[{"exp": [0], "coeff": 1}])

    def test_generators_not_empty(self):
        with pytest.raises(ValidationError):
            GeneratorsSchema(generators=[])


@pytest.mark.unit
class TestReportSchemas:
    """test report serialization"""

    def test_membership_report_camel_case(self):
        report = MembershipReport(
            dim_w=1,
            dim_ker=0,
            dim_v=1,
            basis=[SparsePoly(1, 7, {(0,): 1, (2,): 6})],
            omega_shape=(1, 2),
            primes=[7],
            seeds=[1],
            translation=(0,),
        )
        data = MembershipReportSchema.from_model(report).dict(by_alias=True)

        assert data["dimW"] == 1
        assert data["dimV"] == 1
        assert data["omega"] == {"rows": 1, "cols": 2}
        assert data["basis"][0]["terms"] == [{"exp": [0], "coeff": 1}, {"exp": [2], "coeff": 6}]
        assert data["withinHypotheses"] is True
