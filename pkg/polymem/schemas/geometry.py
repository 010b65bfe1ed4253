from typing import List, Union

from pydantic import Field, root_validator, validator

from polymem.exceptions.errors import HypothesisError
from polymem.models.polytope import HPolytope, PointSet, build_polytope
from polymem.schemas.base import CamelModel, Rational, format_point, format_rational, parse_rational


class PointSetSchema(CamelModel):
    """Finite set of lattice points"""
    dim: int = Field(..., ge=1, le=4)
    points: List[List[int]]

    @root_validator(skip_on_failure=True)
    def points_match_dim(cls, values):
        """Validate every point has dim coordinates"""
        for point in values["points"]:
            if len(point) != values["dim"]:
                raise ValueError(f"point {point} does not have {values['dim']} coordinates")
        return values

    def to_model(self) -> PointSet:
        return PointSet(self.dim, self.points)

    @classmethod
    def from_model(cls, points: PointSet) -> "PointSetSchema":
        return cls(dim=points.dim, points=[list(p) for p in points])


class FacetSchema(CamelModel):
    """Inequality normal . x >= offset"""
    normal: List[int]
    offset: Rational

    @validator("normal")
    def normal_nonzero(cls, v):
        """Validate the normal is not the zero vector"""
        if not any(v):
            raise ValueError("facet normal must be nonzero")
        return v

    @validator("offset")
    def offset_rational(cls, v):
        """Validate the offset parses as a rational"""
        parse_rational(v)
        return v


class PolytopeSchema(CamelModel):
    """Polytope in inequality form; vertices are informational on output"""
    dim: int = Field(..., ge=1, le=4)
    facets: List[FacetSchema] = Field(..., min_items=1)
    lower_dimensional: bool = False
    vertices: List[List[str]] = Field(default_factory=list)

    @root_validator(skip_on_failure=True)
    def normals_match_dim(cls, values):
        """Validate every normal has dim coordinates"""
        for facet in values["facets"]:
            if len(facet.normal) != values["dim"]:
                raise ValueError(f"normal {facet.normal} does not have {values['dim']} coordinates")
        return values

    def to_model(self) -> HPolytope:
        polytope = build_polytope(self.dim, [(f.normal, parse_rational(f.offset)) for f in self.facets])
        if polytope is None:
            raise HypothesisError("polytope inequalities are infeasible")
        return polytope

    @classmethod
    def from_model(cls, polytope: HPolytope) -> "PolytopeSchema":
        return cls(
            dim=polytope.dim,
            facets=[FacetSchema(normal=list(f.normal), offset=format_rational(f.offset)) for f in polytope.facets],
            lower_dimensional=polytope.lower_dimensional,
            vertices=[list(format_point(v)) for v in polytope.vertices],
        )


def parse_body(data: dict) -> Union[HPolytope, PointSet]:
    """A body is given either by facets or by its lattice points."""
    if isinstance(data, dict) and "facets" in data:
        return PolytopeSchema.parse_obj(data).to_model()
    return PointSetSchema.parse_obj(data).to_model()
