from typing import Optional

import click

from polymem.cli.inputs import INPUT, emit, load_body, load_points, load_polytope, output_option, parse_factor, parse_vector
from polymem.dependencies.services import get_chain_service
from polymem.exceptions.errors import InputError
from polymem.models.polytope import HPolytope, PointSet, hull_from_points
from polymem.schemas.base import format_rational
from polymem.schemas.geometry import PointSetSchema, PolytopeSchema
from polymem.services import geometry

OPERATIONS = [
    "area",
    "bernstein",
    "dilate",
    "enclosing-factor",
    "epsilon0",
    "erode",
    "face",
    "hull",
    "interior-points",
    "lattice-points",
    "minkowski",
    "point-erosion",
    "shift-facet",
    "translate",
    "vertices",
]


def _polytope_document(polytope: Optional[HPolytope]):
    if polytope is None:
        return {"empty": True}
    return PolytopeSchema.from_model(polytope)


def _require(second: Optional[str], op: str) -> str:
    if second is None:
        raise InputError(f"{op} needs a second input file")
    return second


@click.command("polytope")
@click.argument("op", type=click.Choice(OPERATIONS))
@click.argument("first", type=INPUT)
@click.argument("second", type=INPUT, required=False)
@click.option("--t", "factor", type=str, default=None, help="Dilation factor or facet shift")
@click.option("--vector", type=str, default=None, help="Translation or direction, e.g. 1,0")
@click.option("--center", type=str, default=None, help="Homothety center")
@click.option("--facet", type=int, default=None, help="Facet index for shift-facet")
@output_option
def polytope(op, first, second, factor, vector, center, facet, out):
    """Ad-hoc polytope operation OP on FIRST (and SECOND)."""
    if op == "hull":
        points = load_points(first)
        emit(PolytopeSchema.from_model(hull_from_points(points.dim, points.points)), out)
        return
    if op in ("lattice-points", "interior-points"):
        body = load_polytope(first)
        result = body.lattice_points if op == "lattice-points" else body.interior_lattice_points
        emit(PointSetSchema.from_model(result), out)
        return
    if op == "point-erosion":
        emit(PointSetSchema.from_model(geometry.point_erosion(load_points(first), load_points(_require(second, op)))), out)
        return
    if op == "face":
        if vector is None:
            raise InputError("face needs --vector")
        emit(PointSetSchema.from_model(geometry.face(load_body(first), parse_vector(vector))), out)
        return

    body = load_polytope(first)
    center_point = parse_vector(center, body.dim)
    if op == "vertices":
        emit(PolytopeSchema.from_model(body), out)
    elif op == "dilate":
        emit(_polytope_document(geometry.dilate(body, parse_factor(factor or "1"), center_point)), out)
    elif op == "translate":
        emit(_polytope_document(geometry.translate(body, parse_vector(vector, body.dim))), out)
    elif op == "shift-facet":
        if facet is None:
            raise InputError("shift-facet needs --facet")
        emit(_polytope_document(geometry.shift_facet(body, facet, parse_factor(factor or "0"), center_point)), out)
    elif op == "erode":
        emit(_polytope_document(geometry.erode(body, load_polytope(_require(second, op)))), out)
    elif op == "minkowski":
        emit(_polytope_document(geometry.minkowski_sum(body, load_polytope(_require(second, op)))), out)
    elif op == "area":
        emit({"value": format_rational(geometry.area(body))}, out)
    elif op == "bernstein":
        emit({"value": format_rational(geometry.bernstein_number_2d(body, load_polytope(_require(second, op))))}, out)
    elif op == "enclosing-factor":
        target: PointSet = load_points(_require(second, op))
        emit({"value": format_rational(geometry.min_enclosing_factor(target, body))}, out)
    elif op == "epsilon0":
        eps0, t_crit = get_chain_service().epsilon0(body, center_point)
        emit({"epsilon0": format_rational(eps0), "tCrit": format_rational(t_crit)}, out)
