import click

from polymem.cli.inputs import INPUT, emit, load_polytope, output_option, parse_factor, parse_vector, provenance
from polymem.core.config import settings
from polymem.dependencies.services import get_chain_service
from polymem.models.chain import FacetOrder
from polymem.schemas.reports import ChainSchema

ORDERS = click.Choice([o.value for o in FacetOrder])


@click.command("chain")
@click.argument("body", type=INPUT)
@click.option("--t", "t_max", type=str, default="3", show_default=True, help="Grow until the factor reaches this value")
@click.option("--center", type=str, default=None, help="Homothety center, e.g. 1/3,1/3")
@click.option("--order", type=ORDERS, default=FacetOrder.ASCENDING.value, show_default=True)
@click.option("--step", type=str, default=None, help="Equidistant additive factor step per round")
@click.option("--negative", is_flag=True, help="Build the descending chain towards the interior points")
@click.option("--seed", type=int, default=None, help="Seed for the facet order")
@output_option
@click.pass_context
def chain(ctx, body, t_max, center, order, step, negative, seed, out):
    """Normal chain of BODY with per-step validation reports."""
    service = get_chain_service()
    polytope = load_polytope(body)
    center = parse_vector(center, polytope.dim)
    seed = settings.SEED_DEFAULT if seed is None else seed
    if negative:
        result = service.negative_chain(polytope, center, seed)
    else:
        result = service.build_normal_chain(
            polytope,
            parse_factor(t_max),
            center,
            FacetOrder(order),
            parse_factor(step),
            seed,
        )
    emit(ChainSchema.from_model(result, provenance(ctx, [], [seed])), out)
