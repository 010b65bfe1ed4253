import click

from polymem.cli.inputs import INPUT, emit, load_points, load_polytope, output_option, parse_factor, protocol_options, provenance, with_protocol
from polymem.dependencies.services import get_membership_service
from polymem.schemas.reports import FoundationSchema, MembershipReportSchema


@click.command("foundation")
@click.argument("target", type=INPUT)
@click.argument("body", type=INPUT)
@click.option("--k", type=int, default=1, show_default=True, help="Number of generators")
@click.option("--t", "factor", type=str, default=None, help="Factor override, e.g. 3/2")
@click.option("--allow-outside-hypotheses", is_flag=True, help="Allow k + 1 > n")
@protocol_options
@output_option
@click.pass_context
@with_protocol
def foundation(ctx, target, body, k, factor, allow_outside_hypotheses, primes, seeds, out):
    """Foundation supports k x Z(tB) for TARGET and the dimension report they give."""
    service = get_membership_service()
    points, polytope = load_points(target), load_polytope(body)
    override = parse_factor(factor)
    found = service.foundation_supports(points, polytope, k, allow_outside_hypotheses, override)
    report = service.run_protocol(service.foundation_system(points, polytope, k, found), primes, seeds)
    emit(FoundationSchema.from_model(found, MembershipReportSchema.from_model(report), provenance(ctx, primes, seeds)), out)
