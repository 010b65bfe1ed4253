import click

from polymem.cli.inputs import INPUT, emit, load_points, output_option, polynomials, protocol_options, provenance, with_protocol
from polymem.dependencies.services import get_osculate_service
from polymem.schemas.reports import OsculationSchema


@click.command("osculate")
@click.argument("support", type=INPUT)
@click.argument("curve", type=INPUT)
@protocol_options
@output_option
@click.pass_context
@with_protocol
def osculate(ctx, support, curve, primes, seeds, out):
    """Osculating flag of polynomials on SUPPORT at a smooth point of CURVE (first prime and seed)."""
    prime, seed = primes[0], seeds[0]
    report = get_osculate_service().flag_report(load_points(support), polynomials.load(curve).to_model(prime), seed)
    emit(OsculationSchema.from_model(report, provenance(ctx, [prime], [seed])), out)
