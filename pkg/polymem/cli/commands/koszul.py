import click

from polymem.cli.inputs import INPUT, emit, load_body, load_polytope, output_option, protocol_options, provenance, with_protocol
from polymem.dependencies.services import get_koszul_service
from polymem.schemas.reports import KoszulSchema


@click.command("koszul")
@click.argument("support", type=INPUT)
@click.argument("body", type=INPUT)
@click.option("--k", type=int, default=2, show_default=True, help="Number of generators")
@protocol_options
@output_option
@click.pass_context
@with_protocol
def koszul(ctx, support, body, k, primes, seeds, out):
    """Alternating-sum syzygy counts for multipliers on SUPPORT against the computed kernel."""
    report = get_koszul_service().compare(load_body(support), load_polytope(body), k, primes, seeds)
    emit(KoszulSchema.from_model(report, provenance(ctx, primes, seeds)), out)
