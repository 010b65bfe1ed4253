import click

from polymem.cli.inputs import (
    INPUT,
    build_system,
    emit,
    load_points,
    output_option,
    polynomials,
    protocol_options,
    provenance,
    system_options,
    with_protocol,
)
from polymem.dependencies.services import get_membership_service
from polymem.schemas.reports import DecompositionSchema, MembershipReportSchema


@click.command("membership")
@click.argument("target", type=INPUT)
@click.argument("body", type=INPUT)
@system_options
@protocol_options
@output_option
@click.pass_context
@with_protocol
def membership(ctx, target, body, supports, generators, k, factor, allow_outside_hypotheses, primes, seeds, out):
    """dim W, dim Ker, dim V and a basis of V for TARGET and generators on BODY."""
    service = get_membership_service()
    system = build_system(service, load_points(target), body, supports, generators, k, factor, allow_outside_hypotheses)
    report = service.run_protocol(system, primes, seeds)
    emit(MembershipReportSchema.from_model(report, provenance(ctx, primes, seeds)), out)


@click.command("decompose")
@click.argument("poly", type=INPUT)
@click.argument("target", type=INPUT)
@click.argument("body", type=INPUT)
@system_options
@protocol_options
@output_option
@click.pass_context
@with_protocol
def decompose(ctx, poly, target, body, supports, generators, k, factor, allow_outside_hypotheses, primes, seeds, out):
    """Write POLY as a combination of the generators, using the first prime and seed."""
    service = get_membership_service()
    system = build_system(service, load_points(target), body, supports, generators, k, factor, allow_outside_hypotheses)
    prime, seed = primes[0], seeds[0]
    problem = system.realize(prime, seed)
    decomposition = service.decompose(polynomials.load(poly).to_model(prime), problem)
    emit(DecompositionSchema.from_model(decomposition, provenance(ctx, [prime], [seed])), out)
