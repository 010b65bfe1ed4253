import csv
import io

import click

from polymem.cli.commands.chain import ORDERS
from polymem.cli.inputs import (
    INPUT,
    emit,
    load_points,
    load_polytope,
    output_option,
    parse_factor,
    parse_vector,
    protocol_options,
    provenance,
    with_protocol,
)
from polymem.dependencies.services import get_chain_service, get_membership_service
from polymem.models.chain import FacetOrder
from polymem.schemas.reports import StabilizationSchema

CSV_COLUMNS = ["index", "t1", "t2", "latticeCount", "dimW", "dimKer", "dimV"]


def to_csv(report: StabilizationSchema) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in report.entries:
        writer.writerow([entry.index, *entry.bracket, entry.lattice_count, entry.dim_w, entry.dim_ker, entry.dim_v])
    return buffer.getvalue()


@click.command("stabilize")
@click.argument("target", type=INPUT)
@click.argument("body", type=INPUT)
@click.option("--k", type=int, default=1, show_default=True, help="Number of generators")
@click.option("--t", "t_max", type=str, default="3", show_default=True, help="Chain length as a dilation factor")
@click.option("--center", type=str, default=None, help="Homothety center of the chain")
@click.option("--order", type=ORDERS, default=FacetOrder.ASCENDING.value, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@protocol_options
@output_option
@click.pass_context
@with_protocol
def stabilize(ctx, target, body, k, t_max, center, order, fmt, primes, seeds, out):
    """dim V along the normal chain of BODY, from the first term covering TARGET."""
    polytope = load_polytope(body)
    chain = get_chain_service().build_normal_chain(
        polytope, parse_factor(t_max), parse_vector(center, polytope.dim), FacetOrder(order), seed=seeds[0]
    )
    report = get_membership_service().stabilization_check(load_points(target), k, chain, primes, seeds)
    document = StabilizationSchema.from_model(report, config=provenance(ctx, primes, seeds))
    emit(to_csv(document) if fmt == "csv" else document, out)
