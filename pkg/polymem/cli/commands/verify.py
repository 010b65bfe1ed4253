import csv
import io
from typing import List

import click

from polymem.cli.inputs import emit, output_option, protocol_options, with_protocol
from polymem.dependencies.services import get_verify_service
from polymem.exceptions.errors import EXIT_FAILURE
from polymem.schemas.reports import CriterionResult
from polymem.utils.response import create_response


def to_csv(results: List[CriterionResult]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["suite", "name", "passed", "detail"])
    for result in results:
        writer.writerow([result.suite, result.name, str(result.passed).lower(), result.detail])
    return buffer.getvalue()


@click.command("verify")
@click.option("--suite", default="all", show_default=True, help="Suite name, or all")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@protocol_options
@output_option
@click.pass_context
@with_protocol
def verify(ctx, suite, fmt, primes, seeds, out):
    """Run an acceptance suite; exits non-zero unless every criterion passes."""
    results = get_verify_service().run(suite, primes, seeds)
    passed = sum(r.passed for r in results)
    if fmt == "csv":
        emit(to_csv(results), out)
    else:
        emit(
            create_response(
                data=[r.dict(by_alias=True) for r in results],
                message=f"{passed}/{len(results)} criteria passed",
                success=passed == len(results),
            ),
            out,
        )
    if passed != len(results):
        ctx.exit(EXIT_FAILURE)
