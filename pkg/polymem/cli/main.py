import logging
import sys
from typing import Optional, Sequence

import click

from polymem import __version__
from polymem.cli.commands.chain import chain
from polymem.cli.commands.foundation import foundation
from polymem.cli.commands.koszul import koszul
from polymem.cli.commands.membership import decompose, membership
from polymem.cli.commands.osculate import osculate
from polymem.cli.commands.polytope import polytope
from polymem.cli.commands.stabilize import stabilize
from polymem.cli.commands.verify import verify
from polymem.core.config import settings
from polymem.exceptions.errors import EXIT_FAILURE, EXIT_OK
from polymem.middlewares.setup import setup_middlewares


def configure_logging(verbose: int) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.LOG_LEVEL.upper())
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)


@click.group()
@click.option("-v", "--verbose", count=True, help="Log solver details at DEBUG level")
@click.version_option(__version__, prog_name="polymem")
def cli(verbose: int) -> None:
    """Effective membership experiments for sparse polynomial systems."""
    configure_logging(verbose)


for command in (membership, decompose, chain, foundation, stabilize, koszul, osculate, polytope, verify):
    cli.add_command(command)

# Set up middlewares
setup_middlewares(cli)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the process exit code; usage errors map to 1."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="polymem", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_FAILURE
    except click.Abort:
        return EXIT_FAILURE
    return result if isinstance(result, int) else EXIT_OK
