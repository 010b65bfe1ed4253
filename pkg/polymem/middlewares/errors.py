from typing import Callable

import click

from polymem.exceptions.handlers import handle_exception


class ExceptionMiddleware:
    """Turns exceptions into error envelopes and exit codes"""

    def dispatch(self, ctx: click.Context, call_next: Callable):
        try:
            return call_next()
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as exc:
            ctx.exit(handle_exception(exc))
