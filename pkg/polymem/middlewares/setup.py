import functools
from typing import Callable, List

import click

from polymem.middlewares.errors import ExceptionMiddleware
from polymem.middlewares.logging import LoggingMiddleware


def _wrap(callback: Callable, middlewares: List) -> Callable:
    @functools.wraps(callback)
    def wrapped(*args, **kwargs):
        ctx = click.get_current_context()

        def call(index: int):
            if index == len(middlewares):
                return callback(*args, **kwargs)
            return middlewares[index].dispatch(ctx, lambda: call(index + 1))

        return call(0)

    return wrapped


def setup_middlewares(cli: click.Group) -> None:
    """
    Set up all middlewares for the command group.

    Args:
        cli: The root command group
    """
    # outermost first: errors are rendered after the logging layer has seen them
    middlewares = [ExceptionMiddleware(), LoggingMiddleware()]
    for command in cli.commands.values():
        if command.callback is not None:
            command.callback = _wrap(command.callback, middlewares)
