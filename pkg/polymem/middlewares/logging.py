import logging
import time
from typing import Callable

import click

logger = logging.getLogger(__name__)


class LoggingMiddleware:
    """Middleware for logging command invocations and their timing"""

    def dispatch(self, ctx: click.Context, call_next: Callable):
        """
        Run the command, log timing and outcome.

        Args:
            ctx: The click context of the command
            call_next: The next middleware or the command callback

        Returns:
            The command's return value
        """
        start_time = time.time()
        command = ctx.command_path
        params = {k: v for k, v in ctx.params.items() if v not in (None, (), [])}

        logger.info(f"Command: {command} {params}")
        try:
            result = call_next()
            process_time = time.time() - start_time
            logger.info(f"Command: {command} - Completed in {process_time:.4f}s")
            return result
        except Exception as e:
            process_time = time.time() - start_time
            logger.error(f"Command: {command} - Error: {str(e)} - Terminated in {process_time:.4f}s")
            raise
