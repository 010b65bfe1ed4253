import json
import logging

import click
from pydantic import ValidationError

from polymem.exceptions.errors import EXIT_FAILURE, BaseCustomError
from polymem.utils.response import create_response, render_response

logger = logging.getLogger(__name__)


def handle_exception(exc: Exception) -> int:
    """
    Report an exception as an error envelope on stderr.

    Args:
        exc: The exception raised by a command

    Returns:
        Process exit code
    """
    if isinstance(exc, ValidationError):
        # Pydantic validation errors
        errors = [f"{'.'.join(str(loc) for loc in err['loc'])}: {err['msg']}" for err in exc.errors()]
        response = create_response(success=False, message="Validation error", errors=errors, error_code="VALIDATION_ERROR")
        exit_code = EXIT_FAILURE
    elif isinstance(exc, json.JSONDecodeError):
        response = create_response(
            success=False,
            message="Malformed JSON input",
            errors=[f"line {exc.lineno} column {exc.colno}: {exc.msg}"],
            error_code="VALIDATION_ERROR",
        )
        exit_code = EXIT_FAILURE
    elif isinstance(exc, BaseCustomError):
        # Handle all custom errors with one branch
        response = create_response(success=False, message=exc.detail, errors=[exc.detail], error_code=exc.error_code)
        exit_code = exc.exit_code
    else:
        logger.exception("Unhandled exception")
        response = create_response(success=False, message="Internal error", errors=[str(exc)], error_code="INTERNAL_ERROR")
        exit_code = EXIT_FAILURE
    click.echo(render_response(response), err=True, nl=False)
    return exit_code
