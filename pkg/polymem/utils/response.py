from typing import List, Optional, TypeVar

from polymem.dtos.custom_response_dto import CustomResponse
from polymem.repositories.base import dumps

T = TypeVar('T')


def create_response(
    data: Optional[T] = None,
    message: Optional[str] = None,
    errors: Optional[List[str]] = None,
    error_code: Optional[str] = None,
    success: bool = True,
) -> CustomResponse:
    return CustomResponse[T](
        success=success,
        data=data,
        message=message,
        errors=errors,
        error_code=error_code
    )


def render_response(response: CustomResponse) -> str:
    """Envelope as deterministic JSON text."""
    return dumps(response.dict())
