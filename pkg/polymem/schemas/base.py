from fractions import Fraction
from typing import Sequence, Tuple, Union

from pydantic import BaseModel

Rational = Union[int, str]


def to_camel(name: str) -> str:
    """dim_ker -> dimKer"""
    head, *rest = name.split("_")
    return head + "".join(part.capitalize() for part in rest)


def parse_rational(value: Rational) -> Fraction:
    """Parse an integer or a 'p/q' string."""
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{value!r} is not a rational number") from exc


def format_rational(value) -> str:
    return str(Fraction(value))


def format_point(point: Sequence) -> Tuple[str, ...]:
    return tuple(format_rational(c) for c in point)


class CamelModel(BaseModel):
    """Base schema with camelCase JSON keys"""

    class Config:
        alias_generator = to_camel
        allow_population_by_field_name = True
