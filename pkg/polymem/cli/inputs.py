"""Input loading and option plumbing shared by the subcommands."""
import functools
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import click

from polymem.core.config import settings, validate_prime
from polymem.exceptions.errors import DimensionMismatchError, InputError
from polymem.models.membership import SystemSpec
from polymem.models.polytope import HPolytope, PointSet, RationalPoint, newton_polytope
from polymem.repositories.base import JsonRepository, dumps, read_json, write_atomic
from polymem.schemas.base import parse_rational
from polymem.schemas.geometry import PointSetSchema, parse_body
from polymem.schemas.polynomial import GeneratorsSchema, SparsePolySchema
from polymem.schemas.reports import ProvenanceSchema
from polymem.services.membership_service import MembershipService

point_sets = JsonRepository(PointSetSchema)
polynomials = JsonRepository(SparsePolySchema)
generator_lists = JsonRepository(GeneratorsSchema)

INPUT = click.Path(dir_okay=False)


def protocol_options(command):
    """--prime and --seed, both repeatable."""
    command = click.option(
        "--seed", "seeds", type=int, multiple=True, help="RNG seed (repeatable); defaults to the protocol pair"
    )(command)
    command = click.option(
        "--prime", "primes", type=int, multiple=True, help="Field prime (repeatable); defaults to the protocol pair"
    )(command)
    return command


def output_option(command):
    return click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here instead of stdout")(command)


def resolve_protocol(primes: Sequence[int], seeds: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Validated primes and seeds, falling back to settings."""
    primes = [validate_prime(p) for p in primes] or settings.PROTOCOL_PRIMES
    seeds = list(seeds) or settings.PROTOCOL_SEEDS
    for seed in seeds:
        if not 0 <= seed < 2**64:
            raise InputError(f"seed {seed} is not a 64-bit unsigned integer")
    return primes, seeds


def with_protocol(callback):
    """Replace the raw --prime/--seed tuples by resolved lists."""

    @functools.wraps(callback)
    def wrapper(*args, primes, seeds, **kwargs):
        primes, seeds = resolve_protocol(primes, seeds)
        return callback(*args, primes=primes, seeds=seeds, **kwargs)

    return wrapper


def provenance(ctx: click.Context, primes: Sequence[int], seeds: Sequence[int]) -> ProvenanceSchema:
    options: Dict[str, Any] = {}
    for key, value in sorted(ctx.params.items()):
        if key in ("out", "primes", "seeds", "fmt") or value is None:
            continue
        options[key] = list(value) if isinstance(value, tuple) else value
    return ProvenanceSchema(command=ctx.info_name, primes=list(primes), seeds=list(seeds), options=options)


def emit(document, out: Optional[str]) -> None:
    """Write a report to --out atomically, or to stdout."""
    text = document if isinstance(document, str) else dumps(document)
    if out:
        write_atomic(out, text)
    else:
        click.echo(text, nl=False)


def load_body(path: str) -> Union[HPolytope, PointSet]:
    return parse_body(read_json(path))


def load_points(path: str) -> PointSet:
    """Lattice points of a point-set or polytope file."""
    body = load_body(path)
    return body.lattice_points if isinstance(body, HPolytope) else body


def load_polytope(path: str) -> HPolytope:
    """A polytope file, or the hull of a point-set file."""
    body = load_body(path)
    return body if isinstance(body, HPolytope) else newton_polytope(body)


def parse_vector(text: Optional[str], dim: Optional[int] = None) -> Optional[RationalPoint]:
    """Comma-separated rationals such as '1/3,1/3'."""
    if text is None:
        return None
    try:
        vector = tuple(parse_rational(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if dim is not None and len(vector) != dim:
        raise DimensionMismatchError(f"vector {text} does not have {dim} coordinates")
    return vector


def build_system(
    service: MembershipService,
    target: PointSet,
    body_path: str,
    support_paths: Sequence[str],
    generators_path: Optional[str],
    k: int,
    factor: Optional[str],
    allow_outside_hypotheses: bool,
) -> SystemSpec:
    """
    Membership system from CLI inputs.

    Multiplier supports come from --support files when given, otherwise from
    the foundation of the target with respect to the body.
    """
    explicit = None
    if generators_path:
        explicit = tuple(g.integer_terms() for g in generator_lists.load(generators_path).generators)
        k = len(explicit)
    if k < 1:
        raise InputError("--k must be at least 1")
    body = load_body(body_path)
    generator_support = body.lattice_points if isinstance(body, HPolytope) else body
    translation: Tuple[int, ...] = ()
    within = k + 1 <= target.dim
    if support_paths:
        supports = tuple(load_points(p) for p in support_paths)
        if len(supports) == 1:
            supports = supports * k
        if len(supports) != k:
            raise DimensionMismatchError(f"{len(supports)} support files for {k} generators")
    else:
        polytope = body if isinstance(body, HPolytope) else newton_polytope(body)
        override = parse_factor(factor)
        foundation = service.foundation_supports(target, polytope, k, allow_outside_hypotheses, override)
        supports, translation, within = foundation.supports, foundation.translation, foundation.within_hypotheses
    return SystemSpec(
        target,
        supports,
        (generator_support,) * k if explicit is None else (),
        generators=explicit,
        translation=translation,
        within_hypotheses=within,
    )


def system_options(command):
    """Options describing multiplier supports and generators."""
    command = click.option("--allow-outside-hypotheses", is_flag=True, help="Allow k + 1 > n for the foundation")(command)
    command = click.option("--t", "factor", type=str, default=None, help="Foundation factor override, e.g. 3/2")(command)
    command = click.option("--k", type=int, default=1, show_default=True, help="Number of generators")(command)
    command = click.option("--generators", type=INPUT, default=None, help="Explicit generators file")(command)
    command = click.option(
        "--support", "supports", type=INPUT, multiple=True, help="Multiplier support file (once for all, or per generator)"
    )(command)
    return command


def parse_factor(text: Optional[str]):
    """Rational option value such as '3/2'; None passes through."""
    if text is None:
        return None
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
