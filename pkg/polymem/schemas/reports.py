from typing import Any, Dict, List, Optional

from pydantic import Field

from polymem.models.chain import NormalChain, ValidationReport
from polymem.models.membership import (
    Decomposition,
    Foundation,
    KoszulReport,
    MembershipReport,
    StabilizationReport,
)
from polymem.schemas.base import CamelModel, format_point, format_rational
from polymem.schemas.geometry import PointSetSchema, PolytopeSchema
from polymem.schemas.polynomial import SparsePolySchema


class ProvenanceSchema(CamelModel):
    """Parameters that determine a report"""
    command: str
    primes: List[int] = Field(default_factory=list)
    seeds: List[int] = Field(default_factory=list)
    options: Dict[str, Any] = Field(default_factory=dict)


class OmegaShapeSchema(CamelModel):
    rows: int
    cols: int


class MembershipReportSchema(CamelModel):
    dim_w: int
    dim_ker: int
    dim_v: int
    basis: List[SparsePolySchema]
    omega: OmegaShapeSchema
    primes: List[int]
    seeds: List[int]
    translation: List[int]
    within_hypotheses: bool
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, report: MembershipReport, config: Optional[ProvenanceSchema] = None) -> "MembershipReportSchema":
        return cls(
            dim_w=report.dim_w,
            dim_ker=report.dim_ker,
            dim_v=report.dim_v,
            basis=[SparsePolySchema.from_model(g) for g in report.basis],
            omega=OmegaShapeSchema(rows=report.omega_shape[0], cols=report.omega_shape[1]),
            primes=report.primes,
            seeds=report.seeds,
            translation=list(report.translation),
            within_hypotheses=report.within_hypotheses,
            config=config,
        )


class DecompositionSchema(CamelModel):
    member: bool
    multipliers: List[SparsePolySchema]
    kernel_dim: int
    prime: Optional[int]
    seed: Optional[int]
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, decomposition: Decomposition, config: Optional[ProvenanceSchema] = None) -> "DecompositionSchema":
        return cls(
            member=decomposition.member,
            multipliers=[SparsePolySchema.from_model(c) for c in decomposition.multipliers],
            kernel_dim=len(decomposition.kernel),
            prime=decomposition.prime,
            seed=decomposition.seed,
            config=config,
        )


class FoundationSchema(CamelModel):
    factor: str
    enclosing: str
    supports: List[PointSetSchema]
    translation: List[int]
    center: List[int]
    within_hypotheses: bool
    membership: Optional[MembershipReportSchema] = None
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, foundation: Foundation, membership: Optional[MembershipReportSchema] = None, config=None) -> "FoundationSchema":
        return cls(
            factor=format_rational(foundation.factor),
            enclosing=format_rational(foundation.enclosing),
            supports=[PointSetSchema.from_model(s) for s in foundation.supports],
            translation=list(foundation.translation),
            center=list(foundation.center),
            within_hypotheses=foundation.within_hypotheses,
            membership=membership,
            config=config,
        )


class ValidationSchema(CamelModel):
    passed: bool
    failures: List[str]
    new_points: int

    @classmethod
    def from_model(cls, report: ValidationReport) -> "ValidationSchema":
        return cls(passed=report.passed, failures=report.failures(), new_points=report.new_points)


class ChainStepSchema(CamelModel):
    facet: Optional[int]
    tau: str
    bracket: List[str]


class ChainSchema(CamelModel):
    epsilon0: str
    center: List[str]
    order: List[int]
    descending: bool
    equidistant_step: Optional[str]
    terms: List[PolytopeSchema]
    steps: List[ChainStepSchema]
    validations: List[ValidationSchema]
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, chain: NormalChain, config: Optional[ProvenanceSchema] = None) -> "ChainSchema":
        return cls(
            epsilon0=format_rational(chain.epsilon0),
            center=list(format_point(chain.center)),
            order=list(chain.order),
            descending=chain.descending,
            equidistant_step=format_rational(chain.equidistant_step) if chain.equidistant_step is not None else None,
            terms=[PolytopeSchema.from_model(t) for t in chain.terms],
            steps=[
                ChainStepSchema(facet=s.facet, tau=format_rational(s.tau), bracket=list(format_point(s.bracket)))
                for s in chain.steps
            ],
            validations=[ValidationSchema.from_model(r) for r in chain.reports],
            config=config,
        )


class StabilizationEntrySchema(CamelModel):
    index: int
    bracket: List[str]
    lattice_count: int
    dim_w: int
    dim_ker: int
    dim_v: int


class StepVariationSchema(CamelModel):
    index: int
    facet: Optional[int]
    delta_dim_w: int
    delta_dim_ker: int
    bound: int
    delta_eroded: int


class StabilizationSchema(CamelModel):
    start: Optional[int]
    constant: bool
    falsifications: List[int]
    changes: List[int]
    entries: List[StabilizationEntrySchema]
    variations: List[StepVariationSchema]
    chain: Optional[ChainSchema] = None
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, report: StabilizationReport, chain: Optional[ChainSchema] = None, config=None) -> "StabilizationSchema":
        return cls(
            start=report.start,
            constant=report.constant,
            falsifications=report.falsifications,
            changes=report.changes,
            entries=[
                StabilizationEntrySchema(
                    index=e.index,
                    bracket=list(format_point(e.bracket)),
                    lattice_count=e.lattice_count,
                    dim_w=e.dim_w,
                    dim_ker=e.dim_ker,
                    dim_v=e.dim_v,
                )
                for e in report.entries
            ],
            variations=[StepVariationSchema(**vars(v)) for v in report.variations],
            chain=chain,
            config=config,
        )


class KoszulSchema(CamelModel):
    k: int
    eroded_counts: List[int]
    corrected: int
    printed: int
    oracle: int
    confirmed_reading: str
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, report: KoszulReport, config: Optional[ProvenanceSchema] = None) -> "KoszulSchema":
        return cls(config=config, **vars(report))


class FlagEntrySchema(CamelModel):
    i: int
    achieved_multiplicity: Optional[int]
    polynomial: SparsePolySchema


class OsculationSchema(CamelModel):
    point: List[int]
    prime: int
    precision: int
    rank: int
    hull_dim: int
    dim_v: int
    consistent: bool
    bernstein: int
    kernel_dims: List[int]
    flags: List[FlagEntrySchema]
    config: Optional[ProvenanceSchema] = None

    @classmethod
    def from_model(cls, report, config: Optional[ProvenanceSchema] = None) -> "OsculationSchema":
        return cls(
            point=list(report.point),
            prime=report.prime,
            precision=report.precision,
            rank=report.rank,
            hull_dim=report.hull_dim,
            dim_v=report.dim_v,
            consistent=report.consistent,
            bernstein=report.bernstein,
            kernel_dims=report.kernel_dims,
            flags=[
                FlagEntrySchema(i=f.requested, achieved_multiplicity=f.achieved, polynomial=SparsePolySchema.from_model(f.polynomial))
                for f in report.flags
            ],
            config=config,
        )


class CriterionResult(CamelModel):
    """Outcome of one verification criterion"""
    suite: str
    name: str
    passed: bool
    detail: str = ""
