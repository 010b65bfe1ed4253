from typing import List, Optional

from pydantic import Field, root_validator

from polymem.models.sparse_poly import SparsePoly, from_integers
from polymem.schemas.base import CamelModel


class TermSchema(CamelModel):
    """One monomial with its coefficient"""
    exp: List[int]
    coeff: int


class SparsePolySchema(CamelModel):
    """Sparse Laurent polynomial; integer coefficients are reduced on use"""
    dim: int = Field(..., ge=1, le=4)
    terms: List[TermSchema]
    prime: Optional[int] = None

    @root_validator(skip_on_failure=True)
    def exponents_match_dim(cls, values):
        """Validate every exponent has dim coordinates"""
        for term in values["terms"]:
            if len(term.exp) != values["dim"]:
                raise ValueError(f"exponent {term.exp} does not have {values['dim']} coordinates")
        return values

    def integer_terms(self):
        return tuple((tuple(t.exp), t.coeff) for t in self.terms)

    def to_model(self, prime: int) -> SparsePoly:
        return from_integers(self.dim, prime, self.integer_terms())

    @classmethod
    def from_model(cls, poly: SparsePoly) -> "SparsePolySchema":
        return cls(
            dim=poly.dim,
            prime=poly.prime,
            terms=[TermSchema(exp=list(e), coeff=c) for e, c in poly.terms.items()],
        )


class GeneratorsSchema(CamelModel):
    """Explicit generators of a membership problem"""
    generators: List[SparsePolySchema] = Field(..., min_items=1)
