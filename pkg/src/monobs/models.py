#!/usr/bin/env python3
"""
Pydantic models for input documents and command output.
"""

from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator


def format_rational(value) -> str:
    """Serialize an exact rational as "p/q" in lowest terms ("p" when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_vector(values) -> List[str]:
    return [format_rational(v) for v in values]


class IdealDocument(BaseModel):
    """Structured ideal description: {"vars": n, "generators": [[...], ...]}."""
    model_config = ConfigDict(extra="forbid")

    vars: StrictInt = Field(ge=1)
    generators: List[List[StrictInt]] = Field(min_length=1)

    @model_validator(mode="after")
    def check_generators(self) -> "IdealDocument":
        for gen in self.generators:
            if len(gen) != self.vars:
                raise ValueError(
                    f"generator {gen} has length {len(gen)}, expected {self.vars}"
                )
            if any(x < 0 for x in gen):
                raise ValueError(f"generator {gen} has a negative exponent")
        return self


class FacetInfo(BaseModel):
    """A facet functional of the Newton polyhedron."""
    functional: List[str]
    modulus: int
    in_coordinate_hyperplane: bool


class ConeInfo(BaseModel):
    """A cone of the fan over a face of the Newton polyhedron."""
    facets: List[int]
    coordinates: List[int]
    rays: List[List[int]]
    dim: int
    maximal: bool
    in_coordinate_hyperplane: bool


class NewtonDocument(BaseModel):
    vars: int
    generators: List[List[int]]
    facets: List[FacetInfo]
    cones: List[ConeInfo]
    integrality_modulus: int


class LctDocument(BaseModel):
    lct: str


class JumpingDocument(BaseModel):
    jumping: List[str]


class NuDocument(BaseModel):
    nu: int


class FThresholdDocument(BaseModel):
    fthreshold: str


class LawDocument(BaseModel):
    """Quasi-linear law nu(q) = alpha*q + gamma_j for q = j mod N."""
    modulus: int
    slope: str
    intercepts: Dict[str, str]
    q_min: int
    trace: Optional[Dict[str, List[List[int]]]] = None


class CertificateInfo(BaseModel):
    """One certificate; cone indexes the cone list of the newton command, zero cone first."""
    root: str
    cone: int
    residue: List[int]
    representative: List[int]
    correction: str
    trace: List[List[str]]


class RootsDocument(BaseModel):
    """Root set of the Bernstein-Sato polynomial, largest first."""
    roots: List[str]
    agreement: Optional[bool] = None
    mod_z_classes: Optional[List[str]] = None
    certificates: Optional[List[CertificateInfo]] = None
    unrealized: Optional[Dict[str, int]] = None


class ModZDocument(BaseModel):
    classes: List[str]


class Prop1Document(BaseModel):
    nu: int
    residue: int
    vanishes: bool


class PeriodicityDocument(BaseModel):
    differences: List[int]
    preperiod: int
    period: int


class ErrorDocument(BaseModel):
    error: str
    message: str
    trace: Optional[List] = None


class CriterionResult(BaseModel):
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float


class SelftestDocument(BaseModel):
    passed: bool
    criteria: List[CriterionResult]
