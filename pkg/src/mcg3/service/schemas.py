"""Request and response models for the analysis endpoints.

The manifold spec and presentation payloads are plain JSON objects in the
documented wire formats; field-level validation happens in the core parsers so
error messages can name the offending prime or token.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class LensClassifyRequest(BaseModel):
    p: int
    q: int
    q_prime: Optional[int] = None


class LensClassifyResponse(BaseModel):
    p: int
    q: int
    q_prime: Optional[int] = None
    mcg: list[str]
    homeomorphic: Optional[bool] = None
    homotopy_equivalent: Optional[bool] = None


class ManifoldRequest(BaseModel):
    primes: list[dict]


class AbelianizationOut(BaseModel):
    free_rank: int
    torsion_factors: list[int]


class ManifoldAnalysis(BaseModel):
    counts: dict[str, int]
    species: list[list[int]]
    pi1: dict
    abelianization: AbelianizationOut
    spinorial: bool
    extension: str
    kernel_rank: int
    hendriks_per_prime: list[Optional[bool]]
    hendriks_all: Optional[bool]
    warnings: list[str] = Field(default_factory=list)


class BuildMcgRequest(BaseModel):
    primes: list[dict]
    emit_automorphisms: bool = False
    emit_presentation: bool = False


class GeneratorOut(BaseModel):
    kind: str
    label: str
    indices: dict[str, int]


class SemidirectOut(BaseModel):
    splits: bool
    slide_generators: list[str]
    particle_generators: list[str]
    particle_group_order: Optional[int] = None


class BuildMcgResponse(BaseModel):
    generators: list[GeneratorOut]
    counts: dict[str, int]
    internal_unknown: list[int]
    kernel_rank: int
    extension: str
    semidirect: SemidirectOut
    pi1: dict
    automorphisms: Optional[dict[str, dict[str, str]]] = None
    presentation: Optional[dict] = None
    three_generator_presentation: Optional[dict] = None
    warnings: list[str] = Field(default_factory=list)


class DecideWordRequest(BaseModel):
    presentation: dict
    word: str
    depth: int = 8
    degree: int = 5
    max_steps: int = 2_000_000


class DerivationStepOut(BaseModel):
    position: int
    insert: list[str]


class WitnessOut(BaseModel):
    degree: int
    assignment: dict[str, list[int]]
    image: list[int]
    image_order: int


class BudgetUsedOut(BaseModel):
    t1_depth: int
    t2_degree: int
    steps: int


class DecideWordResponse(BaseModel):
    verdict: str
    word: str
    derivation: Optional[list[DerivationStepOut]] = None
    witness: Optional[WitnessOut] = None
    budget_used: Optional[BudgetUsedOut] = None


class EnumerateHomsRequest(BaseModel):
    presentation: dict
    degree: int


class EnumerateHomsResponse(BaseModel):
    degree: int
    count: int
    homomorphisms: list[dict[str, list[int]]]


class ClassifyRepsRequest(BaseModel):
    target: str = "rp3-sum"
    samples: int = 16
    tolerance: float = 1e-9
    seed: int = 0


Complex = list[float]  # [real, imaginary]


class RepEntryOut(BaseModel):
    name: str
    dimension: int
    parameter: Optional[float] = None
    matrices: dict[str, list[list[Complex]]]
    sector: str
    central_scalar: Optional[Complex] = None
    commutant_dimension: int
    verified: bool


class ClassifyRepsResponse(BaseModel):
    target: str
    group: dict
    one_dimensional_count: int
    entries: list[RepEntryOut]
