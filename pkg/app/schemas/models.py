"""
Pydantic models for the twisted-conjugacy toolkit
Report payloads written to standard output, the CLI request object and the
structure-constant cache file format
"""
from enum import Enum
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import ENUMERATION_CONFIG


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class Suite(str, Enum):
    PAPER_EXAMPLES = "paper-examples"
    LEMMAS = "lemmas"
    CHEVALLEY_RELATIONS = "chevalley-relations"
    ALL = "all"


class WitnessKind(str, Enum):
    CASE_I = "CaseI"
    CASE_II = "CaseII"


class ClassicalKind(str, Enum):
    GL = "GL"
    SL = "SL"
    PSL = "PSL"
    DIAGONAL = "Diagonal"
    UNITRIANGULAR = "Unitriangular"
    BOREL2 = "Borel2"


# ── Cache file ────────────────────────────────────────────────────────────────

class StructureConstantEntry(BaseModel):
    alpha: List[int]
    beta: List[int]
    N: int


class StructureConstantCache(BaseModel):
    version: int = Field(..., description="Convention version the table was computed under")
    type: str
    rank: int = Field(..., ge=1)
    constants: List[StructureConstantEntry]
    signs_convention: str = Field("extraspecial-positive")


# ── Reports ───────────────────────────────────────────────────────────────────

class Report(BaseModel):
    """Base for every JSON document written to standard output"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(1, serialization_alias="schema")


class RootSystemReport(Report):
    type: str
    rank: int
    root_count: int
    roots: List[List[int]] = Field(..., description="Positive roots first, each half in height order")
    cartan_matrix: List[List[int]]
    gamma: List[str] = Field(..., description="Diagram automorphisms in 1-based cycle notation")


class GammaReport(Report):
    type: str
    rank: int
    order: int
    elements: List[str]


class GroupBuildReport(Report):
    label: str
    order: int
    generator_count: int


class ClassSummary(BaseModel):
    rep: Any = Field(..., description="Encoding-minimal element: a matrix, or a list of matrices for products")
    size: int


class ReidemeisterReport(Report):
    group: str
    phi: str
    R: int
    classes: List[ClassSummary]
    coincidence_surjective: bool
    fixed_subgroup_order: int
    note: Optional[str] = None


class SolveUnipotentReport(Report):
    p: int
    d: List[int]
    g: List[List[int]]
    y: List[List[int]]
    verified: bool


class TorusFixedReport(Report):
    type: str
    rho: str
    d: int = Field(..., ge=0)
    witness_kind: WitnessKind
    alpha: List[int] = Field(..., description="1-based simple root indices used by the witness")
    p: Optional[int] = None
    fixed_for_all_t: bool
    nontrivial_t: Optional[int] = None
    verified: bool
    note: str


class CheckResult(BaseModel):
    """One row of a verify-suite table"""
    name: str
    passed: bool
    checked: int = 0
    detail: str = ""


class SuiteReport(Report):
    suite: Suite
    seed: int
    passed: bool
    results: List[CheckResult]


# ── Request ───────────────────────────────────────────────────────────────────

class RunConfig(BaseModel):
    """Validated CLI request"""
    subcommand: str
    group: Optional[str] = None
    phi: Optional[str] = None
    p: Optional[int] = Field(None, ge=2)
    output_format: OutputFormat = OutputFormat.JSON
    cache_dir: Optional[str] = None
    cap: int = Field(ENUMERATION_CONFIG.ENUMERATION_CAP, ge=1)
    seed: int = 0


# ── Parsed CLI specs ──────────────────────────────────────────────────────────

class GroupSpec(BaseModel):
    """Parsed group spec such as A:2:3:adjoint, U:3:5 or prod:SL:2:3^2"""
    family: str = Field(..., description="chevalley, classical or product")
    text: str
    type_label: Optional[str] = None
    rank: Optional[int] = None
    form: Optional[str] = None
    kind: Optional[ClassicalKind] = None
    n: Optional[int] = None
    p: Optional[int] = None
    factors: List["GroupSpec"] = Field(default_factory=list)
    power: Optional[int] = Field(None, description="Set when all factors are one repeated group")


class PhiSpec(BaseModel):
    """Parsed automorphism spec such as inner:g1*g2^-1 or product:identity;identity:sigma=(1 2)"""
    kind: str
    text: str
    word: List[List[int]] = Field(default_factory=list, description="[generator index, exponent] pairs")
    cycles: Optional[str] = None
    r: Optional[int] = None
    d: List[int] = Field(default_factory=list)
    parts: List["PhiSpec"] = Field(default_factory=list)
