"""Hunter data models: extraction pieces, labels, reductions and outcomes."""

from enum import Enum
from functools import cached_property
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.graph import VertexSet
from src.models.tree import Embedding, TreeGraph


class HuntStatus(str, Enum):
    """Outcome of a hunt."""

    FOUND = "found"
    NOT_FOUND = "not_found"
    PREMISE_VIOLATED = "premise_violated"
    STEP_FAILED = "step_failed"


class HuntBranch(str, Enum):
    """Which construction produced a certificate."""

    PHASE1 = "phase1"
    MATCHING = "matching"
    MAIN = "main"
    ORACLE = "oracle"


class ExtractionPiece(BaseModel):
    """One phase-1 quintuple inducing T(2,1), with the vertices it removes."""

    model_config = ConfigDict(frozen=True)

    v1: int
    w1a: int
    w1b: int
    x1a: int
    x1b: int
    deletion_set: VertexSet

    @model_validator(mode="after")
    def _check_distinct(self) -> "ExtractionPiece":
        five = self.vertices
        if len(set(five)) != 5:
            raise ValueError(f"piece vertices must be distinct: {five}")
        if not set(five) <= set(self.deletion_set):
            raise ValueError("deletion set must contain the piece")
        return self

    @property
    def vertices(self) -> Tuple[int, int, int, int, int]:
        return (self.v1, self.w1a, self.w1b, self.x1a, self.x1b)


class LabelPair(BaseModel):
    """The pair ``w_a(v), w_b(v)`` chosen for an S1 vertex (possibly equal)."""

    model_config = ConfigDict(frozen=True)

    v: int
    wa: int
    wb: int


class HReduction(BaseModel):
    """Labeled vertices ``h_star`` and the minimal dominating subset ``h``."""

    model_config = ConfigDict(frozen=True)

    h_star: VertexSet
    h: VertexSet
    dominator: Dict[int, int]

    @model_validator(mode="after")
    def _check_domination(self) -> "HReduction":
        if not set(self.h) <= set(self.h_star):
            raise ValueError("h must be a subset of h_star")
        missing = [x for x in self.h_star if self.dominator.get(x) not in self.h_set]
        if missing:
            raise ValueError(f"vertices without a dominator in h: {missing}")
        return self

    @cached_property
    def h_set(self) -> frozenset:
        return frozenset(self.h)


class GstTree(BaseModel):
    """An induced T(2t+1, 8) inside H with the z', z(i), z(i,j) accessors.

    Rows ``i`` and leaves ``j`` are 0-based here.
    """

    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1)
    tree: TreeGraph
    embedding: Embedding

    @property
    def z_prime(self) -> int:
        return self.embedding.mapping[self.tree.root]

    @property
    def rows(self) -> int:
        return len(self.tree.children[self.tree.root])

    def z(self, i: int) -> int:
        return self.embedding.mapping[self.tree.children[self.tree.root][i]]

    def leaf(self, i: int, j: int) -> int:
        branch = self.tree.children[self.tree.root][i]
        return self.embedding.mapping[self.tree.children[branch][j]]

    def leaves(self, i: int) -> Tuple[int, ...]:
        branch = self.tree.children[self.tree.root][i]
        return tuple(self.embedding.mapping[x] for x in self.tree.children[branch])

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.embedding.mapping)


class StallReport(BaseModel):
    """Which proof step could not proceed, and the vertices that show why."""

    model_config = ConfigDict(frozen=True)

    phase: str
    claim: str
    witness: Tuple[int, ...] = ()
    detail: str = ""
    center: Optional[int] = None


class TraceEvent(BaseModel):
    """One step of a hunt, kept in order for diagnostics."""

    model_config = ConfigDict(frozen=True)

    center: Optional[int]
    step: str
    detail: str = ""


class HuntOutcome(BaseModel):
    """Result of hunting T(t,2,1): a certificate or a structured report."""

    model_config = ConfigDict(frozen=True)

    status: HuntStatus
    t: int = Field(ge=1)
    certificate: Optional[Embedding] = None
    branch: Optional[HuntBranch] = None
    stall_report: Optional[StallReport] = None
    trace: Tuple[TraceEvent, ...] = ()

    @model_validator(mode="after")
    def _check_certificate(self) -> "HuntOutcome":
        if self.status == HuntStatus.FOUND and self.certificate is None:
            raise ValueError("found outcome must carry a certificate")
        if self.status != HuntStatus.FOUND and self.certificate is not None:
            raise ValueError(f"{self.status.value} outcome cannot carry a certificate")
        return self

    @property
    def root(self) -> Optional[int]:
        return self.certificate.root_image if self.certificate else None


class Phase1Result(BaseModel):
    """Pieces extracted around a center and the residual left behind."""

    model_config = ConfigDict(frozen=True)

    root: int
    pieces: Tuple[ExtractionPiece, ...] = ()
    residual: VertexSet
    stalled: bool
    certificate: Optional[Embedding] = None
    premise_violation: Optional[str] = None


class StallCheck(BaseModel):
    """Result of the structural stall test.

    ``condition`` names the failing condition (``complete_bipartite`` or
    ``laminar``) and ``witness`` is the quintuple ``(v, wa, wb, xa, xb)`` it
    yields.
    """

    model_config = ConfigDict(frozen=True)

    holds: bool
    condition: Optional[str] = None
    witness: Tuple[int, ...] = ()


class LeafProfile(BaseModel):
    """Tree vertices adjacent to an S1 vertex, and the shape rule it breaks, if any."""

    model_config = ConfigDict(frozen=True)

    vertex: int
    profile: VertexSet
    violation: Optional[str] = None


class CenterResult(BaseModel):
    """What the constructive pipeline produced for one candidate center."""

    model_config = ConfigDict(frozen=True)

    center: int
    certificate: Optional[Embedding] = None
    branch: Optional[HuntBranch] = None
    report: Optional[StallReport] = None
    trace: Tuple[TraceEvent, ...] = ()

    @property
    def found(self) -> bool:
        return self.certificate is not None
