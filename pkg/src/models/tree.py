"""Tree pattern data models."""

from functools import cached_property
from typing import Annotated, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.graph import Graph


class TreeSpec(BaseModel):
    """Level-uniform rooted tree.

    ``level_degrees = (d1, ..., dk)``: the root has ``d1`` children, every
    depth-1 vertex has ``d2`` children, and so on; depth-k vertices are
    leaves.  ``(a, b)`` is T(a,b) and ``(t, 2, 1)`` is T(t,2,1).
    """

    model_config = ConfigDict(frozen=True)

    level_degrees: Tuple[Annotated[int, Field(ge=1)], ...] = Field(min_length=1)

    @classmethod
    def parse(cls, text: str) -> "TreeSpec":
        """Parse a comma separated spec such as ``"3,2,1"``."""
        try:
            degrees = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"tree spec must be comma separated integers: {text!r}")
        return cls(level_degrees=degrees)

    @classmethod
    def t21(cls, t: int) -> "TreeSpec":
        """The radius-three tree T(t,2,1)."""
        return cls(level_degrees=(t, 2, 1))

    @property
    def depth(self) -> int:
        return len(self.level_degrees)

    def level_sizes(self) -> Tuple[int, ...]:
        sizes = [1]
        for d in self.level_degrees:
            sizes.append(sizes[-1] * d)
        return tuple(sizes)

    @property
    def vertex_count(self) -> int:
        return sum(self.level_sizes())

    @property
    def label(self) -> str:
        return "T(" + ",".join(str(d) for d in self.level_degrees) + ")"


class TreeGraph(BaseModel):
    """A :class:`TreeSpec` realized as a graph, vertices in breadth-first order."""

    model_config = ConfigDict(frozen=True)

    spec: TreeSpec
    graph: Graph
    root: int = 0
    depth_of: Tuple[int, ...]
    parent_of: Tuple[Optional[int], ...]

    @model_validator(mode="after")
    def _check_tree(self) -> "TreeGraph":
        n = self.graph.n
        if len(self.depth_of) != n or len(self.parent_of) != n:
            raise ValueError("depth/parent tables must cover every vertex")
        if n != self.spec.vertex_count or self.graph.edge_count != n - 1:
            raise ValueError(f"graph is not a realization of {self.spec.label}")
        if self.parent_of[self.root] is not None:
            raise ValueError("root has no parent")
        return self

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        kids = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parent_of):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    def level(self, depth: int) -> Tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.depth_of) if d == depth)


class Embedding(BaseModel):
    """Map from tree vertices to host vertices: ``mapping[x]`` is the image of ``x``."""

    model_config = ConfigDict(frozen=True)

    mapping: Tuple[Annotated[int, Field(ge=0)], ...]

    @field_validator("mapping")
    @classmethod
    def _non_empty(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("embedding must map at least the root")
        return v

    @property
    def root_image(self) -> int:
        return self.mapping[0]

    def image(self) -> Tuple[int, ...]:
        return tuple(sorted(self.mapping))
