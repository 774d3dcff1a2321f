"""Graph data models: immutable simple graphs and rooted distance layers."""

from functools import cached_property
from typing import FrozenSet, Iterator, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Sorted tuple of distinct vertex indices.
VertexSet = Tuple[int, ...]


class Graph(BaseModel):
    """Simple undirected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the strictly increasing tuple of neighbors of ``v``.
    Build instances with :func:`src.services.graph_ops.build_graph`; the
    validator only re-checks the invariants.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="Vertex count")
    adjacency: Tuple[Tuple[int, ...], ...] = Field(
        description="Per-vertex sorted neighbor tuples"
    )

    @model_validator(mode="after")
    def _check_simple(self) -> "Graph":
        if len(self.adjacency) != self.n:
            raise ValueError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        for v, row in enumerate(self.adjacency):
            for i, u in enumerate(row):
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of vertex {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if i and row[i - 1] >= u:
                    raise ValueError(f"neighbors of vertex {v} not strictly increasing")
        for v, row in enumerate(self.adjacency):
            for u in row:
                if v not in self.neighbor_sets[u]:
                    raise ValueError(f"asymmetric edge {v}-{u}")
        return self

    @cached_property
    def neighbor_sets(self) -> Tuple[FrozenSet[int], ...]:
        """Adjacency as frozensets, for O(1) membership."""
        return tuple(frozenset(row) for row in self.adjacency)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.neighbor_sets[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v

    @cached_property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2


class RootedLayers(BaseModel):
    """First and second neighborhoods of a root vertex.

    ``s1`` is N(r) and ``s2`` the vertices at distance exactly two.  In a
    residual graph both are the original layers intersected with the
    surviving vertices.
    """

    model_config = ConfigDict(frozen=True)

    root: int = Field(ge=0)
    s1: VertexSet
    s2: VertexSet

    @model_validator(mode="after")
    def _check_disjoint(self) -> "RootedLayers":
        s1, s2 = set(self.s1), set(self.s2)
        if self.root in s1 or self.root in s2:
            raise ValueError("root must not lie in its own layers")
        if s1 & s2:
            raise ValueError(f"layers overlap on {sorted(s1 & s2)}")
        if list(self.s1) != sorted(s1) or list(self.s2) != sorted(s2):
            raise ValueError("layers must be strictly increasing")
        return self

    @cached_property
    def s1_set(self) -> FrozenSet[int]:
        return frozenset(self.s1)

    @cached_property
    def s2_set(self) -> FrozenSet[int]:
        return frozenset(self.s2)
