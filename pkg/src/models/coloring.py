"""Coloring data models."""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Coloring(BaseModel):
    """Vertex to color assignment; colors are ``0..color_count-1``.

    Properness is a property checked against a graph
    (:func:`src.services.coloring_solver.verify_coloring`), not an invariant.
    """

    model_config = ConfigDict(frozen=True)

    assignment: Tuple[int, ...]
    color_count: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_range(self) -> "Coloring":
        for v, c in enumerate(self.assignment):
            if not 0 <= c < self.color_count:
                raise ValueError(
                    f"vertex {v} has color {c} outside 0..{self.color_count - 1}"
                )
        return self

    def color_classes(self) -> Tuple[Tuple[int, ...], ...]:
        classes = [[] for _ in range(self.color_count)]
        for v, c in enumerate(self.assignment):
            classes[c].append(v)
        return tuple(tuple(cls) for cls in classes)


class ChromaticResult(BaseModel):
    """Bounds on a chromatic number together with a witness for the upper one."""

    model_config = ConfigDict(frozen=True)

    lower: int = Field(ge=0)
    upper: int = Field(ge=0)
    exact: bool
    witness: Coloring
    search_nodes: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_bounds(self) -> "ChromaticResult":
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact result must have equal bounds")
        if self.witness.color_count != self.upper:
            raise ValueError("witness must use exactly `upper` colors")
        return self

    @property
    def value(self) -> int:
        """The chromatic number; only meaningful when ``exact``."""
        return self.upper
