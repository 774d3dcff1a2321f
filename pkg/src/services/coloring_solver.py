"""Exact and heuristic chromatic number computation."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set

from src.config import get_settings
from src.models.coloring import ChromaticResult, Coloring
from src.models.graph import Graph
from src.services.graph_ops import induced_subgraph

logger = logging.getLogger(__name__)


class ColoringError(Exception):
    """Malformed coloring input."""

    pass


class _BudgetExhausted(Exception):
    pass


def greedy_coloring(g: Graph, order: Sequence[int]) -> Coloring:
    """
    Greedy coloring along ``order``.

    Each vertex receives the least color absent among its earlier-colored
    neighbors.

    Raises:
        ColoringError: If ``order`` is not a permutation of the vertices
    """
    if sorted(order) != list(range(g.n)):
        raise ColoringError(f"order is not a permutation of 0..{g.n - 1}")
    colors = [-1] * g.n
    for v in order:
        used = {colors[u] for u in g.adjacency[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(assignment=tuple(colors), color_count=max(colors, default=-1) + 1)


def dsatur_coloring(g: Graph) -> Coloring:
    """DSATUR heuristic: repeatedly color the most saturated vertex (ties: degree, index)."""
    colors = [-1] * g.n
    neighbor_colors: List[Set[int]] = [set() for _ in range(g.n)]
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(neighbor_colors[u]), g.degree(u), -u))
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        colors[v] = c
        uncolored.remove(v)
        for u in g.adjacency[v]:
            if u in uncolored:
                neighbor_colors[u].add(c)
    return Coloring(assignment=tuple(colors), color_count=max(colors, default=-1) + 1)


def clique_lower_bound(g: Graph) -> int:
    """Size of a greedily grown clique; 2 for any triangle-free graph with an edge."""
    if g.n == 0:
        return 0
    best = 1
    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for start in by_degree:
        if g.degree(start) < best:
            break
        clique = [start]
        candidates = set(g.adjacency[start])
        while candidates:
            nxt = max(candidates, key=lambda v: (len(g.neighbor_sets[v] & candidates), -v))
            clique.append(nxt)
            candidates &= g.neighbor_sets[nxt]
        best = max(best, len(clique))
    return best


def verify_coloring(g: Graph, c: Coloring) -> bool:
    """
    True iff no edge is monochromatic.

    Raises:
        ColoringError: If the assignment does not cover exactly the vertices
    """
    if len(c.assignment) != g.n:
        raise ColoringError(
            f"assignment covers {len(c.assignment)} vertices, graph has {g.n}"
        )
    return all(c.assignment[u] != c.assignment[v] for u, v in g.edges())


@dataclass
class _Frame:
    """One vertex on the search stack and the colors left to try for it."""

    vertex: int
    used: int
    limit: int
    next_color: int = 0
    changed: Optional[List[int]] = None


class _DsaturBranchAndBound:
    """Backtracking over vertices in saturation-degree order.

    A vertex may take any color already in use that none of its neighbors
    carries, or one new color, as long as the total stays below the best
    coloring found so far.  The search keeps its own stack, so depth is
    bounded by memory rather than the interpreter recursion limit.
    """

    def __init__(self, g: Graph, initial: Coloring, lower: int, node_budget: int):
        self.g = g
        self.lower = lower
        self.node_budget = node_budget
        self.best = initial.color_count
        self.best_assignment = list(initial.assignment)
        self.colors = [-1] * g.n
        self.neighbor_colors: List[Set[int]] = [set() for _ in range(g.n)]
        self.nodes = 0

    def run(self) -> bool:
        """Search; True when the search space was exhausted (result is exact)."""
        if self.best <= self.lower:
            return True
        try:
            self._search()
        except _BudgetExhausted:
            return False
        return True

    def _select(self) -> Optional[int]:
        best_vertex = None
        best_key = None
        for v in range(self.g.n):
            if self.colors[v] >= 0:
                continue
            key = (len(self.neighbor_colors[v]), self.g.degree(v))
            if best_key is None or key > best_key:
                best_vertex, best_key = v, key
        return best_vertex

    def _visit(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExhausted()

    def _push(self, stack: List[_Frame], used: int) -> None:
        stack.append(_Frame(self._select(), used, min(used + 1, self.best - 1)))

    def _undo(self, frame: _Frame) -> None:
        c = self.colors[frame.vertex]
        self.colors[frame.vertex] = -1
        for u in frame.changed:
            self.neighbor_colors[u].discard(c)
        frame.changed = None

    def _search(self) -> None:
        n = self.g.n
        colored = 0
        stack: List[_Frame] = []
        self._visit()
        self._push(stack, 0)

        while stack:
            frame = stack[-1]
            if frame.changed is not None:
                self._undo(frame)
                colored -= 1
                if self.best <= self.lower:
                    stack.pop()
                    continue

            v = frame.vertex
            taken = self.neighbor_colors[v]
            c = frame.next_color
            while c < frame.limit and c in taken:
                c += 1
            if c >= frame.limit:
                stack.pop()
                continue
            frame.next_color = c + 1

            self.colors[v] = c
            frame.changed = []
            for u in self.g.adjacency[v]:
                if self.colors[u] < 0 and c not in self.neighbor_colors[u]:
                    self.neighbor_colors[u].add(c)
                    frame.changed.append(u)
            colored += 1

            self._visit()
            used = max(frame.used, c + 1)
            if colored == n:
                if used < self.best:
                    self.best = used
                    self.best_assignment = list(self.colors)
                    logger.debug(f"improved coloring: {used} colors after {self.nodes} nodes")
                continue
            self._push(stack, used)


def chromatic_number(g: Graph, node_budget: Optional[int] = None) -> ChromaticResult:
    """
    Chromatic number by DSATUR branch and bound.

    The DSATUR heuristic seeds the upper bound and a greedy clique gives the
    lower bound.  Running out of ``node_budget`` is not an error: the result
    then carries valid bounds with ``exact=False``.

    Args:
        g: Graph to color
        node_budget: Search node limit (defaults to ``coloring_node_budget``)

    Returns:
        Bounds, exactness flag, a proper witness using ``upper`` colors and
        the number of search nodes visited
    """
    if node_budget is None:
        node_budget = get_settings().coloring_node_budget

    if g.n == 0:
        return ChromaticResult(
            lower=0,
            upper=0,
            exact=True,
            witness=Coloring(assignment=(), color_count=0),
            search_nodes=0,
        )

    initial = dsatur_coloring(g)
    lower = clique_lower_bound(g)
    search = _DsaturBranchAndBound(g, initial, lower, node_budget)
    exact = search.run()

    upper = search.best
    witness = Coloring(assignment=tuple(search.best_assignment), color_count=upper)
    if exact:
        lower = upper
    else:
        logger.warning(
            f"coloring budget of {node_budget} nodes exhausted: "
            f"{lower} <= chi <= {upper} (n={g.n})"
        )
    return ChromaticResult(
        lower=lower,
        upper=upper,
        exact=exact,
        witness=witness,
        search_nodes=search.nodes,
    )


def chromatic_of_subset(
    g: Graph, s: Sequence[int], node_budget: Optional[int] = None
) -> ChromaticResult:
    """
    Chromatic number of the subgraph induced on ``s``.

    The witness is indexed by position in ``s``.
    """
    return chromatic_number(induced_subgraph(g, list(s)), node_budget)
